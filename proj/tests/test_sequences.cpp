#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dioph/error.hpp"
#include "dioph/exponents.hpp"
#include "dioph/lattice.hpp"
#include "dioph/sequences.hpp"

using namespace dioph;

namespace {

std::shared_ptr<Zeta> golden() {
    static auto z = [] {
        ContinuedFraction cf;
        cf.quotients.emplace_back(0);
        for (int i = 0; i < 400; ++i) cf.quotients.emplace_back(1);
        return std::make_shared<Zeta>(cf, "golden", 256);
    }();
    return z;
}

std::shared_ptr<Zeta> fib12() {
    static auto z = zeta_from_spec("fib:1,2", 1024);
    return z;
}

const QuadraticSequence& fib_quads() {
    static QuadraticSequence seq = extract_quadratic_sequence(*fib12(), 16.0, 1024);
    return seq;
}

} // namespace

TEST_CASE("best approximation polynomials of the golden ratio") {
    auto seq = best_approx_polys(*golden(), 100, 192);
    REQUIRE(seq.entries.size() >= 10);
    // heights are the convergent denominators: Fibonacci numbers
    std::vector<long> fib = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
    for (size_t i = 1; i < std::min(seq.entries.size(), fib.size()); ++i)
        CHECK(seq.entries[i].height == fib[i]);
    double prev = 1e9;
    for (auto& e : seq.entries) {
        CHECK(e.log_err < prev);
        prev = e.log_err;
        // H(E_l) |E_l(gamma)| stays bounded (classical)
        CHECK(e.log_height + e.log_err <= 0.1);
        CHECK(e.log_height + e.log_err >= -2.0);
    }
}

TEST_CASE("best approximation heights of the extremal number have ratio -> 1") {
    auto seq = best_approx_polys(*fib12(), mpz_class("100000000000"), 1024);
    REQUIRE(seq.entries.size() >= 12);
    for (size_t l = 10; l + 1 < seq.entries.size(); ++l) {
        double r = seq.entries[l + 1].log_height / seq.entries[l].log_height;
        CHECK(r >= 0.8);
        CHECK(r <= 1.25);
    }
}

TEST_CASE("golden ratio is not extremal: no quadratic sequence") {
    CHECK_THROWS_AS(extract_quadratic_sequence(*golden(), 7.0, 256), Error);
}

TEST_CASE("extremal number yields the quadratic sequence") {
    const auto& seq = fib_quads();
    REQUIRE(seq.size() >= 5);
    for (size_t k = 0; k < seq.size(); ++k) {
        const auto& e = seq.entries[k];
        CHECK(e.poly.degree() == 2);
        CHECK(irreducible_low_degree(e.poly));
        if (k > 0) CHECK(e.height > seq.entries[k - 1].height);
        // detection filter: exponent at least rho - 0.5
        CHECK(e.exponent >= consts::rho() - 0.5);
    }
    // height ratios approach nu
    size_t m = seq.size();
    for (size_t k = m - 3; k + 1 < m; ++k) {
        double r = seq.entries[k + 1].log_height / seq.entries[k].log_height;
        CHECK(r == doctest::Approx(consts::nu()).epsilon(0.12));
    }
    // derivative comparability: |P'(zeta)| / H bounded through the sequence
    for (const auto& e : seq.entries) {
        double ratio = e.log_deriv - e.log_height;
        CHECK(ratio >= std::log(1e-3));
        CHECK(ratio <= std::log(1e3));
    }
}

TEST_CASE("deep sequence realizes w_2 = rho within 0.1") {
    // the finite-scale bias decays like (log c)/log H, so the +-0.1 window
    // needs heights beyond e^15 throughout the last five generations
    auto z = zeta_from_spec("fib:1,2", 2048);
    auto seq = extract_quadratic_sequence(*z, 150.0, 2048);
    size_t m = seq.size();
    REQUIRE(m >= 8);
    double best = 0;
    for (size_t k = m - 5; k < m; ++k) best = std::max(best, seq.entries[k].exponent);
    CHECK(best >= consts::rho() - 0.1);
    CHECK(best <= consts::rho() + 0.1);
    for (size_t k = m - 4; k < m; ++k) {
        double r = seq.entries[k].log_height / seq.entries[k - 1].log_height;
        CHECK(r == doctest::Approx(consts::nu()).epsilon(0.03));
    }
    // growth and depth residuals stay bounded with no trend
    std::vector<double> ks, bh, bv;
    for (size_t k = 0; k < m; ++k) {
        if (k + 1 < m)
            bh.push_back(seq.entries[k + 1].log_height -
                         consts::nu() * seq.entries[k].log_height);
        bv.push_back(seq.entries[k].log_err + consts::rho() * seq.entries[k].log_height);
        ks.push_back(static_cast<double>(k));
    }
    for (double b : bh) CHECK(std::abs(b) <= 1.5);
    for (double b : bv) CHECK(std::abs(b) <= 2.0);
    std::vector<double> kh(ks.begin(), ks.begin() + bh.size());
    CHECK(std::abs(least_squares_slope(kh, bh)) <= 0.05);
    CHECK(std::abs(least_squares_slope(ks, bv)) <= 0.05);
}

TEST_CASE("lattice ladder agrees with brute detection at small heights") {
    // all brute detections below height 1000 must appear in the sequence
    auto z = fib12();
    const auto& seq = fib_quads();
    const auto& pows = z->power_enclosures(2, 256);
    double z1 = pows[0].mid(), z2 = pows[1].mid();
    double thresh = -(consts::rho() - 0.5);
    int brute_clusters = 0;
    double last_lh = -10;
    for (long a2 = 1; a2 <= 1000; ++a2)
        for (long a1 = -1000; a1 <= 1000; ++a1) {
            double s = a2 * z2 + a1 * z1;
            long a0 = std::lround(-s);
            if (std::labs(a0) > 1000) continue;
            long h = std::max({a2, std::labs(a1), std::labs(a0)});
            if (h < 2) continue;
            double val = std::abs(s + a0);
            double lh = std::log((double)h);
            if (std::log(std::max(val, 1e-300)) > thresh * lh) continue;
            IntPolynomial p(std::vector<mpz_class>{a0, a1, a2});
            if (!irreducible_low_degree(p)) continue;
            if (lh > last_lh + std::log(1.3)) {
                ++brute_clusters;
                last_lh = lh;
            }
        }
    int in_seq = 0;
    for (const auto& e : seq.entries)
        if (e.height <= 1000) ++in_seq;
    CHECK(in_seq >= brute_clusters - 1);
    CHECK(in_seq <= brute_clusters + 1);
}

TEST_CASE("structured families for n=4 have exact rank 4 per generation") {
    const auto& seq = fib_quads();
    auto z = fib12();
    const IntPolynomial t = IntPolynomial::monomial(1);
    const IntPolynomial t2 = IntPolynomial::monomial(2);
    for (size_t k = 2; k < seq.size(); ++k) {
        ZMat rows;
        auto pad = [&](const IntPolynomial& p) {
            ZVec v(p.coeffs());
            v.resize(5, mpz_class(0));
            rows.push_back(v);
        };
        pad(seq.entries[k].poly);
        pad(poly_mul(seq.entries[k].poly, t, 4).product);
        pad(poly_mul(seq.entries[k].poly, t2, 4).product);
        auto tk = poly_mul(seq.entries[k - 1].poly, seq.entries[k - 2].poly, 4);
        pad(tk.product);
        CHECK(rank_of(rows) == 4);
        // H(T_k) comparable with H(P_k) via nu^-1 + nu^-2 = 1
        double lt = tk.product.log_height();
        double lp = seq.entries[k].log_height;
        CHECK(std::abs(lt - lp) <= 0.30 * lp + 2.5);
    }
}

TEST_CASE("structured families for n=3: four independent polynomials at X = H(P_{k+1})") {
    const auto& seq = fib_quads();
    auto z = fib12();
    auto best = best_approx_polys(*z, mpz_class("10000000"), 1024);
    const IntPolynomial t = IntPolynomial::monomial(1);
    for (size_t k = 2; k + 1 < seq.size(); ++k) {
        mpz_class x = seq.entries[k + 1].height;
        // largest l with H(E_{l+1}) H(P_k) <= X
        size_t l = 0;
        bool ok = false;
        for (size_t i = 0; i + 1 < best.entries.size(); ++i)
            if (best.entries[i + 1].height * seq.entries[k].height <= x) {
                l = i;
                ok = true;
            }
        if (!ok) continue;
        auto u = poly_mul(seq.entries[k].poly, best.entries[l].poly, 3).product;
        auto v = poly_mul(seq.entries[k].poly, best.entries[l + 1].poly, 3).product;
        ZMat rows;
        auto pad = [&](const IntPolynomial& p) {
            ZVec w(p.coeffs());
            w.resize(4, mpz_class(0));
            rows.push_back(w);
        };
        pad(seq.entries[k + 1].poly);
        pad(poly_mul(seq.entries[k + 1].poly, t, 3).product);
        pad(u);
        pad(v);
        CHECK(rank_of(rows) == 4);
        // |Q_{k,i}(zeta)| <= X^(-3+eps) via rho gamma + 1 - gamma = 3
        double lx = BigFloat::of_mpz(x, 96, MPFR_RNDN).log_d(MPFR_RNDN);
        CHECK(log_abs_eval(u, *z, 1024) <= (-3.0 + 0.45) * lx);
        CHECK(log_abs_eval(v, *z, 1024) <= (-3.0 + 0.45) * lx);
    }
}

TEST_CASE("structured family respects the height cap and the n guard") {
    const auto& seq = fib_quads();
    auto z = fib12();
    auto best = best_approx_polys(*z, 100000, 1024);
    auto fam = structured_family(seq, best, 3, 9.0);
    CHECK(fam.size() > 10);
    for (const auto& p : fam) {
        CHECK(p.degree() <= 3);
        CHECK(p.log_height() <= 9.0 + 1e-9);
    }
    CHECK_THROWS_AS(structured_family(seq, best, 5, 9.0), Error);
}

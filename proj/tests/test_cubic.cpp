#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dioph/cubic.hpp"
#include "dioph/error.hpp"
#include "dioph/exponents.hpp"

using namespace dioph;

namespace {

std::shared_ptr<Zeta> fib12() {
    static auto z = zeta_from_spec("fib:1,2", 1024);
    return z;
}

const QuadraticSequence& quads() {
    static QuadraticSequence seq = extract_quadratic_sequence(*fib12(), 15.0, 1024);
    return seq;
}

const BestApproxSequence& best() {
    static BestApproxSequence seq = best_approx_polys(*fib12(), mpz_class("10000000"), 1024);
    return seq;
}

} // namespace

TEST_CASE("cubic witnesses: construction invariants") {
    auto ws = cubic_experiment(*fib12(), quads(), best(), 4, 1024);
    REQUIRE(ws.size() >= 3);
    for (const auto& w : ws) {
        CHECK(w.s.degree() == 3);
        CHECK(irreducible_low_degree(w.s));
        CHECK(w.shift >= 1);
        CHECK(w.shift <= 2);
        CHECK(w.budget == quads().entries[w.k + 1].height);
        // the polynomial exponent climbs toward 3 as the budget grows;
        // small generations sit visibly below (about 3 - 2.5/log X)
        CHECK(w.exponent_poly >= 2.1);
        CHECK(w.exponent_poly <= 3.4);
        if (w.alpha) {
            // root bound |zeta - alpha| <= c |S(zeta)| / H(S)
            double rhs = w.log_err - w.log_height + std::log(64.0);
            CHECK(std::log(w.root_gap) <= rhs + 1e-9);
        }
    }
}

TEST_CASE("triangle identity holds exactly in interval arithmetic") {
    auto z = fib12();
    const auto& qs = quads();
    const auto& bs = best();
    size_t k = qs.size() >= 4 ? qs.size() - 3 : 1;
    mpz_class x = qs.entries[k + 1].height;
    size_t l = 0;
    for (size_t i = 0; i + 1 < bs.entries.size(); ++i)
        if (bs.entries[i + 1].height * qs.entries[k].height <= x) l = i;
    auto q_poly = poly_mul(qs.entries[k].poly, bs.entries[l].poly, 3).product;
    auto tp = poly_mul(qs.entries[k + 1].poly, IntPolynomial::monomial(1), 3).product;
    auto s = q_poly + tp;
    mpfr_prec_t bits = 1024;
    Interval sv = s.eval(z->enclosure(bits), bits);
    Interval qv = q_poly.eval(z->enclosure(bits), bits);
    Interval tv = tp.eval(z->enclosure(bits), bits);
    Interval sum = iv_add(qv, tv, bits);
    // both enclose the same exact value S(zeta) = Q(zeta) + (T P)(zeta)
    CHECK(cmp(sv.lo(), sum.hi()) <= 0);
    CHECK(cmp(sum.lo(), sv.hi()) <= 0);
    // |S(z)| <= |Q(z)| + |T P(z)| with outward rounding
    auto [slo, shi] = iv_abs(sv).log_abs_bounds();
    auto [qlo, qhi] = iv_abs(qv).log_abs_bounds();
    auto [tlo, thi] = iv_abs(tv).log_abs_bounds();
    CHECK(std::exp(shi) <= std::exp(qhi) + std::exp(thi) + 1e-30);
}

TEST_CASE("derivative guard: at least one shift passes") {
    auto ws = cubic_experiment(*fib12(), quads(), best(), 4, 1024);
    for (const auto& w : ws) CHECK(w.derivative_guard_ok);
}

TEST_CASE("reducible combinations are flagged, short sequences rejected") {
    auto z = fib12();
    CHECK_THROWS_AS(cubic_experiment(*z, quads(), best(), 100, 512), Error);
    // fabricated sequence where both shifts collapse to (1+j) T^3
    QuadraticSequence fake;
    for (int k = 0; k < 4; ++k) {
        QuadraticEntry e;
        e.poly = IntPolynomial::monomial(2);
        e.height = 1;
        e.log_height = 0.0;
        e.log_err = -1.0;
        e.log_deriv = 0.0;
        e.exponent = 1.0;
        fake.entries.push_back(e);
    }
    BestApproxSequence fb;
    for (int l = 0; l < 2; ++l) {
        BestApproxEntry e;
        e.poly = IntPolynomial(std::vector<mpz_class>{-l, 1});
        e.height = 1;
        e.log_height = 0.0;
        e.log_err = -0.5 * (l + 1);
        fb.entries.push_back(e);
    }
    CHECK_THROWS_WITH_AS(cubic_experiment(*z, fake, fb, 1, 512).size(),
                         doctest::Contains("reducible"), Error);
}

TEST_CASE("nonexistence scan: monotone and stable at small heights") {
    auto z = fib12();
    auto l10 = cubic_nonexistence_scan(*z, 10, 0.5, 512);
    auto l20 = cubic_nonexistence_scan(*z, 20, 0.5, 512);
    auto l40 = cubic_nonexistence_scan(*z, 40, 0.5, 512);
    // monotone: every member at h<=10 appears in the larger scans
    auto contains = [](const std::vector<IntPolynomial>& big, const IntPolynomial& p) {
        for (const auto& q : big)
            if (q == p) return true;
        return false;
    };
    for (const auto& p : l10) CHECK(contains(l20, p));
    for (const auto& p : l20) CHECK(contains(l40, p));
    for (const auto& p : l40) {
        CHECK(p.degree() == 3);
        CHECK(irreducible_low_degree(p));
        CHECK(p.height() <= 40);
    }
}

TEST_CASE("uniform scan shows the window/gap alternation") {
    auto z = fib12();
    // at desk scale the gaps between generation windows open up once the
    // exponent margin outweighs the finite-scale constants
    auto rows = cubic_uniform_scan(*z, {10, 25, 30, 40, 60, 90}, 1.2, 512);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].solutions > 0);   // X = 10: inside a generation window
    CHECK(rows[1].solutions == 0);  // X = 25: gap
    CHECK(rows[2].solutions == 0);  // X = 30: gap
    CHECK(rows[3].solutions > 0);   // X = 40: next window
    CHECK(rows[4].solutions == 0);  // X = 60: gap
    CHECK(rows[5].solutions == 0);  // X = 90: gap
    // a looser margin can only add solutions
    auto loose = cubic_uniform_scan(*z, {10, 25, 30, 40, 60, 90}, 0.5, 512);
    for (size_t i = 0; i < rows.size(); ++i) CHECK(loose[i].solutions >= rows[i].solutions);
}

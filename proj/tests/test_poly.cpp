#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dioph/error.hpp"
#include "dioph/exponents.hpp"
#include "dioph/poly.hpp"

using namespace dioph;

namespace {

IntPolynomial make(std::vector<long> asc) {
    std::vector<mpz_class> c(asc.begin(), asc.end());
    return IntPolynomial(std::move(c));
}

} // namespace

TEST_CASE("height and degree") {
    auto p = make({-1, -1, 1});  // T^2 - T - 1
    CHECK(p.degree() == 2);
    CHECK(p.height() == 1);
    CHECK(make({3, 0, -7, 2}).height() == 7);
    CHECK(IntPolynomial().is_zero());
}

TEST_CASE("evaluation is exact on rationals") {
    auto p = make({1, 2});  // 2T + 1
    Interval half = Interval::of_mpq(mpq_class(1, 2), 64);
    Interval r = p.eval(half, 64);
    CHECK(r.lo() == r.hi());
    CHECK(r.mid() == 2.0);
    CHECK(p.eval_exact(mpq_class(1, 2)) == 2);
}

TEST_CASE("identity polynomial returns zeta") {
    auto z = zeta_from_spec("fib:1,2,300", 256);
    auto t = IntPolynomial::monomial(1);
    Interval r = t.eval(z->enclosure(256), 320);
    CHECK(r.contains(z->enclosure(256)));
    CHECK(r.width() <= 2.0 * z->enclosure(256).width() + 1e-300);
}

TEST_CASE("minimal polynomial of nu straddles zero at a nu-enclosure") {
    // nu = (1+sqrt5)/2 solves T^2 - T - 1 = 0
    Interval s5 = consts::sqrt5_interval(128);
    Interval nu = iv_mul(iv_add_z(s5, 1, 128), Interval::of_mpq(mpq_class(1, 2), 128), 128);
    auto p = make({-1, -1, 1});
    Interval r = p.eval(nu, 128);
    CHECK(r.sign() == 0);
}

TEST_CASE("product and Gelfond ratio") {
    auto t = IntPolynomial::monomial(1);
    auto r1 = poly_mul(t, t, 4);
    CHECK(r1.product.degree() == 2);
    CHECK(r1.gelfond_ratio == 1);
    auto p = make({1, 1});
    auto r2 = poly_mul(p, p, 4);
    CHECK(r2.product.coeffs() == std::vector<mpz_class>{1, 2, 1});
    CHECK(r2.gelfond_ratio == 2);
    CHECK_THROWS_AS(poly_mul(make({1, 1, 1, 1}), make({1, 1}), 3), Error);
}

TEST_CASE("gelfond window on random products") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> coef(-50, 50);
    std::uniform_int_distribution<int> deg(0, 3);
    for (int t = 0; t < 500; ++t) {
        std::vector<mpz_class> pc(deg(rng) + 1), qc(deg(rng) + 1);
        for (auto& c : pc) c = coef(rng);
        for (auto& c : qc) c = coef(rng);
        if (pc.back() == 0) pc.back() = 1;
        if (qc.back() == 0) qc.back() = 3;
        IntPolynomial p(pc), q(qc);
        auto mr = poly_mul(p, q, 8);
        int d = p.degree() + q.degree();
        mpq_class lo(1);
        lo /= (mpz_class(1) << d);
        CHECK(mr.gelfond_ratio >= lo);
        CHECK(mr.gelfond_ratio <= mpq_class(d + 1));
        CHECK(mr.delta_log == doctest::Approx(std::log(mr.gelfond_ratio.get_d())).epsilon(1e-9));
    }
}

TEST_CASE("multiplicativity of |P(zeta)| under products") {
    auto z = zeta_from_spec("fib:1,2,400", 512);
    auto p = make({-3, 1, 5});
    auto q = make({2, -7});
    auto pq = poly_mul(p, q, 3).product;
    double sum = log_abs_eval(p, *z, 512) + log_abs_eval(q, *z, 512);
    CHECK(log_abs_eval(pq, *z, 512) == doctest::Approx(sum).epsilon(1e-9));
}

TEST_CASE("irreducibility at low degree") {
    CHECK(irreducible_low_degree(make({-1, -1, 1})));       // T^2-T-1
    CHECK_FALSE(irreducible_low_degree(make({0, -1, 0, 1})));  // T^3-T
    CHECK_FALSE(irreducible_low_degree(make({0, 2, 0, 2})));   // 2T^3+2T
    CHECK(irreducible_low_degree(make({1, 0, 0, 2})));      // 2T^3+1
    CHECK_FALSE(irreducible_low_degree(make({1, 2, 1})));   // (T+1)^2
    CHECK_FALSE(irreducible_low_degree(make({-6, 11, -6, 1})));  // (T-1)(T-2)(T-3)
    CHECK(irreducible_low_degree(make({5, 0, 1})));         // T^2+5
    CHECK(irreducible_low_degree(make({7, 3})));            // primitive linear
    CHECK_THROWS_AS(irreducible_low_degree(make({4})), Error);
    CHECK_THROWS_AS(irreducible_low_degree(make({1, 0, 0, 0, 1})), Error);
    // rational (non-integer) root: (2T-1)(T^2+1)
    CHECK_FALSE(irreducible_low_degree(make({-1, 2, -1, 2})));
}

TEST_CASE("irreducibility agrees with exhaustive factor search at small heights") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<long> coef(-20, 20);
    auto exhaustive_reducible = [](const IntPolynomial& p) {
        IntPolynomial prim = p.primitive_part();
        int d = prim.degree();
        long bound = (d + 1) * prim.height().get_si();
        // a reducible cubic/quadratic has a linear factor aT + b
        for (long a = 1; a <= bound; ++a)
            for (long b = -bound; b <= bound; ++b) {
                if (std::gcd(a, std::labs(b)) != 1) continue;
                // test divisibility via the rational root -b/a
                if (prim.eval_exact(mpq_class(-b, a)) == 0) return true;
            }
        return false;
    };
    int tested = 0;
    for (int t = 0; t < 400 && tested < 120; ++t) {
        int d = 2 + (t % 2);
        std::vector<mpz_class> c(d + 1);
        for (auto& x : c) x = coef(rng);
        if (c.back() == 0) continue;
        IntPolynomial p(c);
        if (p.height() > 20 || p.degree() < 2) continue;
        ++tested;
        CHECK(irreducible_low_degree(p) == !exhaustive_reducible(p));
    }
    CHECK(tested >= 100);
}

TEST_CASE("root near a known quadratic root") {
    auto p = make({-1, -1, 1});
    Interval center = Interval::of_mpq(mpq_class(16, 10), 96);
    auto root = root_near(p, center, 0.5, 128);
    REQUIRE(root.has_value());
    CHECK(root->width() <= std::ldexp(1.0, -120));
    CHECK(root->mid() == doctest::Approx(1.61803398874989).epsilon(1e-10));
    // the returned enclosure certifies the root by a sign change
    Interval lo_v = p.eval(Interval(root->lo(), root->lo()), 192);
    Interval hi_v = p.eval(Interval(root->hi(), root->hi()), 192);
    CHECK(lo_v.sign() * hi_v.sign() <= 0);
}

TEST_CASE("no real root reported for T^2 + 1") {
    auto p = make({1, 0, 1});
    auto root = root_near(p, Interval::exact_long(0, 64), 3.0, 64);
    CHECK_FALSE(root.has_value());
}

TEST_CASE("root_near finds rational and repeated roots") {
    auto p = make({0, -1, 0, 1});  // T(T-1)(T+1)
    auto root = root_near(p, Interval::of_mpq(mpq_class(9, 10), 64), 0.3, 96);
    REQUIRE(root.has_value());
    CHECK(root->mid() == doctest::Approx(1.0).epsilon(1e-12));
    auto dbl = make({1, -2, 1});  // (T-1)^2
    auto r2 = root_near(dbl, Interval::exact_long(1, 64), 0.5, 96);
    REQUIRE(r2.has_value());
    CHECK(r2->mid() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("precision escalation rejects the zero polynomial and flags straddles") {
    auto z = zeta_from_spec("fib:1,2,300", 256);
    CHECK_THROWS_AS(poly_eval_certain(IntPolynomial(), *z, 256), Error);
    auto p = make({-1, -1, 1});
    // nonzero at transcendental zeta: must certify a sign
    CHECK_NOTHROW(poly_eval_certain(p, *z, 256));
}

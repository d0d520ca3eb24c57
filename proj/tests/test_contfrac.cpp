#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "dioph/contfrac.hpp"
#include "dioph/error.hpp"

using namespace dioph;

TEST_CASE("fibonacci word over {1,2}") {
    // substitution a->ab, b->a from "a": a b a a b a b ...
    auto cf = fibonacci_word({1, 2, 7});
    std::vector<long> expect = {0, 1, 2, 1, 1, 2, 1, 2};
    REQUIRE(cf.quotients.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) CHECK(cf.quotients[i] == expect[i]);
}

TEST_CASE("fibonacci word over {2,3}") {
    auto cf = fibonacci_word({2, 3, 3});
    std::vector<long> expect = {0, 2, 3, 2};
    REQUIRE(cf.quotients.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) CHECK(cf.quotients[i] == expect[i]);
}

TEST_CASE("invalid extremal specs") {
    CHECK_THROWS_AS(fibonacci_word({1, 1, 10}), Error);
    CHECK_THROWS_AS(fibonacci_word({1, 2, 1}), Error);
    CHECK_THROWS_AS(fibonacci_word({0, 2, 10}), Error);
}

TEST_CASE("all-ones continued fraction evaluates to the golden ratio conjugate") {
    ContinuedFraction cf;
    cf.quotients.emplace_back(0);
    for (int i = 0; i < 30; ++i) cf.quotients.emplace_back(1);
    Interval v = cf_eval(cf, 32);
    CHECK(v.width() <= std::ldexp(1.0, -32));
    CHECK(v.mid() == doctest::Approx(0.61803398874989).epsilon(1e-8));
}

TEST_CASE("finite continued fraction folds exactly") {
    ContinuedFraction cf;
    for (long q : {0L, 1L, 2L, 1L, 1L, 2L}) cf.quotients.emplace_back(q);
    mpq_class v = cf_exact_value(cf);
    CHECK(v == mpq_class(13, 18));
}

TEST_CASE("enclosure soundness: every longer prefix stays inside") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> quot(1, 4);
    for (int t = 0; t < 20; ++t) {
        ContinuedFraction cf;
        cf.quotients.emplace_back(0);
        for (int i = 0; i < 80; ++i) cf.quotients.emplace_back(quot(rng));
        size_t prefix_len = 30;
        ContinuedFraction prefix;
        prefix.quotients.assign(cf.quotients.begin(), cf.quotients.begin() + prefix_len);
        Interval enc = cf_eval(prefix, 24);
        for (size_t len = prefix_len; len <= cf.quotients.size(); len += 7) {
            ContinuedFraction longer;
            longer.quotients.assign(cf.quotients.begin(), cf.quotients.begin() + len);
            CHECK(enc.contains(cf_exact_value(longer)));
        }
    }
}

TEST_CASE("monotone refinement: more bits never widen") {
    auto cf = fibonacci_word({1, 2, 400});
    double prev = cf_eval(cf, 64).width();
    for (int bits = 128; bits <= 512; bits *= 2) {
        double w = cf_eval(cf, bits).width();
        CHECK(w <= prev);
        prev = w;
    }
}

TEST_CASE("deep fibonacci word meets a 1024-bit budget and matches exact folding") {
    auto cf = fibonacci_word({1, 2, 1400});
    Interval v = cf_eval(cf, 1024);
    CHECK(v.width() <= std::ldexp(1.0, -1024));
    CHECK(v.contains(cf_exact_value(cf)));
}

TEST_CASE("insufficient depth reported") {
    auto cf = fibonacci_word({1, 2, 40});
    CHECK_THROWS_WITH_AS(cf_eval(cf, 2048).width(),
                         doctest::Contains("too short"), Error);
}

TEST_CASE("zeta spec parsing") {
    auto z = zeta_from_spec("fib:1,2,300", 128);
    CHECK(z->spec() == "fib:1,2,300");
    CHECK(z->to_double() > 0.7);
    CHECK(z->to_double() < 0.8);
    CHECK_THROWS_AS(zeta_from_spec("nope:1", 128), Error);
    CHECK_THROWS_AS(zeta_from_spec("fib:1", 128), Error);
}

TEST_CASE("cf-file zeta spec parses one quotient per line") {
    auto path = std::filesystem::temp_directory_path() / "dioph_cf_test.txt";
    {
        std::ofstream out(path);
        out << "0\n1\n2\n1\n1\n2\n";
    }
    auto z = zeta_from_spec("cf-file:" + path.string(), 64);
    CHECK(z->cf().size() == 6);
    CHECK(cf_exact_value(z->cf()) == mpq_class(13, 18));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(zeta_from_spec("cf-file:/nonexistent/cf.txt", 64), Error);
}

TEST_CASE("default fib length covers the requested precision") {
    auto z = zeta_from_spec("fib:1,2", 2048);
    const Interval& iv = z->enclosure(2048);
    BigFloat w = BigFloat::sub(iv.hi(), iv.lo(), 64, MPFR_RNDU);
    BigFloat budget = BigFloat::of_long(1, 64);
    mpfr_mul_2si(budget.raw(), budget.raw(), -2048, MPFR_RNDN);
    CHECK(cmp(w, budget) <= 0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dioph/acceptance.hpp"
#include "dioph/candidates.hpp"
#include "dioph/error.hpp"
#include "dioph/profile.hpp"

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
    static auto z = zeta_from_spec("fib:1,2,600", 512);
    return z;
}

} // namespace

TEST_CASE("candidate_value formulas on the golden ratio") {
    auto z = golden();
    // (x, y) = (1, 1): |x| = 1, |gamma - 1| = gamma^2
    Candidate c;
    c.payload = {1, 1};
    c.log_height = 0.0;
    c.log_error = sim_log_error(c.payload, *z, 1, 192);
    CHECK(c.log_error == doctest::Approx(2.0 * std::log(0.61803398874989)).epsilon(1e-9));
    CHECK(candidate_value(c, 0.0001, Side::simultaneous, 1) ==
          doctest::Approx(-0.0001).epsilon(1e-6));
    CHECK(candidate_value(c, 0.4, Side::simultaneous, 1) == doctest::Approx(-0.4));
    // dual formula switches the roles
    Candidate d;
    d.payload = {1, 1};
    d.log_height = 0.0;
    d.log_error = -1.0;
    CHECK(candidate_value(d, 0.6, Side::dual, 1) == doctest::Approx(std::max(-0.6, -0.4)));
}

TEST_CASE("brute simultaneous candidates contain the Fibonacci pair (5,3)") {
    auto z = golden();
    auto set = candidates_simultaneous_brute(*z, 1, 8, 1, 192);
    bool found = false;
    for (const auto& c : set->items) {
        if (c.payload[0] == 5 && c.payload[1] == 3) {
            found = true;
            // |5 gamma - 3| = gamma^5
            CHECK(c.log_error ==
                  doctest::Approx(5.0 * std::log(0.61803398874989)).epsilon(1e-9));
        }
    }
    CHECK(found);
}

TEST_CASE("brute candidates at x_max=1 include units and the nearest vector") {
    auto z = golden();
    auto set = candidates_simultaneous_brute(*z, 2, 1, 1, 192);
    bool unit = false, nearest = false;
    for (const auto& c : set->items) {
        if (c.payload[0] == 0) unit = true;
        if (c.payload[0] == 1 && c.payload[1] == 1 && c.payload[2] == 0) nearest = true;
    }
    CHECK(unit);
    CHECK(nearest);
}

TEST_CASE("dual brute enumerates primitive linear polynomials") {
    auto z = golden();
    auto set = candidates_dual_brute(*z, 1, 2, 192);
    // all primitive aT+b with max(|a|,|b|) <= 2, canonical sign, incl. constants
    for (const auto& c : set->items) {
        mpz_class h = std::max(abs(c.payload[0]), abs(c.payload[1]));
        CHECK(h <= 2);
    }
    bool found_21 = false;
    for (const auto& c : set->items)
        if (c.payload[1] == 2 && c.payload[0] == 1) found_21 = true;
    CHECK(found_21);
}

TEST_CASE("profile of the golden ratio: Fibonacci local minimum") {
    auto z = golden();
    auto set = candidates_simultaneous_brute(*z, 1, 100, 2, 192);
    auto grid = make_grid(0.1, 4.0, 0.01);
    auto prof = profile(set, grid);
    // L_{1,1} has a local minimum at q = (log F_5 - 5 log gamma)/2 with
    // value (log F_5 + 5 log gamma)/2, from |F_5 gamma - F_4| = gamma^5
    double lg = std::log(0.61803398874989);
    double q_star = 0.5 * (std::log(5.0) - 5.0 * lg);
    double v_star = 0.5 * (std::log(5.0) + 5.0 * lg);
    CHECK(q_star == doctest::Approx(2.00773).epsilon(1e-4));
    CHECK(v_star == doctest::Approx(-0.39831).epsilon(1e-4));
    size_t idx = 0;
    while (idx + 1 < grid.size() && grid[idx] < q_star) ++idx;
    auto refined = refine_extremum(prof, 1, idx, true);
    CHECK(refined.q == doctest::Approx(q_star).epsilon(1e-6));
    CHECK(refined.value == doctest::Approx(v_star).epsilon(1e-6));
    // psi interpolates the grid chord, so allow the vertex rounding error
    CHECK(psi(prof, 1, std::exp(refined.q)) == doctest::Approx(v_star / q_star).epsilon(0.02));
    CHECK(refined.value / refined.q == doctest::Approx(v_star / q_star).epsilon(1e-6));
}

TEST_CASE("profiles are ordered and negative at level one") {
    auto z = fib12();
    auto set = candidates_dual_brute(*z, 2, 20, 512);
    auto grid = make_grid(0.2, 5.0, 0.1);
    auto prof = profile(set, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(prof.values[0][i] < 0.0);
        for (int j = 1; j < 3; ++j) CHECK(prof.values[j][i] >= prof.values[j - 1][i] - 1e-12);
    }
    // piecewise slopes within the dual window [-1/n, 1]
    for (int j = 0; j < 3; ++j)
        for (size_t i = 1; i < grid.size(); ++i) {
            double slope = (prof.values[j][i] - prof.values[j][i - 1]) / (grid[i] - grid[i - 1]);
            CHECK(slope >= -0.5 - 1e-6);
            CHECK(slope <= 1.0 + 1e-6);
        }
}

TEST_CASE("witnesses at a grid point are linearly independent") {
    auto z = fib12();
    auto set = candidates_dual_brute(*z, 2, 15, 512);
    auto grid = make_grid(0.5, 4.0, 0.5);
    auto prof = profile(set, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        ZMat w;
        for (int j = 0; j < 3; ++j) w.push_back(set->items[prof.witness[j][i]].payload);
        CHECK(rank_of(w) == 3);
    }
}

TEST_CASE("insufficient candidates raise") {
    auto z = golden();
    auto set = candidates_dual_brute(*z, 1, 1, 192);
    // cripple the set: keep two proportional vectors only
    auto tiny = std::make_shared<CandidateSet>(*set);
    tiny->items.clear();
    Candidate a;
    a.payload = {1, 1};
    a.log_height = 0;
    a.log_error = -0.5;
    a.id = 0;
    tiny->items.push_back(a);
    auto grid = make_grid(0.5, 1.0, 0.5);
    CHECK_THROWS_AS(profile(tiny, grid), Error);
    CHECK_NOTHROW(profile(tiny, grid, /*allow_incomplete=*/true));
}

TEST_CASE("reduced backend matches brute minima on the golden dual lattice") {
    auto z = golden();
    // brute with H <= 30 is complete for q below ~log(30) - O(1)
    auto grid = make_grid(0.4, 2.8, 0.2);
    auto brute = profile(candidates_dual_brute(*z, 1, 30, 192), grid);
    auto reduced = profile(candidates_reduced(*z, 1, Side::dual, 2.8, 192, 0.2), grid);
    for (int j = 0; j < 2; ++j)
        for (size_t i = 0; i < grid.size(); ++i) {
            double d = reduced.values[j][i] - brute.values[j][i];
            CHECK(d >= -1e-9);
            CHECK(d <= 1.5);
        }
}

TEST_CASE("minkowski sum stays bounded on a brute profile") {
    auto z = golden();
    auto grid = make_grid(0.2, 8.0, 0.05);
    auto [prof, window] = simultaneous_brute_profile_auto(*z, 1, 4000, grid, 192);
    auto st = minkowski_stats(prof);
    CHECK(std::abs(st.trend_slope) <= 0.01);
    CHECK(st.max_abs_sum <= 3.0);
    CHECK(window >= 2);
}

TEST_CASE("dual brute at h_max=50 contains the first best quadratics") {
    auto z = fib12();
    auto set = candidates_dual_brute(*z, 2, 50, 512);
    // the quadratics with |P(zeta)| <= H^-(rho-0.5) and H <= 50
    int strong = 0;
    for (const auto& c : set->items) {
        if (c.payload[2] == 0) continue;
        if (c.log_error <= -3.736 * c.log_height && c.log_height > 0.5) ++strong;
    }
    CHECK(strong >= 2);  // heights 2, 3, 13 at least
}

TEST_CASE("candidates with |P(zeta)| = 0 are rejected") {
    // nu = [1; 1, 1, ...] is a root of T^2 - T - 1: the evaluation straddles
    // zero at every precision, which signals a non-transcendental input
    ContinuedFraction cf;
    cf.quotients.emplace_back(1);
    for (int i = 0; i < 500; ++i) cf.quotients.emplace_back(1);
    Zeta nu(cf, "nu", 256);
    std::vector<IntPolynomial> polys = {IntPolynomial(std::vector<mpz_class>{-1, -1, 1})};
    CHECK_THROWS_AS(candidate_set_from_polys(nu, 2, polys, "test", 256), Error);
}

TEST_CASE("psi accessor guards its domain") {
    auto z = golden();
    auto set = candidates_dual_brute(*z, 1, 10, 192);
    auto grid = make_grid(0.5, 3.0, 0.5);
    auto prof = profile(set, grid);
    CHECK_THROWS_AS(psi(prof, 1, std::exp(10.0)), Error);
    CHECK_THROWS_AS(psi(prof, 1, 0.5), Error);
    CHECK_NOTHROW(psi(prof, 1, std::exp(1.7)));
}

TEST_CASE("reduced matches brute on the simultaneous side too") {
    auto z = golden();
    auto grid = make_grid(0.4, 2.6, 0.2);
    auto brute = profile(candidates_simultaneous_brute(*z, 1, 40, 2, 192), grid);
    auto reduced = profile(candidates_reduced(*z, 1, Side::simultaneous, 2.6, 192, 0.2), grid);
    for (int j = 0; j < 2; ++j)
        for (size_t i = 0; i < grid.size(); ++i) {
            double d = reduced.values[j][i] - brute.values[j][i];
            CHECK(d >= -1e-9);
            CHECK(d <= 1.5);
        }
}

TEST_CASE("best_sim_sequence on the golden ratio gives Fibonacci numbers") {
    auto z = golden();
    auto rec = best_sim_sequence(*z, 1, 200);
    std::vector<long> fib = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
    REQUIRE(rec.size() >= fib.size());
    for (size_t i = 0; i < fib.size(); ++i) CHECK(rec[i].x == fib[i]);
    for (size_t i = 1; i < rec.size(); ++i) {
        CHECK(rec[i].x > rec[i - 1].x);
        CHECK(rec[i].max_dist < rec[i - 1].max_dist);
    }
    // consecutive records grow by a factor nu (Fibonacci growth)
    double r = (double)rec.back().x / (double)rec[rec.size() - 2].x;
    CHECK(r == doctest::Approx(1.618).epsilon(0.02));
}

#ifndef DIOPH_ACCEPTANCE_HPP
#define DIOPH_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "dioph/candidates.hpp"
#include "dioph/profile.hpp"

namespace dioph {

struct AcceptanceConfig {
    std::string zeta_spec = "fib:1,2";
    long precision_bits = 2048;
    double grid_step = 0.05;
    double rung_step = 0.5;
    double q_max_n2 = 60.0;
    double q_max_n3 = 60.0;
    double q_max_n4 = 60.0;
    long sim_x_max = 10000000;
    int cubic_generations = 5;
    long cubic_scan_h = 60;
    double cubic_scan_eps = 0.5;
    std::string cache_dir;
};

struct CriterionResult {
    std::string id;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

// Suites: paper-n2, paper-n3, paper-n4, cubic, properties, all.
// Prints one PASS/FAIL line per criterion to `log`.
std::vector<CriterionResult> run_acceptance(const std::string& suite, const AcceptanceConfig& cfg,
                                            std::ostream& log);

// Brute simultaneous profile with the window widened until the Minkowski
// sum shows no rising trend; returns the profile and the window used.
std::pair<MinimaProfile, int> simultaneous_brute_profile_auto(
    const Zeta& zeta, int n, long x_max, const std::vector<double>& grid, mpfr_prec_t bits,
    int max_window = 4, double trend_tol = 0.01);

} // namespace dioph

#endif

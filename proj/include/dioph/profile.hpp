#ifndef DIOPH_PROFILE_HPP
#define DIOPH_PROFILE_HPP

#include <memory>
#include <optional>
#include <vector>

#include "dioph/candidates.hpp"

namespace dioph {

// Sampled successive-minima functions L_1 <= ... <= L_{n+1} on a q grid,
// with the witness candidate of each level at each grid point.
struct MinimaProfile {
    Side side = Side::dual;
    int n = 1;
    std::vector<double> grid;                 // ascending, positive
    std::vector<std::vector<double>> values;  // values[j][i], level j+1 at grid[i]
    std::vector<std::vector<int>> witness;    // candidate ids, -1 if absent
    std::shared_ptr<CandidateSet> cands;      // may be null for synthetic profiles

    size_t points() const { return grid.size(); }
    double value(int level, size_t i) const { return values[level - 1][i]; }
};

std::vector<double> make_grid(double q_min, double q_max, double step);

// Successive minima at every grid point by greedy selection of linearly
// independent candidates in value order. Missing minima become +infinity;
// with allow_incomplete = false this raises insufficient-candidates.
MinimaProfile profile(std::shared_ptr<CandidateSet> cands, const std::vector<double>& grid,
                      bool allow_incomplete = false);

// Levels and witnesses at one arbitrary q (exact selection, no grid).
struct LevelSnapshot {
    std::vector<double> values;
    std::vector<int> witness_ids;
};
LevelSnapshot minima_at(const CandidateSet& cands, double q);

// psi_{n,j}(Q) = L_j(log Q) / log Q with linear interpolation on the grid.
double psi(const MinimaProfile& prof, int level, double Q);

// Refined extremum of level `level` near grid index i, using the exact
// piecewise-linear structure of the witness value functions.
struct RefinedPoint {
    double q;
    double value;
};
RefinedPoint refine_extremum(const MinimaProfile& prof, int level, size_t i, bool minimum);

// Strictly-improving records of max_i ||x zeta^i|| for x = 1..x_max.
struct SimRecord {
    long x;
    double max_dist;  // distance of the worst coordinate to its nearest integer
};
std::vector<SimRecord> best_sim_sequence(const Zeta& zeta, int n, long x_max);

struct MinkowskiStats {
    double max_abs_sum = 0.0;
    double trend_slope = 0.0;  // least-squares slope of sum_j L_j(q) against q
};
MinkowskiStats minkowski_stats(const MinimaProfile& prof);

// Max |L_a(q) - L_b(q)| over the grid plus its least-squares trend.
struct GapStats {
    double sup = 0.0;
    double trend_slope = 0.0;
};
GapStats gap_stats(const MinimaProfile& prof, int level_a, int level_b);

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace dioph

#endif

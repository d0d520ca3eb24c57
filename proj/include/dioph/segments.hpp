#ifndef DIOPH_SEGMENTS_HPP
#define DIOPH_SEGMENTS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dioph/exponents.hpp"
#include "dioph/profile.hpp"
#include "dioph/sequences.hpp"

namespace dioph {

// Segmentation of the n = 3 dual profile into the alternating intervals
// I_k = (q_k, b_k), J_k = (b_k, q_{k+1}): q_k are the joint-near-zero
// points of all four minima, b_k the refined minima of the first one.
struct SegmentReport {
    std::vector<double> q_joints;             // q_k
    std::vector<double> joint_band;           // max_j |L_j(q_k)| / q_k
    std::vector<double> b_mins;               // b_k, refined
    std::vector<double> b_values;             // L*_1(b_k)
    std::vector<double> c_mins;               // minima of L*_2 inside (q_k, q_{k+1})
    std::vector<double> c_values;
    std::vector<double> d_mins;               // vertex minima of the level-1 witness
    std::vector<double> e_mins;               // vertex minima of the level-2 witness

    struct Fit {
        double q_lo = 0, q_hi = 0;
        std::array<double, 4> slopes{};       // least-squares slope per level
    };
    std::vector<Fit> interval_I, interval_J;  // per complete pair

    GapStats gap12, gap34;
    double eps_band = 0.1;

    size_t pairs() const { return interval_I.size(); }
};

SegmentReport segment(const MinimaProfile& dual3, double eps_band = 0.1,
                      double fit_margin = 0.1);

struct ClaimRow {
    std::string id;
    double target = 0, measured = 0, tol = 0;
    bool pass = false;
};

// The combined-graph checks: interval length ratios, growth by nu, slope
// fits of +-1/3, psi values at b_k, and bounded level gaps.
std::vector<ClaimRow> verify_graph_claims(const SegmentReport& rep, const MinimaProfile& dual3,
                                          int last_pairs = 3);

// For each complete I_k, true when the level-1/2 witnesses inside span the
// same rational plane as {P, T P} for some quadratic P of the sequence.
std::vector<bool> witness_plane_consistency(const MinimaProfile& dual3, const SegmentReport& rep,
                                            const QuadraticSequence& quads);

} // namespace dioph

#endif

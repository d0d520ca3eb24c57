#ifndef DIOPH_EXPONENTS_HPP
#define DIOPH_EXPONENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "dioph/profile.hpp"

namespace dioph {

// The golden-ratio constants that govern extremal numbers.
namespace consts {
double sqrt5();
double rho();    // 2 + sqrt(5)
double tau();    // (3 + sqrt(5)) / 2
double nu();     // (1 + sqrt(5)) / 2
double gamma();  // (sqrt(5) - 1) / 2
Interval sqrt5_interval(mpfr_prec_t bits);
} // namespace consts

// psi extremum <-> classical exponent conversions:
//   simultaneous: (1 + lambda)(1 + psi) = (n+1)/n
//   dual:         (1 + w)(1/n + psi*)   = (n+1)/n
double psi_to_exponent(double psi, int n, Side side);
double exponent_to_psi(double exponent, int n, Side side);

// Estimate of a liminf/limsup of psi_j from the refined extrema of L_j:
// the least-squares slope through the extremum points kills the O(1)
// offsets that raw psi values carry at finite q.
struct ExtremumEstimate {
    bool valid = false;
    double value = 0.0;       // slope-fit estimate of the limit
    double raw_last = 0.0;    // psi at the last refined extremum
    double uncertainty = 0.0;
    std::vector<RefinedPoint> points;  // refined extrema in the window
};

struct ProfileExtrema {
    std::vector<ExtremumEstimate> lower;  // liminf psi_j, one per level
    std::vector<ExtremumEstimate> upper;  // limsup psi_j
};

// window_frac: trailing fraction of the grid used for the estimates.
// Requires at least three detected oscillation periods on level 1.
ProfileExtrema estimate_extrema(const MinimaProfile& prof, double window_frac = 0.6);

struct ExponentEstimate {
    bool valid = false;
    double value = 0.0;
    double uncertainty = 0.0;
    double psi = 0.0;          // the underlying psi extremum
};

struct ExponentReport {
    int n = 0;
    std::string zeta_spec;
    // index j-1 holds the level-j exponents
    std::vector<ExponentEstimate> lambda, lambda_hat, w, w_hat;
};

ExponentReport make_report(const std::optional<MinimaProfile>& sim,
                           const std::optional<MinimaProfile>& dual);

struct DualityStats {
    int level = 0;                 // j: pairs L_{n,j} with L*_{n,n+2-j}
    double max_abs_residual = 0.0;
    double trend_slope = 0.0;
};

// Mahler residuals r_j(q) = L_{n,j}(q) + L*_{n,n+2-j}(q) on matching grids.
std::vector<DualityStats> duality_residuals(const MinimaProfile& sim,
                                            const MinimaProfile& dual);

struct TransferenceRow {
    std::string name;
    double lower = 0.0, value = 0.0, upper = 0.0;
    bool ok = false;
};

struct TransferenceResult {
    std::vector<TransferenceRow> rows;
    bool khintchine_equality = false;  // either Khintchine bound tight
    bool deckel_checked = false;
    bool deckel_ok = false;            // prediction w_hat ~ n, lambda_hat ~ 1/n
    bool all_ok = false;
};

TransferenceResult transference_check(const ExponentReport& report, double tol_eq = 0.02,
                                      double deckel_tol_w = 0.05, double deckel_tol_l = 0.02);

// Slope of the segment joining the diagram points induced by P and R = PQ
// in the 3-dimensional dual diagram; compares against 1/3 with an O(delta)
// bound, delta from |Q(zeta)| = H(Q)^(-1+delta).
struct SlopeCheck {
    IntPolynomial p, q, r;
    double q1 = 0, l1 = 0, q2 = 0, l2 = 0;
    double delta = 0;
    double delta_gelfond = 0;  // log H(PQ) - log H(P) - log H(Q)
    double measured_slope = 0;
    double bound_const = 3.0;
    bool regime_ok = false;    // 1/log H(Q) <= |delta|
    bool ok = false;           // |measured - 1/3| <= bound_const * |delta|
};

SlopeCheck technisch_slope(const IntPolynomial& p, const IntPolynomial& q, const Zeta& zeta,
                           mpfr_prec_t bits);

// Slope computation from raw logs (used by the synthetic checks).
SlopeCheck slope_from_logs(double h_p, double e_p, double h_r, double e_r, double h_q,
                           double e_q);

// Residuals of the parametric identity at the latest `count` refined local
// minima of dual level j: |(1 + w^(j))(1/n + psi*_j) - (n+1)/n|.
std::vector<double> parametric_identity_residuals(const MinimaProfile& dual, int level,
                                                  int count = 3);

} // namespace dioph

#endif

#ifndef DIOPH_CUBIC_HPP
#define DIOPH_CUBIC_HPP

#include <optional>
#include <vector>

#include "dioph/poly.hpp"
#include "dioph/sequences.hpp"

namespace dioph {

// One irreducible-cubic approximation witness S = P_k E_l + j T P_{k+1}.
struct CubicWitness {
    size_t k = 0;                  // index into the quadratic sequence (of P_k)
    int shift = 0;                 // the chosen j in {1, 2}
    IntPolynomial s;               // primitive witness polynomial
    mpz_class budget;              // X = H(P_{k+1})
    double log_height = 0;
    double log_err = 0;            // log |S(zeta)|
    double log_deriv = 0;          // log |S'(zeta)|
    double exponent_poly = 0;      // -log|S(zeta)| / log H(S)
    std::optional<Interval> alpha; // root near zeta
    double exponent_root = 0;      // -log|zeta - alpha| / log H(alpha)
    double root_gap = 0;           // |zeta - alpha|, midpoint
    bool both_irreducible = false;
    bool derivative_guard_ok = false;  // |S'(zeta)| >= X^(1 - 0.1)
};

// Build witnesses for the latest `generations` indices k of the sequence.
std::vector<CubicWitness> cubic_experiment(const Zeta& zeta, const QuadraticSequence& quads,
                                           const BestApproxSequence& best, int generations,
                                           mpfr_prec_t bits);

// Exhaustive list of irreducible primitive cubics with H(P) <= h_max and
// |P(zeta)| <= H(P)^-(3+eps), sorted by height then coefficients.
std::vector<IntPolynomial> cubic_nonexistence_scan(const Zeta& zeta, long h_max, double eps,
                                                   mpfr_prec_t bits);

// Number of irreducible cubics with H <= X and |P(zeta)| <= X^-(sqrt5+eps),
// for each sampled budget X (the uniform variant of the scan).
struct UniformScanRow {
    long x_budget = 0;
    size_t solutions = 0;
};
std::vector<UniformScanRow> cubic_uniform_scan(const Zeta& zeta, const std::vector<long>& budgets,
                                               double eps, mpfr_prec_t bits);

} // namespace dioph

#endif

#ifndef DIOPH_SEQUENCES_HPP
#define DIOPH_SEQUENCES_HPP

#include <vector>

#include "dioph/contfrac.hpp"
#include "dioph/poly.hpp"

namespace dioph {

// Degree-one best approximation polynomial E_l(T) = q_l T - p_l built from
// the l-th continued-fraction convergent p_l/q_l.
struct BestApproxEntry {
    IntPolynomial poly;
    mpz_class height;
    double log_height;
    double log_err;  // log |E_l(zeta)|
};

struct BestApproxSequence {
    std::vector<BestApproxEntry> entries;
};

// All E_l with H(E_l) <= h_max, in increasing height order.
BestApproxSequence best_approx_polys(const Zeta& zeta, const mpz_class& h_max,
                                     mpfr_prec_t bits);

// Member of the sequence of best-approximating irreducible quadratics:
// |P_k(zeta)| decays like H(P_k)^-rho and heights grow geometrically.
struct QuadraticEntry {
    IntPolynomial poly;
    mpz_class height;
    double log_height;
    double log_err;        // log |P_k(zeta)|
    double log_deriv;      // log |P_k'(zeta)|
    double exponent;       // -log|P_k(zeta)| / log H(P_k)
};

struct QuadraticSequence {
    std::vector<QuadraticEntry> entries;
    size_t size() const { return entries.size(); }
};

struct QuadraticScanParams {
    double eps_detect = 0.5;        // keep log|P| <= (-rho + eps) log H
    double cluster_factor = 1.3;    // heights within this factor form one cluster
    long brute_height = 1000;       // exhaustive below, lattice ladder above
    double ladder_step = 1.15;      // multiplicative q step for the ladder
};

// Extract the quadratic sequence up to log-height cap via brute scan at
// small heights and reduced bases of the n=2 dual lattice beyond.
QuadraticSequence extract_quadratic_sequence(const Zeta& zeta, double log_h_cap,
                                             mpfr_prec_t bits,
                                             const QuadraticScanParams& params = {});

// Structured dual-side candidate families for n in {2, 3, 4}, derived from
// the quadratic sequence and the best approximation polynomials; all
// products capped at log-height <= log_h_cap.
std::vector<IntPolynomial> structured_family(const QuadraticSequence& quads,
                                             const BestApproxSequence& best, int n,
                                             double log_h_cap);

} // namespace dioph

#endif

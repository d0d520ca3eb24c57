#ifndef DIOPH_CANDIDATES_HPP
#define DIOPH_CANDIDATES_HPP

#include <memory>
#include <string>
#include <vector>

#include "dioph/contfrac.hpp"
#include "dioph/lattice.hpp"
#include "dioph/poly.hpp"
#include "dioph/sequences.hpp"

namespace dioph {

enum class Side { simultaneous, dual };

const char* side_name(Side s);
Side side_from_name(const std::string& name);

// One approximation candidate. The payload has n+1 integer coordinates:
// dual side      (a_0, ..., a_n)   polynomial coefficients, ascending;
// simultaneous   (x, y_1, ..., y_n) approximation vector.
// Stored primitive with a canonical sign; log_height may be -infinity for
// x == 0 on the simultaneous side.
struct Candidate {
    ZVec payload;
    double log_height = 0.0;
    double log_error = 0.0;
    int id = -1;

    IntPolynomial as_poly() const { return IntPolynomial(payload); }
};

// q-parametrized value of a candidate: the log of the smallest dilation of
// the parametric convex body that captures it.
double candidate_value(const Candidate& c, double q, Side side, int n);

struct CandidateSet {
    Side side = Side::dual;
    int n = 1;
    std::string zeta_spec;
    std::string backend;
    mpfr_prec_t precision_bits = 256;
    std::vector<Candidate> items;

    std::string cache_key(const std::string& bound_tag) const;
};

// --- backends ------------------------------------------------------------

// Exhaustive simultaneous-side candidates: all primitive (x, y) with
// 0 <= x <= x_max, each y_i within +-window of the nearest integer to
// x zeta^i, plus the unit vectors with x = 0. Per-|x| pruning keeps, in
// order of error, a prefix of full rank so successive minima are preserved.
std::shared_ptr<CandidateSet> candidates_simultaneous_brute(
    const Zeta& zeta, int n, long x_max, int window, mpfr_prec_t bits);

// Exhaustive dual-side candidates: all primitive P with deg <= n and
// H(P) <= h_max, pruned per exact height by the same full-rank-prefix rule.
std::shared_ptr<CandidateSet> candidates_dual_brute(
    const Zeta& zeta, int n, long h_max, mpfr_prec_t bits);

// Reduced-basis candidates: LLL bases of the parametric lattice collected
// along a ladder of q values, plus small integer combinations of each
// reduced basis. Values are recomputed exactly from payloads afterwards.
std::shared_ptr<CandidateSet> candidates_reduced(
    const Zeta& zeta, int n, Side side, double q_max, mpfr_prec_t bits,
    double rung_step = 0.5);

// Structured dual-side families built from the quadratic sequence and the
// best approximation polynomials.
std::shared_ptr<CandidateSet> candidates_structured(
    const Zeta& zeta, int n, const QuadraticSequence& quads,
    const BestApproxSequence& best, double log_h_cap, mpfr_prec_t bits);

// Union of candidate sets (same side/n/zeta), deduplicated.
std::shared_ptr<CandidateSet> merge_candidate_sets(
    const std::vector<std::shared_ptr<CandidateSet>>& sets);

// Assemble a dual-side set from explicit polynomials (dedups, drops zero).
std::shared_ptr<CandidateSet> candidate_set_from_polys(
    const Zeta& zeta, int n, const std::vector<IntPolynomial>& polys,
    const std::string& backend, mpfr_prec_t bits);

// Exact log of max_i |x zeta^i - y_i| with precision escalation.
double sim_log_error(const ZVec& payload, const Zeta& zeta, int n, mpfr_prec_t bits);

// Integer embedding of the parametric lattice at parameter q: payload rows
// (polynomials or approximation vectors) become rows of an integer matrix
// whose successive minima mirror the parametric convex body at q.
ZMat embed_parametric_rows(const Zeta& zeta, int n, Side side, double q, const ZMat& payload,
                           mpfr_prec_t bits);

} // namespace dioph

#endif

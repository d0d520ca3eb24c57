#ifndef DIOPH_LATTICE_HPP
#define DIOPH_LATTICE_HPP

#include <gmpxx.h>

#include <vector>

namespace dioph {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;

// Basis rows of an integer lattice together with payload rows that receive
// the same row operations, so reduced vectors can be mapped back to their
// original coordinates (polynomial coefficients or approximation vectors).
struct LatticeBasis {
    ZMat rows;
    ZMat payload;
};

// Exact LLL reduction (rational Gram-Schmidt, Lovasz condition delta).
void lll_reduce(LatticeBasis& basis, const mpq_class& delta = mpq_class(99, 100));

// Rank over Q of a set of integer vectors.
int rank_of(const ZMat& vectors);

// True if v is in the rational span of the given vectors.
bool in_span(const ZMat& vectors, const ZVec& v);

mpz_class dot(const ZVec& a, const ZVec& b);

} // namespace dioph

#endif

#ifndef DIOPH_CONTFRAC_HPP
#define DIOPH_CONTFRAC_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dioph/interval.hpp"

namespace dioph {

// Continued fraction [a0; a1, a2, ...]. All partial quotients are >= 1
// except possibly a0 (which may be 0 for values in (0,1)).
struct ContinuedFraction {
    std::vector<mpz_class> quotients;

    void validate() const;
    size_t size() const { return quotients.size(); }
};

// Parameters for the Fibonacci-word continued fraction: quotients are the
// letters of the fixed point of a -> ab, b -> a over the alphabet {a, b}.
struct ExtremalSpec {
    long a = 1;
    long b = 2;
    long length = 0;  // number of partial quotients after the leading 0
};

ContinuedFraction fibonacci_word(const ExtremalSpec& spec);

// Convergents p_k/q_k of the continued fraction, k = 0..max_k (inclusive).
std::vector<mpq_class> convergents(const ContinuedFraction& cf, size_t max_k);

// Exact value of a finite continued fraction.
mpq_class cf_exact_value(const ContinuedFraction& cf);

// Enclosure of the continued-fraction value with width <= 2^-target_bits.
// Consecutive convergents bracket the value; throws insufficient-depth if
// the expansion is too short for the requested width.
Interval cf_eval(const ContinuedFraction& cf, mpfr_prec_t target_bits);

// A real number given by its continued fraction, with cached enclosures of
// itself and its powers at any requested precision.
class Zeta {
public:
    Zeta(ContinuedFraction cf, std::string spec_string, mpfr_prec_t base_bits);

    const std::string& spec() const { return spec_; }
    mpfr_prec_t base_bits() const { return base_bits_; }
    const ContinuedFraction& cf() const { return cf_; }

    const Interval& enclosure(mpfr_prec_t bits) const;
    // zeta^1 .. zeta^n at the given precision (>= base_bits by default).
    const std::vector<Interval>& power_enclosures(int n, mpfr_prec_t bits) const;
    double to_double() const;

private:
    ContinuedFraction cf_;
    std::string spec_;
    mpfr_prec_t base_bits_;
    mutable std::map<mpfr_prec_t, Interval> cache_;
    mutable std::map<std::pair<int, mpfr_prec_t>, std::vector<Interval>> pow_cache_;
};

// Parse "fib:a,b[,length]" or "cf-file:<path>" into a Zeta at the given
// working precision. When length is omitted it is derived from the
// precision so cf_eval can meet the width budget.
std::shared_ptr<Zeta> zeta_from_spec(const std::string& spec, mpfr_prec_t bits);

} // namespace dioph

#endif

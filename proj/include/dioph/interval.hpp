#ifndef DIOPH_INTERVAL_HPP
#define DIOPH_INTERVAL_HPP

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "dioph/bigfloat.hpp"

namespace dioph {

// Rigorous enclosure [lo, hi] of a real value with dyadic endpoints.
// All arithmetic rounds outward, so the exact result of an operation on
// enclosed values is contained in the returned interval.
class Interval {
public:
    Interval() : lo_(64), hi_(64) {}
    Interval(BigFloat lo, BigFloat hi);

    static Interval exact_long(long x, mpfr_prec_t prec = 64);
    static Interval exact_mpz(const mpz_class& x, mpfr_prec_t prec);
    static Interval of_mpq(const mpq_class& x, mpfr_prec_t prec);
    // Enclosure of [a, b] given as exact rationals, a <= b.
    static Interval of_mpq_pair(const mpq_class& a, const mpq_class& b, mpfr_prec_t prec);

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }

    double width() const;            // upper bound on hi - lo
    double mid() const;
    // -1, +1 if the sign is certain, 0 if the interval straddles or touches zero.
    int sign() const;
    bool contains_zero() const { return sign() == 0; }
    bool contains(const mpq_class& x) const;
    bool contains(const Interval& other) const;  // other subset of this

    // log|x| as a [lo, hi] double pair; requires sign-certain interval.
    std::pair<double, double> log_abs_bounds() const;

    friend Interval iv_add(const Interval& a, const Interval& b, mpfr_prec_t prec);
    friend Interval iv_sub(const Interval& a, const Interval& b, mpfr_prec_t prec);
    friend Interval iv_mul(const Interval& a, const Interval& b, mpfr_prec_t prec);
    friend Interval iv_neg(const Interval& a);
    friend Interval iv_abs(const Interval& a);
    friend Interval iv_mul_z(const Interval& a, const mpz_class& m, mpfr_prec_t prec);
    friend Interval iv_add_z(const Interval& a, const mpz_class& m, mpfr_prec_t prec);

private:
    BigFloat lo_, hi_;
};

Interval iv_add(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval iv_sub(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval iv_mul(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval iv_neg(const Interval& a);
Interval iv_abs(const Interval& a);
Interval iv_mul_z(const Interval& a, const mpz_class& m, mpfr_prec_t prec);
Interval iv_add_z(const Interval& a, const mpz_class& m, mpfr_prec_t prec);

// Enclosures of zeta^1..zeta^n by repeated interval multiplication.
std::vector<Interval> powers(const Interval& zeta, int n, mpfr_prec_t prec);

} // namespace dioph

#endif

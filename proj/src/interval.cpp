#include "dioph/interval.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "dioph/error.hpp"

namespace dioph {

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (cmp(lo_, hi_) > 0) throw Error(errc::invalid_spec, "interval endpoints out of order");
}

Interval Interval::exact_long(long x, mpfr_prec_t prec) {
    BigFloat v = BigFloat::of_long(x, prec);
    return Interval(v, v);
}

Interval Interval::exact_mpz(const mpz_class& x, mpfr_prec_t prec) {
    return Interval(BigFloat::of_mpz(x, prec, MPFR_RNDD), BigFloat::of_mpz(x, prec, MPFR_RNDU));
}

Interval Interval::of_mpq(const mpq_class& x, mpfr_prec_t prec) {
    return Interval(BigFloat::of_mpq(x, prec, MPFR_RNDD), BigFloat::of_mpq(x, prec, MPFR_RNDU));
}

Interval Interval::of_mpq_pair(const mpq_class& a, const mpq_class& b, mpfr_prec_t prec) {
    assert(a <= b);
    return Interval(BigFloat::of_mpq(a, prec, MPFR_RNDD), BigFloat::of_mpq(b, prec, MPFR_RNDU));
}

double Interval::width() const {
    BigFloat w = BigFloat::sub(hi_, lo_, 64, MPFR_RNDU);
    return w.to_double(MPFR_RNDU);
}

double Interval::mid() const {
    return 0.5 * (lo_.to_double() + hi_.to_double());
}

int Interval::sign() const {
    if (lo_.sign() > 0) return 1;
    if (hi_.sign() < 0) return -1;
    return 0;
}

bool Interval::contains(const mpq_class& x) const {
    // Exact rational comparison, no rounding at the boundary.
    return mpfr_cmp_q(lo_.raw(), x.get_mpq_t()) <= 0 &&
           mpfr_cmp_q(hi_.raw(), x.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& other) const {
    return cmp(lo_, other.lo()) <= 0 && cmp(hi_, other.hi()) >= 0;
}

std::pair<double, double> Interval::log_abs_bounds() const {
    int s = sign();
    if (s == 0)
        throw Error(errc::precision_exhausted, "log|x| of an interval straddling zero");
    BigFloat a = (s > 0) ? lo_ : BigFloat::abs(hi_);
    BigFloat b = (s > 0) ? hi_ : BigFloat::abs(lo_);
    return {a.log_d(MPFR_RNDD), b.log_d(MPFR_RNDU)};
}

Interval iv_add(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    return Interval(BigFloat::add(a.lo_, b.lo_, prec, MPFR_RNDD),
                    BigFloat::add(a.hi_, b.hi_, prec, MPFR_RNDU));
}

Interval iv_sub(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    return Interval(BigFloat::sub(a.lo_, b.hi_, prec, MPFR_RNDD),
                    BigFloat::sub(a.hi_, b.lo_, prec, MPFR_RNDU));
}

Interval iv_mul(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    const BigFloat* as[2] = {&a.lo_, &a.hi_};
    const BigFloat* bs[2] = {&b.lo_, &b.hi_};
    BigFloat lo = BigFloat::mul(a.lo_, b.lo_, prec, MPFR_RNDD);
    BigFloat hi = BigFloat::mul(a.lo_, b.lo_, prec, MPFR_RNDU);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == 0 && j == 0) continue;
            BigFloat d = BigFloat::mul(*as[i], *bs[j], prec, MPFR_RNDD);
            BigFloat u = BigFloat::mul(*as[i], *bs[j], prec, MPFR_RNDU);
            if (d < lo) lo = d;
            if (u > hi) hi = u;
        }
    return Interval(std::move(lo), std::move(hi));
}

Interval iv_neg(const Interval& a) {
    return Interval(BigFloat::neg(a.hi_), BigFloat::neg(a.lo_));
}

Interval iv_abs(const Interval& a) {
    int s = a.sign();
    if (s > 0) return a;
    if (s < 0) return iv_neg(a);
    BigFloat zero(a.lo_.prec());
    BigFloat m = BigFloat::abs(a.lo_);
    BigFloat h = BigFloat::abs(a.hi_);
    return Interval(zero, (m > h) ? m : h);
}

Interval iv_mul_z(const Interval& a, const mpz_class& m, mpfr_prec_t prec) {
    if (m >= 0)
        return Interval(BigFloat::mul_z(a.lo_, m, prec, MPFR_RNDD),
                        BigFloat::mul_z(a.hi_, m, prec, MPFR_RNDU));
    return Interval(BigFloat::mul_z(a.hi_, m, prec, MPFR_RNDD),
                    BigFloat::mul_z(a.lo_, m, prec, MPFR_RNDU));
}

Interval iv_add_z(const Interval& a, const mpz_class& m, mpfr_prec_t prec) {
    BigFloat z = BigFloat::of_mpz(m, std::max<mpfr_prec_t>(prec, mpz_sizeinbase(m.get_mpz_t(), 2) + 2), MPFR_RNDN);
    return Interval(BigFloat::add(a.lo_, z, prec, MPFR_RNDD),
                    BigFloat::add(a.hi_, z, prec, MPFR_RNDU));
}

std::vector<Interval> powers(const Interval& zeta, int n, mpfr_prec_t prec) {
    if (n < 1) throw Error(errc::invalid_spec, "powers: n must be >= 1");
    std::vector<Interval> out;
    out.reserve(n);
    out.push_back(zeta);
    for (int i = 2; i <= n; ++i) out.push_back(iv_mul(out.back(), zeta, prec));
    return out;
}

} // namespace dioph

#include "dioph/bigfloat.hpp"

#include <cmath>

namespace dioph {

BigFloat BigFloat::of_long(long x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::of_double(double x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::of_mpz(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), rnd);
    return r;
}

BigFloat BigFloat::of_mpq(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, x.get_mpq_t(), rnd);
    return r;
}

std::pair<mpz_class, long> BigFloat::dyadic() const {
    if (mpfr_zero_p(v_)) return {mpz_class(0), 0};
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    return {m, static_cast<long>(e)};
}

std::string BigFloat::str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

BigFloat BigFloat::add(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_add(r.v_, a.v_, b.v_, rnd);
    return r;
}

BigFloat BigFloat::sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_sub(r.v_, a.v_, b.v_, rnd);
    return r;
}

BigFloat BigFloat::mul(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_mul(r.v_, a.v_, b.v_, rnd);
    return r;
}

BigFloat BigFloat::div(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_div(r.v_, a.v_, b.v_, rnd);
    return r;
}

BigFloat BigFloat::mul_z(const BigFloat& a, const mpz_class& m, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_mul_z(r.v_, a.v_, m.get_mpz_t(), rnd);
    return r;
}

BigFloat BigFloat::neg(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt_ui(unsigned long x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_sqrt_ui(r.v_, x, rnd);
    return r;
}

double BigFloat::log_d(mpfr_rnd_t rnd) const {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_log(t, v_, rnd);
    double d = mpfr_get_d(t, rnd);
    mpfr_clear(t);
    return d;
}

} // namespace dioph

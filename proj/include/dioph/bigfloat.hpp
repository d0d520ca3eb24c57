#ifndef DIOPH_BIGFLOAT_HPP
#define DIOPH_BIGFLOAT_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace dioph {

// Dyadic floating-point value (mantissa * 2^exp) backed by MPFR, with
// explicit precision and rounding on every operation. Interval endpoints
// are built from these, so widths are exactly representable.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat of_long(long x, mpfr_prec_t prec = 64);
    static BigFloat of_double(double x, mpfr_prec_t prec = 64);
    static BigFloat of_mpz(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat of_mpq(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd);

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    const mpfr_t& raw() const { return v_; }
    mpfr_t& raw() { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

    // Mantissa m and exponent e with value == m * 2^e (m == 0 iff value is 0).
    std::pair<mpz_class, long> dyadic() const;

    std::string str(int digits = 20) const;

    friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return cmp(a, b) == 0; }

    // Directed-rounding arithmetic; result carries `prec` bits.
    static BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat mul_z(const BigFloat& a, const mpz_class& m, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static BigFloat neg(const BigFloat& a);
    static BigFloat abs(const BigFloat& a);
    static BigFloat sqrt_ui(unsigned long x, mpfr_prec_t prec, mpfr_rnd_t rnd);

    // log(x) for x > 0, rounded as requested, returned as double.
    double log_d(mpfr_rnd_t rnd) const;

private:
    mpfr_t v_;
};

} // namespace dioph

#endif

#ifndef DIOPH_POLY_HPP
#define DIOPH_POLY_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "dioph/contfrac.hpp"
#include "dioph/interval.hpp"

namespace dioph {

// Integer-coefficient polynomial, coefficients ascending (c[0] + c[1] T + ...).
// The zero polynomial has an empty coefficient vector.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs);
    static IntPolynomial monomial(int degree, const mpz_class& c = 1);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& coeff(int i) const;  // 0 beyond the degree

    // Height: max |c_j| over all coefficients (the zero polynomial has height 0).
    mpz_class height() const;
    double log_height() const;

    mpz_class content() const;
    IntPolynomial primitive_part() const;   // content divided out, leading coeff > 0
    IntPolynomial derivative() const;

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-() const;
    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

    Interval eval(const Interval& x, mpfr_prec_t prec) const;
    mpq_class eval_exact(const mpq_class& x) const;
    double eval_double(double x) const;

    std::string str() const;  // human-readable, e.g. "T^2 - T - 1"

private:
    std::vector<mpz_class> c_;
    void trim();
};

// Exact product together with the Gelfond height ratio H(PQ)/(H(P)H(Q))
// and its log, which enters the slope analysis as the Delta term.
struct MulResult {
    IntPolynomial product;
    mpq_class gelfond_ratio;
    double delta_log = 0.0;
};

// Exact product of P and Q; degree of the product must stay <= max_degree.
MulResult poly_mul(const IntPolynomial& p, const IntPolynomial& q, int max_degree = 8);

// Irreducibility over Q for degrees 1..3 after removing content: a
// polynomial of degree 2 or 3 is reducible iff it has a rational root,
// tested over divisors of the outer coefficients.
bool irreducible_low_degree(const IntPolynomial& p);

// Enclosure of P(zeta) with sign certain when |P(zeta)| != 0, escalating
// the precision of zeta up to max_escalations doublings.
Interval poly_eval_certain(const IntPolynomial& p, const Zeta& zeta,
                           mpfr_prec_t bits, int max_escalations = 3);

// log |P(zeta)| as a midpoint double; throws precision-exhausted if the
// sign cannot be certified after escalation.
double log_abs_eval(const IntPolynomial& p, const Zeta& zeta, mpfr_prec_t bits);

// Real root of P in [center - radius, center + radius] closest to center,
// as a refinable enclosure. Returns nullopt when no root lies in the window.
std::optional<Interval> root_near(const IntPolynomial& p, const Interval& center,
                                  double radius, mpfr_prec_t target_bits);

} // namespace dioph

#endif

#include "dioph/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "dioph/error.hpp"

namespace dioph {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::monomial(int degree, const mpz_class& c) {
    if (c == 0) return IntPolynomial();
    std::vector<mpz_class> v(degree + 1, mpz_class(0));
    v[degree] = c;
    return IntPolynomial(std::move(v));
}

const mpz_class& IntPolynomial::coeff(int i) const {
    static const mpz_class zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

mpz_class IntPolynomial::height() const {
    mpz_class h = 0;
    for (const auto& a : c_) {
        mpz_class v = abs(a);
        if (v > h) h = v;
    }
    return h;
}

double IntPolynomial::log_height() const {
    mpz_class h = height();
    if (h == 0) return -std::numeric_limits<double>::infinity();
    // log via mpfr to stay accurate for heights beyond double range
    BigFloat f = BigFloat::of_mpz(h, 96, MPFR_RNDN);
    return f.log_d(MPFR_RNDN);
}

mpz_class IntPolynomial::content() const {
    mpz_class g = 0;
    for (const auto& a : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (c_.back() < 0) g = -g;
    std::vector<mpz_class> v(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] / g;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::derivative() const {
    if (c_.size() <= 1) return IntPolynomial();
    std::vector<mpz_class> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<mpz_class> v(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<mpz_class> v(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
    return IntPolynomial(std::move(v));
}

Interval IntPolynomial::eval(const Interval& x, mpfr_prec_t prec) const {
    if (is_zero()) return Interval::exact_long(0, prec);
    Interval acc = Interval::exact_mpz(c_.back(), prec);
    for (int i = degree() - 1; i >= 0; --i)
        acc = iv_add_z(iv_mul(acc, x, prec), c_[i], prec);
    return acc;
}

mpq_class IntPolynomial::eval_exact(const mpq_class& x) const {
    mpq_class acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + mpq_class(c_[i]);
    return acc;
}

double IntPolynomial::eval_double(double x) const {
    double acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i].get_d();
    return acc;
}

std::string IntPolynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& a = c_[i];
        if (a == 0) continue;
        mpz_class m = abs(a);
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (m != 1 || i == 0) os << m.get_str();
        if (i >= 1) {
            if (m != 1) os << "*";
            os << "T";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

MulResult poly_mul(const IntPolynomial& p, const IntPolynomial& q, int max_degree) {
    if (p.is_zero() || q.is_zero())
        return {IntPolynomial(), mpq_class(0), 0.0};
    int dp = p.degree(), dq = q.degree();
    if (dp + dq > max_degree)
        throw Error(errc::degree_overflow, "product degree exceeds configured maximum",
                    {{"degree", std::to_string(dp + dq)}, {"max", std::to_string(max_degree)}});
    std::vector<mpz_class> v(dp + dq + 1, mpz_class(0));
    for (int i = 0; i <= dp; ++i)
        for (int j = 0; j <= dq; ++j) v[i + j] += p.coeff(i) * q.coeff(j);
    IntPolynomial prod(std::move(v));
    mpq_class ratio(prod.height(), p.height() * q.height());
    ratio.canonicalize();
    MulResult r{std::move(prod), ratio, 0.0};
    BigFloat f = BigFloat::of_mpq(r.gelfond_ratio, 96, MPFR_RNDN);
    r.delta_log = f.log_d(MPFR_RNDN);
    return r;
}

namespace {

// Simplest rational (minimal denominator) in the closed interval [a, b].
mpq_class simplest_rational(mpq_class a, mpq_class b) {
    assert(a <= b);
    if (a == b) return a;
    if (a <= 0 && b >= 0) return mpq_class(0);
    if (b < 0) return -simplest_rational(-b, -a);
    // 0 < a < b: walk the continued-fraction expansion.
    mpz_class fa;
    mpz_fdiv_q(fa.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpq_class fl(fa);
    if (a == fl) return a;
    if (fl + 1 <= b) return fl + 1;
    mpq_class sub = simplest_rational(1 / (b - fl), 1 / (a - fl));
    return fl + 1 / sub;
}

struct Bracket {
    mpq_class lo, hi;  // sign change across [lo, hi] or exact root at lo == hi
    bool exact = false;
};

int sign_exact(const IntPolynomial& p, const mpq_class& x) {
    return sgn(p.eval_exact(x));
}

Interval eval_over_box(const IntPolynomial& p, const mpq_class& lo, const mpq_class& hi,
                       mpfr_prec_t prec) {
    return p.eval(Interval::of_mpq_pair(lo, hi, prec), prec);
}

// Pseudo-remainder based gcd; inputs of small degree.
IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        // pseudo remainder of a by b
        IntPolynomial r = a;
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            mpz_class lead_r = r.coeffs().back(), lead_b = b.coeffs().back();
            std::vector<mpz_class> v(r.degree() + 1, mpz_class(0));
            for (int i = 0; i <= r.degree(); ++i) v[i] = r.coeff(i) * lead_b;
            for (int i = 0; i <= b.degree(); ++i) v[i + shift] -= b.coeff(i) * lead_r;
            r = IntPolynomial(std::move(v));
        }
        a = b;
        b = r.is_zero() ? r : r.primitive_part();
    }
    return a.primitive_part();
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
    IntPolynomial g = poly_gcd(p, p.derivative());
    if (g.degree() < 1) return p;
    // exact division p / g
    IntPolynomial r = p;
    std::vector<mpz_class> q(p.degree() - g.degree() + 1, mpz_class(0));
    for (int i = p.degree() - g.degree(); i >= 0; --i) {
        mpz_class c = r.coeff(i + g.degree()) / g.coeffs().back();
        q[i] = c;
        if (c != 0) {
            std::vector<mpz_class> v(r.degree() + 1, mpz_class(0));
            for (int k = 0; k <= r.degree(); ++k) v[k] = r.coeff(k);
            for (int k = 0; k <= g.degree(); ++k) v[k + i] -= c * g.coeff(k);
            r = IntPolynomial(std::move(v));
        }
    }
    return IntPolynomial(std::move(q));
}

// Split ratios with non-dyadic denominators so a retried split cannot land
// on the same rational root twice in a row.
const std::pair<int, int> kSplitRatios[] = {{1, 2}, {5, 11}, {7, 13}, {9, 17}, {11, 23}};

// Recursively isolate sign-change brackets of a squarefree p inside
// (lo, hi); endpoints must not be roots.
void isolate(const IntPolynomial& p, const IntPolynomial& dp, const mpq_class& lo,
             const mpq_class& hi, int depth, mpfr_prec_t prec, std::vector<Bracket>& out) {
    Interval box = eval_over_box(p, lo, hi, prec);
    if (box.sign() != 0) return;  // no root here
    int slo = sign_exact(p, lo), shi = sign_exact(p, hi);
    if (slo != shi) {
        // certify a single crossing when the derivative is sign-fixed
        Interval dbox = eval_over_box(dp, lo, hi, prec);
        if (dbox.sign() != 0) {
            out.push_back({lo, hi, false});
            return;
        }
    }
    if (depth <= 0)
        throw Error(errc::precision_exhausted, "root isolation depth exhausted");
    for (auto [num, den] : kSplitRatios) {
        mpq_class mid = lo + (hi - lo) * num / den;
        int sm = sign_exact(p, mid);
        if (sm == 0) {
            out.push_back({mid, mid, true});
            continue;  // try a split point that is not a root
        }
        isolate(p, dp, lo, mid, depth - 1, prec, out);
        isolate(p, dp, mid, hi, depth - 1, prec, out);
        return;
    }
    throw Error(errc::precision_exhausted, "no usable split point in root isolation");
}

// Record endpoint roots and nudge the window boundary inward until the
// endpoint is sign-definite; p must be squarefree.
void trim_endpoint_roots(const IntPolynomial& p, const IntPolynomial& dp, mpq_class& lo,
                         mpq_class& hi, mpfr_prec_t prec, std::vector<Bracket>& out) {
    for (int side = 0; side < 2; ++side) {
        mpq_class& e = (side == 0) ? lo : hi;
        if (sign_exact(p, e) != 0) continue;
        out.push_back({e, e, true});
        mpq_class step = (hi - lo) / 1024;
        while (true) {
            mpq_class moved = (side == 0) ? mpq_class(e + step) : mpq_class(e - step);
            // derivative sign-fixed on the skipped sliver => no other root there
            Interval dbox = (side == 0) ? eval_over_box(dp, e, moved, prec)
                                        : eval_over_box(dp, moved, e, prec);
            if (dbox.sign() != 0 && sign_exact(p, moved) != 0) {
                e = moved;
                break;
            }
            step /= 2;
        }
    }
}

// Drop duplicate exact roots and brackets that merely re-isolate one.
std::vector<Bracket> dedup_brackets(std::vector<Bracket> in) {
    std::vector<Bracket> out;
    for (auto& b : in) {
        if (!b.exact) continue;
        bool seen = false;
        for (auto& o : out)
            if (o.lo == b.lo) { seen = true; break; }
        if (!seen) out.push_back(b);
    }
    for (auto& b : in) {
        if (b.exact) continue;
        bool covers_exact = false;
        for (auto& o : out)
            if (o.exact && b.lo < o.lo && o.lo < b.hi) { covers_exact = true; break; }
        if (!covers_exact) out.push_back(b);
    }
    return out;
}

mpq_class bisect_to_width(const IntPolynomial& p, mpq_class lo, mpq_class hi,
                          const mpq_class& width, mpq_class* out_hi) {
    int slo = sign_exact(p, lo);
    while (hi - lo > width) {
        mpq_class mid = (lo + hi) / 2;
        int sm = sign_exact(p, mid);
        if (sm == 0) { lo = mid; hi = mid; break; }
        if (sm == slo) lo = mid; else hi = mid;
    }
    *out_hi = hi;
    return lo;
}

mpq_class bf_to_mpq(const BigFloat& f) {
    auto [m, e] = f.dyadic();
    mpq_class r(m);
    if (e >= 0) {
        mpz_class two = 1;
        mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), e);
        r *= two;
    } else {
        mpz_class two = 1;
        mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), -e);
        r /= mpq_class(two);
    }
    return r;
}

mpq_class pow2_mpq(long e) {
    mpz_class two = 1;
    mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), std::abs(e));
    return e >= 0 ? mpq_class(two) : mpq_class(1) / mpq_class(two);
}

} // namespace

bool irreducible_low_degree(const IntPolynomial& p_in) {
    IntPolynomial p = p_in.primitive_part();
    int d = p.degree();
    if (d < 1 || d > 3)
        throw Error(errc::degree_out_of_range, "irreducibility test supports degrees 1..3",
                    {{"degree", std::to_string(d)}});
    if (d == 1) return true;
    if (p.coeff(0) == 0) return false;  // root at 0
    if (d == 2) {
        // reducible over Q iff the discriminant is a perfect square
        mpz_class disc = p.coeff(1) * p.coeff(1) - 4 * p.coeff(2) * p.coeff(0);
        if (disc < 0) return true;
        return mpz_perfect_square_p(disc.get_mpz_t()) == 0;
    }
    // A repeated factor makes the polynomial reducible outright.
    if (poly_gcd(p, p.derivative()).degree() >= 1) return false;
    // Degree 3, squarefree: reducible iff there is a rational root. Isolate
    // real roots, then reconstruct a minimal-denominator candidate and verify.
    IntPolynomial dp = p.derivative();
    mpz_class h = p.height();
    mpq_class bound = mpq_class(h) / mpq_class(abs(p.coeff(3))) + 1;
    std::vector<Bracket> brackets;
    size_t h_bits = mpz_sizeinbase(h.get_mpz_t(), 2);
    // root separation >= ~H^-2; box values near a root reach ~sep * H
    mpfr_prec_t prec = 256 + 3 * h_bits;
    // window ~H wide, root separation >= ~H^-2: depth scales with bits(H)
    int depth = 320 + 3 * static_cast<int>(h_bits);
    isolate(p, dp, -bound, bound, depth, prec, brackets);
    brackets = dedup_brackets(std::move(brackets));
    // unique rational with denominator <= H in an interval of width < 1/(2H^2)
    mpq_class width = mpq_class(1) / mpq_class(4 * h * h);
    for (auto& b : brackets) {
        mpq_class root_lo = b.lo, root_hi = b.hi;
        if (!b.exact)
            root_lo = bisect_to_width(p, b.lo, b.hi, width, &root_hi);
        if (root_lo == root_hi) {
            if (p.eval_exact(root_lo) == 0) return false;
            continue;
        }
        mpq_class cand = simplest_rational(root_lo, root_hi);
        if (cand.get_den() <= h && p.eval_exact(cand) == 0) return false;
    }
    return true;
}

Interval poly_eval_certain(const IntPolynomial& p, const Zeta& zeta, mpfr_prec_t bits,
                           int max_escalations) {
    if (p.is_zero())
        throw Error(errc::invalid_spec, "zero polynomial rejected for evaluation at zeta");
    mpfr_prec_t b = bits;
    for (int k = 0; k <= max_escalations; ++k) {
        Interval r = p.eval(zeta.enclosure(b), b + 32);
        if (r.sign() != 0) return r;
        b *= 2;
    }
    throw Error(errc::precision_exhausted,
                "P(zeta) straddles zero after precision escalation",
                {{"poly", p.str()}, {"bits", std::to_string(bits)}});
}

double log_abs_eval(const IntPolynomial& p, const Zeta& zeta, mpfr_prec_t bits) {
    mpfr_prec_t b = bits;
    for (int k = 0; k <= 3; ++k) {
        Interval r = p.eval(zeta.enclosure(b), b + 32);
        if (r.sign() != 0) {
            auto [lo, hi] = r.log_abs_bounds();
            if (hi - lo <= 1e-9) return 0.5 * (lo + hi);
        }
        b *= 2;
    }
    throw Error(errc::precision_exhausted, "log|P(zeta)| not certified",
                {{"poly", p.str()}});
}

std::optional<Interval> root_near(const IntPolynomial& p, const Interval& center,
                                  double radius, mpfr_prec_t target_bits) {
    if (p.is_zero() || p.degree() < 1)
        throw Error(errc::invalid_spec, "root_near requires a nonzero polynomial of degree >= 1");
    if (!(radius > 0))
        throw Error(errc::invalid_spec, "root_near radius must be positive");
    mpq_class c = bf_to_mpq(center.lo());
    mpq_class r(radius);  // exact dyadic value of the double
    mpq_class lo = c - r, hi = c + r;
    IntPolynomial sf = squarefree_part(p.primitive_part());
    IntPolynomial dp = sf.derivative();
    mpz_class h = sf.height();
    size_t h_bits = mpz_sizeinbase(h.get_mpz_t(), 2);
    // near the root the values drop to ~2^-target: box evaluations need
    // precision on that scale or they never exclude zero
    mpfr_prec_t prec = 160 + h_bits + target_bits;
    std::vector<Bracket> brackets;
    trim_endpoint_roots(sf, dp, lo, hi, prec, brackets);
    int depth = 320 + static_cast<int>(h_bits) + static_cast<int>(target_bits) / 4;
    isolate(sf, dp, lo, hi, depth, prec, brackets);
    brackets = dedup_brackets(std::move(brackets));
    if (brackets.empty()) return std::nullopt;
    mpq_class width = pow2_mpq(-static_cast<long>(target_bits));
    std::optional<Interval> best;
    mpq_class best_dist;
    for (auto& b : brackets) {
        mpq_class rl = b.lo, rh = b.hi;
        if (!b.exact) rl = bisect_to_width(sf, b.lo, b.hi, width, &rh);
        mpq_class mid = (rl + rh) / 2;
        mpq_class dist = abs(mid - c);
        if (!best || dist < best_dist) {
            best_dist = dist;
            best = Interval::of_mpq_pair(rl, rh, target_bits + 32);
        }
    }
    return best;
}

} // namespace dioph

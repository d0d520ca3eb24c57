#include "dioph/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dioph/error.hpp"
#include "dioph/exponents.hpp"

namespace dioph {

namespace {

double log_mpz(const mpz_class& x) {
    return BigFloat::of_mpz(abs(x), 96, MPFR_RNDN).log_d(MPFR_RNDN);
}

// |zeta - alpha| via interval subtraction at enough precision.
double log_root_gap(const Zeta& zeta, const Interval& alpha, mpfr_prec_t bits) {
    for (mpfr_prec_t b = bits; b <= bits * 8; b *= 2) {
        Interval gap = iv_abs(iv_sub(zeta.enclosure(b), alpha, b));
        if (gap.sign() != 0) {
            auto [lo, hi] = gap.log_abs_bounds();
            if (hi - lo < 1e-6) return 0.5 * (lo + hi);
        }
    }
    throw Error(errc::precision_exhausted, "root gap not certified");
}

} // namespace

std::vector<CubicWitness> cubic_experiment(const Zeta& zeta, const QuadraticSequence& quads,
                                           const BestApproxSequence& best, int generations,
                                           mpfr_prec_t bits) {
    if (quads.size() < static_cast<size_t>(generations) + 2)
        throw Error(errc::insufficient_entries,
                    "cubic experiment needs generations + 2 quadratic entries",
                    {{"have", std::to_string(quads.size())},
                     {"need", std::to_string(generations + 2)}});
    std::vector<CubicWitness> out;
    const IntPolynomial t = IntPolynomial::monomial(1);
    size_t first = quads.size() - 1 - generations;
    for (size_t k = first; k + 1 < quads.size(); ++k) {
        const auto& pk = quads.entries[k];
        const auto& pk1 = quads.entries[k + 1];
        mpz_class x = pk1.height;
        // E_l with l maximal such that H(E_{l+1}) H(P_k) <= X
        size_t l = 0;
        bool found = false;
        for (size_t i = 0; i + 1 < best.entries.size(); ++i) {
            if (best.entries[i + 1].height * pk.height <= x) {
                l = i;
                found = true;
            }
        }
        if (!found) continue;
        IntPolynomial q_k1 = poly_mul(pk.poly, best.entries[l].poly, 3).product;
        IntPolynomial tp = poly_mul(pk1.poly, t, 3).product;

        CubicWitness best_w;
        bool have = false;
        int irreducible_count = 0;
        for (int j = 1; j <= 2; ++j) {
            IntPolynomial s = q_k1;
            for (int rep = 0; rep < j; ++rep) s = s + tp;
            s = s.primitive_part();
            if (s.degree() != 3) continue;
            if (!irreducible_low_degree(s)) continue;
            ++irreducible_count;
            CubicWitness w;
            w.k = k;
            w.shift = j;
            w.s = s;
            w.budget = x;
            w.log_height = s.log_height();
            w.log_err = log_abs_eval(s, zeta, bits);
            w.log_deriv = log_abs_eval(s.derivative(), zeta, bits);
            w.exponent_poly = -w.log_err / w.log_height;
            double lx = log_mpz(x);
            w.derivative_guard_ok = w.log_deriv >= 0.9 * lx + std::log(1e-3);
            if (!have || w.log_deriv > best_w.log_deriv) {
                best_w = w;
                have = true;
            }
        }
        if (!have)
            throw Error(errc::no_irreducible_candidate,
                        "both cubic combinations reducible; flagged for inspection",
                        {{"k", std::to_string(k)}});
        best_w.both_irreducible = irreducible_count == 2;

        // root closest to zeta and the algebraic approximation exponent;
        // sizes computed in log space (the gap itself can underflow)
        double log2_gap = (best_w.log_err - best_w.log_height) / std::log(2.0);
        double radius = std::max(std::ldexp(1.0, std::max(-1000, (int)log2_gap + 7)), 1e-300);
        long gap_bits = static_cast<long>(std::max(128.0, -log2_gap + 128.0));
        // the window center must be sharper than the window itself
        auto alpha = root_near(best_w.s, zeta.enclosure(gap_bits + 64), radius, gap_bits);
        if (alpha) {
            best_w.alpha = alpha;
            double lg = log_root_gap(zeta, *alpha, std::max<mpfr_prec_t>(bits, gap_bits + 64));
            best_w.root_gap = std::exp(lg);
            best_w.exponent_root = -lg / best_w.log_height;
        }
        out.push_back(std::move(best_w));
    }
    return out;
}

namespace {

// Exhaustive pass over primitive cubics with H <= h_max; calls sink for
// every polynomial whose |P(zeta)| passes the double-precision prefilter.
template <typename Sink>
void scan_cubics(const Zeta& zeta, long h_max, double log_thresh_slack, Sink&& sink) {
    const auto& pows = zeta.power_enclosures(3, 192);
    double z1 = pows[0].mid(), z2 = pows[1].mid(), z3 = pows[2].mid();
    for (long a3 = 1; a3 <= h_max; ++a3)
        for (long a2 = -h_max; a2 <= h_max; ++a2)
            for (long a1 = -h_max; a1 <= h_max; ++a1) {
                double s = a3 * z3 + a2 * z2 + a1 * z1;
                long a0c = std::lround(-s);
                for (long d = -1; d <= 1; ++d) {
                    long a0 = a0c + d;
                    if (std::labs(a0) > h_max) continue;
                    long h = std::max({a3, std::labs(a2), std::labs(a1), std::labs(a0)});
                    double val = std::abs(s + static_cast<double>(a0));
                    if (std::log(std::max(val, 1e-300)) > log_thresh_slack * std::log((double)h) + 0.5)
                        continue;
                    sink(a3, a2, a1, a0, h);
                }
            }
}

} // namespace

std::vector<IntPolynomial> cubic_nonexistence_scan(const Zeta& zeta, long h_max, double eps,
                                                   mpfr_prec_t bits) {
    if (h_max < 1) throw Error(errc::invalid_spec, "h_max must be >= 1");
    std::vector<IntPolynomial> out;
    scan_cubics(zeta, h_max, -(3.0 + eps), [&](long a3, long a2, long a1, long a0, long h) {
        long g = std::gcd(std::gcd(std::labs(a3), std::labs(a2)),
                          std::gcd(std::labs(a1), std::labs(a0)));
        if (g > 1) return;
        IntPolynomial p(std::vector<mpz_class>{a0, a1, a2, a3});
        double le = log_abs_eval(p, zeta, bits);
        if (le > -(3.0 + eps) * std::log(static_cast<double>(h)) + 1e-9) return;
        if (!irreducible_low_degree(p)) return;
        out.push_back(std::move(p));
    });
    std::sort(out.begin(), out.end(), [](const IntPolynomial& a, const IntPolynomial& b) {
        if (a.height() != b.height()) return a.height() < b.height();
        return a.coeffs() < b.coeffs();
    });
    return out;
}

std::vector<UniformScanRow> cubic_uniform_scan(const Zeta& zeta, const std::vector<long>& budgets,
                                               double eps, mpfr_prec_t bits) {
    std::vector<UniformScanRow> rows;
    if (budgets.empty()) return rows;
    long h_max = *std::max_element(budgets.begin(), budgets.end());
    double c = consts::sqrt5() + eps;
    // a solution for budget X >= H(P) needs |P(zeta)| <= X^-c <= H^-c
    struct Hit {
        long h;
        double log_err;
    };
    std::vector<Hit> hits;
    scan_cubics(zeta, h_max, -c, [&](long a3, long a2, long a1, long a0, long h) {
        long g = std::gcd(std::gcd(std::labs(a3), std::labs(a2)),
                          std::gcd(std::labs(a1), std::labs(a0)));
        if (g > 1) return;
        IntPolynomial p(std::vector<mpz_class>{a0, a1, a2, a3});
        double le = log_abs_eval(p, zeta, bits);
        if (le > -c * std::log(static_cast<double>(h)) + 1e-9) return;
        if (!irreducible_low_degree(p)) return;
        hits.push_back({h, le});
    });
    for (long x : budgets) {
        UniformScanRow row;
        row.x_budget = x;
        double lim = -c * std::log(static_cast<double>(x));
        for (const auto& hit : hits)
            if (hit.h <= x && hit.log_err <= lim + 1e-9) ++row.solutions;
        rows.push_back(row);
    }
    return rows;
}

} // namespace dioph

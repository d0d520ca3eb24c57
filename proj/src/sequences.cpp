#include "dioph/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "dioph/error.hpp"
#include "dioph/candidates.hpp"
#include "dioph/lattice.hpp"

namespace dioph {

namespace {

double log_mpz(const mpz_class& x) {
    return BigFloat::of_mpz(abs(x), 96, MPFR_RNDN).log_d(MPFR_RNDN);
}

constexpr double kRho = 4.23606797749978969;  // 2 + sqrt(5)

} // namespace

BestApproxSequence best_approx_polys(const Zeta& zeta, const mpz_class& h_max, mpfr_prec_t bits) {
    if (h_max < 1) throw Error(errc::invalid_spec, "h_max must be >= 1");
    BestApproxSequence seq;
    const auto& cf = zeta.cf();
    auto conv = convergents(cf, cf.size() - 1);
    double prev_err = std::numeric_limits<double>::infinity();
    for (size_t l = 0; l < conv.size(); ++l) {
        mpz_class p = conv[l].get_num(), q = conv[l].get_den();
        mpz_class h = std::max(abs(p), abs(q));
        if (h > h_max) break;
        // E_l(T) = q T - p
        IntPolynomial e(std::vector<mpz_class>{-p, q});
        if (e.is_zero()) continue;
        BestApproxEntry entry;
        entry.poly = e;
        entry.height = h;
        entry.log_height = log_mpz(h);
        entry.log_err = log_abs_eval(e, zeta, bits);
        // best approximations decrease strictly in error and increase in height
        if (!seq.entries.empty() && entry.log_err >= prev_err) continue;
        prev_err = entry.log_err;
        seq.entries.push_back(std::move(entry));
    }
    return seq;
}

QuadraticSequence extract_quadratic_sequence(const Zeta& zeta, double log_h_cap, mpfr_prec_t bits,
                                             const QuadraticScanParams& params) {
    // Collect degree-2 detections: brute force below params.brute_height,
    // reduced bases of the n=2 dual parametric lattice beyond.
    struct Hit {
        IntPolynomial poly;
        mpz_class height;
        double log_height, log_err;
    };
    std::vector<Hit> hits;
    std::set<std::string> seen;

    const double thresh = -(kRho - params.eps_detect);

    auto consider = [&](IntPolynomial p) {
        if (p.degree() != 2) return;
        p = p.primitive_part();
        std::string key = p.coeff(0).get_str() + "," + p.coeff(1).get_str() + "," + p.coeff(2).get_str();
        if (!seen.insert(key).second) return;
        mpz_class h = p.height();
        double lh = log_mpz(h);
        if (lh > log_h_cap || h < 2) return;
        double le = log_abs_eval(p, zeta, bits);
        if (le > thresh * lh) return;
        if (!irreducible_low_degree(p)) return;
        hits.push_back({p, h, lh, le});
    };

    // brute scan: for each (a2, a1) only the few a0 that make |P(zeta)| tiny
    const auto& pows = zeta.power_enclosures(2, std::max<mpfr_prec_t>(bits, 192));
    double z1 = pows[0].mid(), z2 = pows[1].mid();
    long hb = std::min<long>(params.brute_height, static_cast<long>(std::exp(std::min(log_h_cap, 18.0))));
    for (long a2 = 1; a2 <= hb; ++a2) {
        for (long a1 = -hb; a1 <= hb; ++a1) {
            double s = a2 * z2 + a1 * z1;
            long a0c = std::lround(-s);
            for (long d = -1; d <= 1; ++d) {
                long a0 = a0c + d;
                if (std::labs(a0) > hb) continue;
                long h = std::max({a2, std::labs(a1), std::labs(a0)});
                if (h < 2) continue;
                double val = std::abs(s + a0);
                if (std::log(std::max(val, 1e-300)) > thresh * std::log((double)h) + 1.0) continue;
                consider(IntPolynomial(std::vector<mpz_class>{a0, a1, a2}));
            }
        }
    }

    // lattice ladder: the best quadratics appear as first vectors of the
    // reduced dual basis near their own minima
    double q_cap = (2.0 / 3.0) * (1.0 + kRho) * log_h_cap * 1.05 + 2.0;
    ZMat payload;
    for (int i = 0; i <= 2; ++i) {
        ZVec e(3, mpz_class(0));
        e[i] = 1;
        payload.push_back(std::move(e));
    }
    for (double q = 2.0; q <= q_cap; q *= params.ladder_step) {
        LatticeBasis basis{embed_parametric_rows(zeta, 2, Side::dual, q, payload, bits), payload};
        lll_reduce(basis);
        payload = basis.payload;
        for (const auto& pv : basis.payload) consider(IntPolynomial(pv));
        // small combinations catch near-minimal quadratics the basis misses
        for (int c0 = -1; c0 <= 1; ++c0)
            for (int c1 = -1; c1 <= 1; ++c1)
                for (int c2 = -1; c2 <= 1; ++c2) {
                    if (!c0 && !c1 && !c2) continue;
                    ZVec pv(3, mpz_class(0));
                    for (int k = 0; k < 3; ++k)
                        pv[k] = c0 * basis.payload[0][k] + c1 * basis.payload[1][k] +
                                c2 * basis.payload[2][k];
                    consider(IntPolynomial(pv));
                }
    }

    if (hits.empty())
        throw Error(errc::empty_sequence,
                    "no quadratic detections: zeta is likely not extremal or the cap is too small");

    // cluster by height; keep the smallest |P(zeta)| per cluster
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.height != b.height) return a.height < b.height;
        if (a.log_err != b.log_err) return a.log_err < b.log_err;
        return a.poly.coeffs() < b.poly.coeffs();
    });
    QuadraticSequence seq;
    for (auto& h : hits) {
        if (!seq.entries.empty()) {
            const auto& last = seq.entries.back();
            if (h.log_height < last.log_height + std::log(params.cluster_factor)) {
                // same cluster: keep the better detection
                if (h.log_err < last.log_err) {
                    QuadraticEntry e;
                    e.poly = h.poly;
                    e.height = h.height;
                    e.log_height = h.log_height;
                    e.log_err = h.log_err;
                    e.log_deriv = log_abs_eval(h.poly.derivative(), zeta, 256);
                    e.exponent = -h.log_err / h.log_height;
                    seq.entries.back() = std::move(e);
                }
                continue;
            }
        }
        QuadraticEntry e;
        e.poly = h.poly;
        e.height = h.height;
        e.log_height = h.log_height;
        e.log_err = h.log_err;
        e.log_deriv = log_abs_eval(h.poly.derivative(), zeta, 256);
        e.exponent = -h.log_err / h.log_height;
        seq.entries.push_back(std::move(e));
    }
    // strictly increasing heights after cluster replacement
    std::vector<QuadraticEntry> mono;
    for (auto& e : seq.entries) {
        while (!mono.empty() && mono.back().height >= e.height) {
            if (mono.back().log_err <= e.log_err) break;
            mono.pop_back();
        }
        if (mono.empty() || mono.back().height < e.height) mono.push_back(std::move(e));
    }
    seq.entries = std::move(mono);
    if (seq.entries.empty())
        throw Error(errc::empty_sequence, "quadratic clustering yielded no entries");
    return seq;
}

std::vector<IntPolynomial> structured_family(const QuadraticSequence& quads,
                                             const BestApproxSequence& best, int n,
                                             double log_h_cap) {
    if (n < 2 || n > 4)
        throw Error(errc::invalid_spec, "structured families are defined for n in {2,3,4}",
                    {{"n", std::to_string(n)}});
    if (quads.size() < 3)
        throw Error(errc::insufficient_entries,
                    "structured families need at least 3 quadratic entries");
    std::vector<IntPolynomial> out;
    auto add = [&](const IntPolynomial& p) {
        if (p.is_zero() || p.degree() > n) return;
        if (p.log_height() > log_h_cap) return;
        out.push_back(p);
    };
    // monomials keep the profile full-rank at small q
    for (int i = 0; i <= n; ++i) add(IntPolynomial::monomial(i));

    const IntPolynomial t = IntPolynomial::monomial(1);
    if (n == 2) {
        for (const auto& e : best.entries) {
            add(e.poly);
            add(poly_mul(e.poly, t, 2).product);
        }
        for (const auto& p : quads.entries) add(p.poly);
        // products of nearby best-approximation polynomials
        for (size_t a = 0; a < best.entries.size(); ++a)
            for (size_t b = a; b < std::min(best.entries.size(), a + 3); ++b) {
                double lh = best.entries[a].log_height + best.entries[b].log_height;
                if (lh > log_h_cap + 1.5) continue;
                add(poly_mul(best.entries[a].poly, best.entries[b].poly, 2).product);
            }
    } else if (n == 3) {
        for (const auto& p : quads.entries) {
            add(p.poly);
            add(poly_mul(p.poly, t, 3).product);
            for (const auto& e : best.entries) {
                if (p.log_height + e.log_height > log_h_cap + 1.5) break;
                add(poly_mul(p.poly, e.poly, 3).product);
            }
        }
        for (const auto& e : best.entries) add(e.poly);
    } else {
        const IntPolynomial t2 = IntPolynomial::monomial(2);
        for (size_t k = 0; k < quads.entries.size(); ++k) {
            const auto& p = quads.entries[k];
            add(p.poly);
            add(poly_mul(p.poly, t, 4).product);
            add(poly_mul(p.poly, t2, 4).product);
            if (k >= 2)
                add(poly_mul(quads.entries[k - 1].poly, quads.entries[k - 2].poly, 4).product);
        }
    }
    return out;
}

} // namespace dioph

#include "dioph/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "dioph/error.hpp"

namespace dioph {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Primitive representative with a canonical sign: the simultaneous side
// fixes x >= 0, the dual side the leading coefficient; ties fall back to
// the highest nonzero coordinate.
void canonicalize(ZVec& v, Side side) {
    mpz_class g = 0;
    for (const auto& a : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g > 1)
        for (auto& a : v) a /= g;
    const mpz_class* pivot = nullptr;
    if (side == Side::simultaneous && v[0] != 0) pivot = &v[0];
    if (!pivot) {
        for (auto it = v.rbegin(); it != v.rend(); ++it)
            if (*it != 0) { pivot = &*it; break; }
    }
    if (pivot && *pivot < 0)
        for (auto& a : v) a = -a;
}

bool is_zero_vec(const ZVec& v) {
    for (const auto& a : v)
        if (a != 0) return false;
    return true;
}

std::string vec_key(const ZVec& v) {
    std::string s;
    for (const auto& a : v) {
        s += a.get_str(36);
        s += ',';
    }
    return s;
}

double log_mpz(const mpz_class& x) {
    if (x == 0) return kNegInf;
    return BigFloat::of_mpz(abs(x), 96, MPFR_RNDN).log_d(MPFR_RNDN);
}

// Canonical order: by payload, lexicographic; gives stable candidate ids.
void finalize(CandidateSet& set) {
    std::sort(set.items.begin(), set.items.end(), [](const Candidate& a, const Candidate& b) {
        if (a.payload.size() != b.payload.size()) return a.payload.size() < b.payload.size();
        for (size_t i = 0; i < a.payload.size(); ++i) {
            int c = cmp(a.payload[i], b.payload[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });
    for (size_t i = 0; i < set.items.size(); ++i) set.items[i].id = static_cast<int>(i);
}

} // namespace

const char* side_name(Side s) { return s == Side::dual ? "dual" : "simultaneous"; }

Side side_from_name(const std::string& name) {
    if (name == "dual") return Side::dual;
    if (name == "simultaneous" || name == "sim") return Side::simultaneous;
    throw Error(errc::invalid_config, "side must be 'dual' or 'simultaneous'", {{"side", name}});
}

double candidate_value(const Candidate& c, double q, Side side, int n) {
    if (side == Side::simultaneous)
        return std::max(c.log_height - q, c.log_error + q / n);
    return std::max(c.log_height - q / n, c.log_error + q);
}

std::string CandidateSet::cache_key(const std::string& bound_tag) const {
    std::ostringstream os;
    os << zeta_spec << '|' << n << '|' << side_name(side) << '|' << backend << '|' << bound_tag
       << '|' << precision_bits;
    return os.str();
}

double sim_log_error(const ZVec& payload, const Zeta& zeta, int n, mpfr_prec_t bits) {
    mpfr_prec_t b = bits;
    for (int esc = 0; esc <= 3; ++esc) {
        const auto& pows = zeta.power_enclosures(n, b);
        double lo_best = kNegInf, hi_best = kNegInf;
        for (int i = 1; i <= n; ++i) {
            Interval e = iv_abs(iv_add_z(iv_mul_z(pows[i - 1], payload[0], b), -payload[i], b));
            double lo = e.lo().is_zero() ? kNegInf : e.lo().log_d(MPFR_RNDD);
            double hi = e.hi().is_zero() ? kNegInf : e.hi().log_d(MPFR_RNDU);
            lo_best = std::max(lo_best, lo);
            hi_best = std::max(hi_best, hi);
        }
        if (std::isfinite(lo_best) && hi_best - lo_best <= 1e-9)
            return 0.5 * (lo_best + hi_best);
        b *= 2;
    }
    throw Error(errc::precision_exhausted, "simultaneous error term not certified");
}

namespace {

Candidate make_dual_candidate(ZVec payload, const Zeta& zeta, int n, mpfr_prec_t bits) {
    Candidate c;
    c.payload = std::move(payload);
    IntPolynomial p(c.payload);
    c.payload.resize(n + 1, mpz_class(0));
    c.log_height = log_mpz(p.height());
    c.log_error = log_abs_eval(p, zeta, bits);
    return c;
}

Candidate make_sim_candidate(ZVec payload, const Zeta& zeta, int n, mpfr_prec_t bits) {
    Candidate c;
    c.payload = std::move(payload);
    c.log_height = log_mpz(c.payload[0]);
    c.log_error = sim_log_error(c.payload, zeta, n, bits);
    return c;
}

// Keep, per exact height, candidates in order of increasing error until the
// kept prefix has full rank (and a little slack); this preserves every
// successive minimum of the full enumeration. Bounded at 256 entries per
// height so exhaustive scans stay in memory.
struct BucketPrune {
    size_t cap;
    explicit BucketPrune(int n) : cap(static_cast<size_t>(n) + 5) {}

    static constexpr size_t kMax = 256;
    std::vector<std::pair<double, ZVec>> kept;  // max-heap by error

    bool would_accept(double err) const {
        return kept.size() < kMax || err < kept.front().first;
    }

    void offer(double err, ZVec v) {
        if (kept.size() >= kMax) {
            if (err >= kept.front().first) return;
            std::pop_heap(kept.begin(), kept.end());
            kept.pop_back();
        }
        kept.emplace_back(err, std::move(v));
        std::push_heap(kept.begin(), kept.end());
    }

    std::vector<ZVec> finish(int n) {
        std::sort(kept.begin(), kept.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<ZVec> out;
        ZMat picked;
        for (auto& [err, v] : kept) {
            (void)err;
            out.push_back(v);
            picked.push_back(v);
            if (out.size() >= cap && rank_of(picked) == n + 1) break;
        }
        return out;
    }
};

} // namespace

std::shared_ptr<CandidateSet> candidates_simultaneous_brute(const Zeta& zeta, int n, long x_max,
                                                            int window, mpfr_prec_t bits) {
    if (x_max < 1) throw Error(errc::invalid_spec, "x_max must be >= 1");
    if (window < 1) throw Error(errc::invalid_spec, "window must be >= 1");
    auto set = std::make_shared<CandidateSet>();
    set->side = Side::simultaneous;
    set->n = n;
    set->zeta_spec = zeta.spec();
    set->backend = "brute";
    set->precision_bits = bits;

    std::vector<double> zpow(n + 1);
    const auto& pows = zeta.power_enclosures(n, std::max<mpfr_prec_t>(bits, 192));
    for (int i = 1; i <= n; ++i) zpow[i] = pows[i - 1].mid();

    std::set<std::string> seen;
    auto push = [&](ZVec v) {
        canonicalize(v, Side::simultaneous);
        if (is_zero_vec(v)) return;
        std::string key = vec_key(v);
        if (!seen.insert(key).second) return;
        set->items.push_back(make_sim_candidate(std::move(v), zeta, n, bits));
    };

    // x = 0: unit vectors
    for (int i = 1; i <= n; ++i) {
        ZVec v(n + 1, mpz_class(0));
        v[i] = 1;
        push(std::move(v));
    }

    for (long x = 1; x <= x_max; ++x) {
        BucketPrune bucket(n);
        std::vector<long> base(n + 1);
        for (int i = 1; i <= n; ++i) base[i] = std::lround(zpow[i] * static_cast<double>(x));
        std::vector<int> delta(n + 1, -window);
        // enumerate the +-window box around the nearest-integer vector
        while (true) {
            ZVec v(n + 1);
            v[0] = x;
            double err = 0.0;
            for (int i = 1; i <= n; ++i) {
                long y = base[i] + delta[i];
                v[i] = y;
                err = std::max(err, std::abs(zpow[i] * static_cast<double>(x) -
                                             static_cast<double>(y)));
            }
            bucket.offer(std::log(std::max(err, 1e-300)), std::move(v));
            int pos = 1;
            while (pos <= n && ++delta[pos] > window) delta[pos++] = -window;
            if (pos > n) break;
        }
        for (auto& v : bucket.finish(n)) push(std::move(v));
    }
    finalize(*set);
    return set;
}

std::shared_ptr<CandidateSet> candidates_dual_brute(const Zeta& zeta, int n, long h_max,
                                                    mpfr_prec_t bits) {
    if (h_max < 1) throw Error(errc::invalid_spec, "h_max must be >= 1");
    auto set = std::make_shared<CandidateSet>();
    set->side = Side::dual;
    set->n = n;
    set->zeta_spec = zeta.spec();
    set->backend = "brute";
    set->precision_bits = bits;

    std::vector<double> zpow(n + 1, 1.0);
    const auto& pows = zeta.power_enclosures(n, std::max<mpfr_prec_t>(bits, 192));
    for (int i = 1; i <= n; ++i) zpow[i] = pows[i - 1].mid();

    std::map<long, BucketPrune> buckets;
    std::vector<long> a(n + 1, 0);
    // canonical sign: highest-index nonzero coefficient positive
    std::function<void(int, bool)> rec = [&](int idx, bool lead_set) {
        if (idx < 0) {
            long h = 0;
            for (int i = 0; i <= n; ++i) h = std::max(h, std::labs(a[i]));
            if (h == 0 || h > h_max) return;
            long g = 0;
            for (int i = 0; i <= n; ++i) g = std::gcd(g, std::labs(a[i]));
            if (g > 1) return;  // keep primitive representatives only
            double val = 0.0;
            for (int i = n; i >= 0; --i) val = val * zpow[1] + static_cast<double>(a[i]);
            double err = std::log(std::max(std::abs(val), 1e-300));
            auto it = buckets.try_emplace(h, n).first;
            if (!it->second.would_accept(err)) return;
            ZVec v(n + 1);
            for (int i = 0; i <= n; ++i) v[i] = a[i];
            it->second.offer(err, std::move(v));
            return;
        }
        long lo = -h_max, hi = h_max;
        if (!lead_set) lo = 0;  // sign normalization on the leading coefficient
        for (long c = lo; c <= hi; ++c) {
            a[idx] = c;
            rec(idx - 1, lead_set || c != 0);
        }
        a[idx] = 0;
    };
    rec(n, false);

    std::set<std::string> seen;
    for (auto& [h, bucket] : buckets) {
        for (auto& v : bucket.finish(n)) {
            ZVec w = v;
            canonicalize(w, Side::dual);
            if (is_zero_vec(w)) continue;
            if (seen.insert(vec_key(w)).second)
                set->items.push_back(make_dual_candidate(std::move(w), zeta, n, bits));
        }
    }
    finalize(*set);
    return set;
}

ZMat embed_parametric_rows(const Zeta& zeta, int n, Side side, double q, const ZMat& payload,
                           mpfr_prec_t bits) {
    ZMat rows;
    mpfr_prec_t work = bits + 128;
    const auto& pows = zeta.power_enclosures(n, work);
    const double ln2 = std::log(2.0);
    // guard grows with q so the shrinking coordinate never rounds to zero
    const double guard_bits =
        64.0 + std::ceil(side == Side::dual ? q / (n * ln2) : q / ln2);

    auto scale_round = [&](const Interval& iv, double log_scale) {
        // round(exp(log_scale) * mid(iv)) computed in mpfr
        mpfr_t t, s;
        mpfr_init2(t, work);
        mpfr_init2(s, work);
        mpfr_set_d(s, log_scale, MPFR_RNDN);
        mpfr_exp(s, s, MPFR_RNDN);
        mpfr_add(t, iv.lo().raw(), iv.hi().raw(), MPFR_RNDN);
        mpfr_div_ui(t, t, 2, MPFR_RNDN);
        mpfr_mul(t, t, s, MPFR_RNDN);
        mpz_class out;
        mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        mpfr_clear(s);
        return out;
    };

    for (const auto& pv : payload) {
        ZVec row(n + 1, mpz_class(0));
        if (side == Side::dual) {
            // (K_err P(zeta), K_h a_1, ..., K_h a_n), K_err = 2^g e^q,
            // K_h = 2^g e^(-q/n); unit determinant up to the guard factor
            IntPolynomial p(pv);
            Interval val =
                p.is_zero() ? Interval::exact_long(0, work) : p.eval(zeta.enclosure(work), work);
            row[0] = scale_round(val, guard_bits * ln2 + q);
            mpz_class kh = scale_round(Interval::exact_long(1, work), guard_bits * ln2 - q / n);
            for (int i = 1; i <= n; ++i) row[i] = kh * pv[i];
        } else {
            // (K_x x, K_err (zeta^i x - y_i)), K_x = 2^g e^(-q), K_err = 2^g e^(q/n)
            mpz_class kx = scale_round(Interval::exact_long(1, work), guard_bits * ln2 - q);
            row[0] = kx * pv[0];
            for (int i = 1; i <= n; ++i) {
                Interval e = iv_add_z(iv_mul_z(pows[i - 1], pv[0], work), -pv[i], work);
                row[i] = scale_round(e, guard_bits * ln2 + q / n);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::shared_ptr<CandidateSet> candidates_reduced(const Zeta& zeta, int n, Side side, double q_max,
                                                 mpfr_prec_t bits, double rung_step) {
    auto set = std::make_shared<CandidateSet>();
    set->side = side;
    set->n = n;
    set->zeta_spec = zeta.spec();
    set->backend = "reduced";
    set->precision_bits = bits;

    std::set<std::string> seen;
    auto push = [&](ZVec v) {
        canonicalize(v, side);
        if (is_zero_vec(v)) return;
        if (!seen.insert(vec_key(v)).second) return;
        if (side == Side::dual)
            set->items.push_back(make_dual_candidate(std::move(v), zeta, n, bits));
        else
            set->items.push_back(make_sim_candidate(std::move(v), zeta, n, bits));
    };

    // Start from the standard generators; warm-start each rung with the
    // previous reduced payload so LLL does little work along the ladder.
    ZMat payload;
    for (int i = 0; i <= n; ++i) {
        ZVec e(n + 1, mpz_class(0));
        e[i] = 1;
        payload.push_back(std::move(e));
    }

    for (double q = rung_step; q <= q_max + 1e-9; q += rung_step) {
        LatticeBasis basis;
        basis.rows = embed_parametric_rows(zeta, n, side, q, payload, bits);
        basis.payload = payload;
        lll_reduce(basis);
        payload = basis.payload;

        for (const auto& pv : basis.payload) push(pv);

        // small integer combinations of the reduced basis, best few by norm
        std::vector<std::pair<double, ZVec>> combos;
        std::vector<int> coef(n + 1, -2);
        while (true) {
            bool all_zero = true;
            for (int c : coef)
                if (c != 0) all_zero = false;
            if (!all_zero) {
                ZVec emb(n + 1, mpz_class(0));
                ZVec pv(n + 1, mpz_class(0));
                for (int i = 0; i <= n; ++i) {
                    if (coef[i] == 0) continue;
                    for (int k = 0; k <= n; ++k) {
                        emb[k] += coef[i] * basis.rows[i][k];
                        pv[k] += coef[i] * basis.payload[i][k];
                    }
                }
                double norm = 0.0;
                for (int k = 0; k <= n; ++k) {
                    double d = std::abs(emb[k].get_d());
                    norm = std::max(norm, d);
                }
                combos.emplace_back(norm, std::move(pv));
            }
            int pos = 0;
            while (pos <= n && ++coef[pos] > 2) coef[pos++] = -2;
            if (pos > n) break;
        }
        std::sort(combos.begin(), combos.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        size_t keep = std::min<size_t>(combos.size(), 48);
        for (size_t i = 0; i < keep; ++i) push(std::move(combos[i].second));
    }
    finalize(*set);
    return set;
}

std::shared_ptr<CandidateSet> candidate_set_from_polys(const Zeta& zeta, int n,
                                                       const std::vector<IntPolynomial>& polys,
                                                       const std::string& backend,
                                                       mpfr_prec_t bits) {
    auto set = std::make_shared<CandidateSet>();
    set->side = Side::dual;
    set->n = n;
    set->zeta_spec = zeta.spec();
    set->backend = backend;
    set->precision_bits = bits;
    std::set<std::string> seen;
    for (const auto& p : polys) {
        if (p.is_zero() || p.degree() > n) continue;
        ZVec v(p.coeffs());
        v.resize(n + 1, mpz_class(0));
        canonicalize(v, Side::dual);
        if (!seen.insert(vec_key(v)).second) continue;
        set->items.push_back(make_dual_candidate(std::move(v), zeta, n, bits));
    }
    finalize(*set);
    return set;
}

std::shared_ptr<CandidateSet> candidates_structured(const Zeta& zeta, int n,
                                                    const QuadraticSequence& quads,
                                                    const BestApproxSequence& best,
                                                    double log_h_cap, mpfr_prec_t bits) {
    auto polys = structured_family(quads, best, n, log_h_cap);
    auto set = candidate_set_from_polys(zeta, n, polys, "structured", bits);
    return set;
}

std::shared_ptr<CandidateSet> merge_candidate_sets(
    const std::vector<std::shared_ptr<CandidateSet>>& sets) {
    if (sets.empty()) throw Error(errc::invalid_spec, "no candidate sets to merge");
    auto out = std::make_shared<CandidateSet>(*sets[0]);
    std::string backend = sets[0]->backend;
    std::set<std::string> seen;
    for (const auto& c : out->items) seen.insert(vec_key(c.payload));
    for (size_t i = 1; i < sets.size(); ++i) {
        const auto& s = *sets[i];
        if (s.side != out->side || s.n != out->n || s.zeta_spec != out->zeta_spec)
            throw Error(errc::grid_mismatch, "cannot merge candidate sets with different keys");
        backend += "+" + s.backend;
        for (const auto& c : s.items)
            if (seen.insert(vec_key(c.payload)).second) out->items.push_back(c);
    }
    out->backend = backend;
    finalize(*out);
    return out;
}

} // namespace dioph

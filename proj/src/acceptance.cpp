#include "dioph/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "dioph/cubic.hpp"
#include "dioph/error.hpp"
#include "dioph/exponents.hpp"
#include "dioph/io.hpp"
#include "dioph/segments.hpp"
#include "dioph/sequences.hpp"

namespace dioph {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(double v) { return format_double(v); }

// Lazily built shared state for the whole suite.
struct Ctx {
    AcceptanceConfig cfg;
    std::shared_ptr<Zeta> zeta;
    std::optional<QuadraticSequence> quads;
    std::optional<BestApproxSequence> best;
    std::optional<CandidateCache> cache;

    std::map<std::string, MinimaProfile> profiles;
    std::set<std::string> partial_profiles;  // one-sided witness families
    std::map<std::string, ExponentReport> reports;

    double dual_cap(int n, double q_max) const {
        return q_max * (1.0 / n + (n == 2 ? 0.30 : 0.20)) + 4.0;
    }

    const Zeta& zeta_ref() {
        if (!zeta) zeta = zeta_from_spec(cfg.zeta_spec, cfg.precision_bits);
        return *zeta;
    }

    const QuadraticSequence& quads_ref() {
        if (!quads) {
            double cap = std::max({dual_cap(2, cfg.q_max_n2), dual_cap(3, cfg.q_max_n3),
                                   dual_cap(4, cfg.q_max_n4)});
            quads = extract_quadratic_sequence(zeta_ref(), cap, cfg.precision_bits);
        }
        return *quads;
    }

    const BestApproxSequence& best_ref() {
        if (!best) {
            double cap = std::max({dual_cap(2, cfg.q_max_n2), dual_cap(3, cfg.q_max_n3),
                                   dual_cap(4, cfg.q_max_n4)});
            mpz_class h_max;
            mpfr_t t;
            mpfr_init2(t, 96);
            mpfr_set_d(t, cap, MPFR_RNDN);
            mpfr_exp(t, t, MPFR_RNDN);
            mpfr_get_z(h_max.get_mpz_t(), t, MPFR_RNDD);
            mpfr_clear(t);
            best = best_approx_polys(zeta_ref(), h_max, cfg.precision_bits);
        }
        return *best;
    }

    std::shared_ptr<CandidateSet> cached_or(const std::string& key,
                                            const std::function<std::shared_ptr<CandidateSet>()>& gen) {
        if (!cache && !cfg.cache_dir.empty()) cache.emplace(cfg.cache_dir);
        if (cache) {
            if (auto hit = cache->load(key)) return hit;
        }
        auto set = gen();
        if (cache) cache->store(key, *set);
        return set;
    }

    const MinimaProfile& dual_profile(int n, double q_max, bool structured_only = false,
                                      const std::string& suffix = "") {
        std::string name = "dual" + std::to_string(n) + (structured_only ? "s" : "") + suffix;
        auto it = profiles.find(name);
        if (it != profiles.end()) return it->second;
        double cap = dual_cap(n, q_max);
        std::ostringstream bounds;
        bounds << "qmax=" << q_max << ";cap=" << cap << ";rung=" << cfg.rung_step;
        auto structured = candidates_structured(zeta_ref(), n, quads_ref(), best_ref(), cap,
                                                cfg.precision_bits);
        std::shared_ptr<CandidateSet> set = structured;
        if (!structured_only) {
            auto key = structured->cache_key(bounds.str()) + "|reduced-union";
            set = cached_or(key, [&] {
                auto reduced = candidates_reduced(zeta_ref(), n, Side::dual, q_max,
                                                  cfg.precision_bits, cfg.rung_step);
                return merge_candidate_sets({structured, reduced});
            });
        }
        auto grid = make_grid(cfg.grid_step, q_max, cfg.grid_step);
        auto prof = profile(set, grid);
        if (structured_only) partial_profiles.insert(name);
        return profiles.emplace(name, std::move(prof)).first->second;
    }

    const MinimaProfile& sim_profile(int n, double q_max) {
        std::string name = "sim" + std::to_string(n);
        auto it = profiles.find(name);
        if (it != profiles.end()) return it->second;
        std::ostringstream bounds;
        bounds << "qmax=" << q_max << ";rung=" << cfg.rung_step;
        auto set = cached_or("sim|" + std::to_string(n) + "|" + bounds.str() + "|" + cfg.zeta_spec,
                             [&] {
                                 return candidates_reduced(zeta_ref(), n, Side::simultaneous,
                                                           q_max, cfg.precision_bits,
                                                           cfg.rung_step);
                             });
        auto grid = make_grid(cfg.grid_step, q_max, cfg.grid_step);
        auto prof = profile(set, grid);
        return profiles.emplace(name, std::move(prof)).first->second;
    }

    const ExponentReport& report(int n, double q_max) {
        std::string name = "rep" + std::to_string(n);
        auto it = reports.find(name);
        if (it != reports.end()) return it->second;
        auto rep = make_report(sim_profile(n, q_max), dual_profile(n, q_max));
        return reports.emplace(name, std::move(rep)).first->second;
    }
};

struct Checker {
    std::vector<std::pair<std::string, bool>> checks;
    std::ostringstream detail;

    void expect_range(const std::string& what, double value, double target, double tol) {
        bool ok = std::abs(value - target) <= tol;
        checks.emplace_back(what, ok);
        detail << what << "=" << fmt(value) << " (target " << fmt(target) << " +- " << fmt(tol)
               << (ok ? ", ok) " : ", FAIL) ");
    }

    void expect_ge(const std::string& what, double value, double bound) {
        bool ok = value >= bound;
        checks.emplace_back(what, ok);
        detail << what << "=" << fmt(value) << " (>= " << fmt(bound)
               << (ok ? ", ok) " : ", FAIL) ");
    }

    void expect_le(const std::string& what, double value, double bound) {
        bool ok = value <= bound;
        checks.emplace_back(what, ok);
        detail << what << "=" << fmt(value) << " (<= " << fmt(bound)
               << (ok ? ", ok) " : ", FAIL) ");
    }

    void expect_true(const std::string& what, bool ok) {
        checks.emplace_back(what, ok);
        detail << what << (ok ? " ok " : " FAIL ");
    }

    bool all() const {
        for (auto& [w, ok] : checks)
            if (!ok) return false;
        return true;
    }
};

CriterionResult criterion_n2(Ctx& ctx) {
    auto t0 = clock_type::now();
    Checker ch;
    const auto& rep = ctx.report(2, ctx.cfg.q_max_n2);
    ch.expect_range("w2", rep.w[0].value, consts::rho(), 0.1);
    ch.expect_range("w2_hat", rep.w_hat[0].value, consts::tau(), 0.1);
    ch.expect_range("lambda2", rep.lambda[0].value, 1.0, 0.05);
    ch.expect_range("lambda2_hat", rep.lambda_hat[0].value, consts::gamma(), 0.05);
    double secs = seconds_since(t0);
    ch.expect_le("runtime_s", secs, 300.0);
    return {"C1 n=2 baseline", ch.all(), secs, ch.detail.str()};
}

CriterionResult criterion_n3(Ctx& ctx) {
    auto t0 = clock_type::now();
    Checker ch;
    const auto& rep = ctx.report(3, ctx.cfg.q_max_n3);
    ch.expect_range("w3", rep.w[0].value, consts::rho(), 0.15);
    ch.expect_range("lambda3", rep.lambda[0].value, 1.0 / consts::sqrt5(), 0.03);
    ch.expect_range("w3_hat", rep.w_hat[0].value, 3.0, 0.1);
    ch.expect_range("lambda3_hat", rep.lambda_hat[0].value, 1.0 / 3.0, 0.02);
    double secs = seconds_since(t0);
    ch.expect_le("runtime_s", secs, 900.0);
    return {"C2 theorem n=3", ch.all(), secs, ch.detail.str()};
}

CriterionResult criterion_graph(Ctx& ctx) {
    auto t0 = clock_type::now();
    Checker ch;
    // the criterion states no q cap; q = 100 puts the last three pairs
    // beyond the early generations whose constants have not settled
    const auto& prof = ctx.dual_profile(3, 100.0, false, "seg");
    auto rep = segment(prof);
    size_t pairs = rep.pairs();
    size_t from = pairs > 3 ? pairs - 3 : 0;
    double psi_target = (1.0 - consts::sqrt5()) / (3.0 * (3.0 + consts::sqrt5()));
    for (size_t k = from; k < pairs; ++k) {
        double len_i = rep.b_mins[k] - rep.q_joints[k];
        double len_j = rep.q_joints[k + 1] - rep.b_mins[k];
        ch.expect_range("I/J-k" + std::to_string(k), len_i / len_j, 1.0, 0.1);
        ch.expect_range("q-ratio-k" + std::to_string(k), rep.q_joints[k + 1] / rep.q_joints[k],
                        consts::nu(), 0.08);
        ch.expect_range("psi1(b)-k" + std::to_string(k), rep.b_values[k] / rep.b_mins[k],
                        psi_target, 0.01);
        for (int lvl = 1; lvl <= 4; ++lvl) {
            double target = (lvl <= 2) ? -1.0 / 3.0 : 1.0 / 3.0;
            ch.expect_range("slopeI-L" + std::to_string(lvl) + "-k" + std::to_string(k),
                            rep.interval_I[k].slopes[lvl - 1], target, 0.05);
            ch.expect_range("slopeJ-L" + std::to_string(lvl) + "-k" + std::to_string(k),
                            rep.interval_J[k].slopes[lvl - 1], -target, 0.05);
        }
    }
    return {"C3 combined graph n=3", ch.all(), seconds_since(t0), ch.detail.str()};
}

CriterionResult criterion_dasreh(Ctx& ctx) {
    auto t0 = clock_type::now();
    Checker ch;
    const auto& rep = ctx.report(3, ctx.cfg.q_max_n3);
    for (int j = 3; j <= 4; ++j) {
        ch.expect_range("w3_hat_j" + std::to_string(j), rep.w_hat[j - 1].value, consts::sqrt5(),
                        0.1);
        ch.expect_range("lambda3_hat_j" + std::to_string(j), rep.lambda_hat[j - 1].value,
                        1.0 / consts::rho(), 0.02);
        ch.expect_range("w3_j" + std::to_string(j), rep.w[j - 1].value, 3.0, 0.15);
        ch.expect_range("lambda3_j" + std::to_string(j), rep.lambda[j - 1].value, 1.0 / 3.0,
                        0.03);
    }
    return {"C4 higher minima n=3", ch.all(), seconds_since(t0), ch.detail.str()};
}

CriterionResult criterion_n4(Ctx& ctx) {
    auto t0 = clock_type::now();
    Checker ch;
    // w_{4,4} from the structured families alone
    const auto& dual_s = ctx.dual_profile(4, ctx.cfg.q_max_n4, /*structured_only=*/true);
    auto ex = estimate_extrema(dual_s);
    if (ex.lower[3].valid)
        ch.expect_ge("w44_structured", psi_to_exponent(ex.lower[3].value, 4, Side::dual),
                     consts::rho() - 0.15);
    else
        ch.expect_true("w44_structured_valid", false);
    const auto& rep = ctx.report(4, ctx.cfg.q_max_n4);
    ch.expect_ge("lambda4", rep.lambda[0].value, consts::gamma() / 2.0 - 0.03);

    auto records = best_sim_sequence(ctx.zeta_ref(), 4, ctx.cfg.sim_x_max);
    std::vector<double> lx, le;
    for (const auto& r : records) {
        if (r.x < 50) continue;
        lx.push_back(std::log(static_cast<double>(r.x)));
        le.push_back(std::log(r.max_dist));
    }
    double fitted = least_squares_slope(lx, le);
    ch.expect_range("sim_error_exponent", fitted, -consts::gamma() / 2.0, 0.04);

    // Growth of the x_k of the good-approximation sequence: one per
    // generation of the polynomial families, read off as the first-minimum
    // witness of the simultaneous profile at the q where the generation
    // bottoms out on the dual side. Single-period ratios carry O(1) phase
    // constants; the geometric mean over the observed periods cancels them.
    const auto& sim = ctx.sim_profile(4, ctx.cfg.q_max_n4);
    const auto& gen_minima = ex.lower[3].points;
    std::vector<double> chain_logx;
    std::vector<mpz_class> chain_x;
    for (const auto& g : gen_minima) {
        auto snap = minima_at(*sim.cands, g.q);
        if (snap.witness_ids.empty()) continue;
        const auto& w = sim.cands->items[snap.witness_ids[0]];
        if (w.payload[0] <= 1) continue;
        if (!chain_x.empty() && w.payload[0] <= chain_x.back()) continue;
        chain_x.push_back(w.payload[0]);
        chain_logx.push_back(w.log_height);
    }
    // chain members within the brute range must be records of the scan
    bool members_are_records = true;
    for (const auto& x : chain_x) {
        if (x > ctx.cfg.sim_x_max) continue;
        bool found = false;
        for (const auto& r : records) found = found || (x == r.x);
        members_are_records = members_are_records && found;
    }
    ch.expect_true("bound_witnesses_are_records", members_are_records);
    size_t steps = chain_logx.size() >= 2 ? chain_logx.size() - 1 : 0;
    if (steps == 0) {
        ch.expect_true("record_growth_measurable", false);
    } else {
        double growth = std::pow(chain_logx.back() / chain_logx.front(), 1.0 / steps);
        ch.expect_range("record_growth", growth, consts::nu(), 0.15);
    }
    return {"C5 n=4 bounds", ch.all(), seconds_since(t0), ch.detail.str()};
}

CriterionResult criterion_cubic(Ctx& ctx) {
    auto t0 = clock_type::now();
    Checker ch;
    // the exponents settle like 3 - O(1)/log X, so the witnesses come from
    // generations with budgets beyond e^20
    auto deep_quads = extract_quadratic_sequence(ctx.zeta_ref(), 150.0, ctx.cfg.precision_bits);
    mpz_class e56;
    {
        mpfr_t t;
        mpfr_init2(t, 96);
        mpfr_set_d(t, 60.0, MPFR_RNDN);
        mpfr_exp(t, t, MPFR_RNDN);
        mpfr_get_z(e56.get_mpz_t(), t, MPFR_RNDD);
        mpfr_clear(t);
    }
    auto deep_best = best_approx_polys(ctx.zeta_ref(), e56, ctx.cfg.precision_bits);
    auto witnesses = cubic_experiment(ctx.zeta_ref(), deep_quads, deep_best,
                                      ctx.cfg.cubic_generations, ctx.cfg.precision_bits);
    ch.expect_ge("generations", static_cast<double>(witnesses.size()), 5.0);
    for (const auto& w : witnesses) {
        std::string tag = "k" + std::to_string(w.k);
        ch.expect_range("exp_poly_" + tag, w.exponent_poly, 3.0, 0.2);
        if (w.alpha) ch.expect_range("exp_root_" + tag, w.exponent_root, 4.0, 0.3);
        else ch.expect_true("root_found_" + tag, false);
    }
    // stability of the nonexistence list: the scan at twice the bound must
    // add nothing above it (finiteness of eq. trio at this margin)
    auto list = cubic_nonexistence_scan(ctx.zeta_ref(), ctx.cfg.cubic_scan_h,
                                        ctx.cfg.cubic_scan_eps, ctx.cfg.precision_bits);
    auto doubled = cubic_nonexistence_scan(ctx.zeta_ref(), 2 * ctx.cfg.cubic_scan_h,
                                           ctx.cfg.cubic_scan_eps, ctx.cfg.precision_bits);
    ch.detail << "scan_members=" << list.size() << " ";
    bool stable = doubled.size() == list.size();
    for (size_t i = 0; stable && i < list.size(); ++i) stable = doubled[i] == list[i];
    ch.expect_true("scan_stable", stable);
    return {"C6 cubic experiments", ch.all(), seconds_since(t0), ch.detail.str()};
}

CriterionResult criterion_properties(Ctx& ctx) {
    auto t0 = clock_type::now();
    Checker ch;

    // make sure the standard profiles and reports exist
    ctx.report(2, ctx.cfg.q_max_n2);
    ctx.report(3, ctx.cfg.q_max_n3);
    ctx.report(4, ctx.cfg.q_max_n4);

    // Minkowski sums trend-free on every profile that claims completeness
    // (one-sided witness families are excluded: the trend is exactly how
    // incompleteness shows up)
    for (const auto& [name, prof] : ctx.profiles) {
        if (ctx.partial_profiles.count(name)) continue;
        auto st = minkowski_stats(prof);
        ch.expect_le("mink_trend_" + name, std::abs(st.trend_slope), 0.01);
        ch.detail << "mink_max_" << name << "=" << fmt(st.max_abs_sum) << " ";
    }

    // Mahler duality on the n=3 pair
    {
        const auto& sim = ctx.sim_profile(3, ctx.cfg.q_max_n3);
        const auto& dual = ctx.dual_profile(3, ctx.cfg.q_max_n3);
        auto res = duality_residuals(sim, dual);
        for (const auto& r : res) {
            ch.expect_le("mahler_trend_j" + std::to_string(r.level), std::abs(r.trend_slope),
                         0.01);
            ch.detail << "mahler_max_j" << r.level << "=" << fmt(r.max_abs_residual) << " ";
        }
        auto ex_sim = estimate_extrema(sim);
        auto ex_dual = estimate_extrema(dual);
        if (ex_sim.lower[0].valid && ex_dual.upper[3].valid)
            ch.expect_range("jaja", ex_sim.lower[0].value + ex_dual.upper[3].value, 0.0, 0.01);
    }

    // brute-vs-reduced oracle equivalence on small dual profiles, over the
    // q range where H <= 30 candidates are provably complete
    for (int n = 2; n <= 3; ++n) {
        double q_hi = (n == 2) ? 3.2 : 6.0;
        auto grid = make_grid(0.25, q_hi, 0.25);
        auto brute = candidates_dual_brute(ctx.zeta_ref(), n, 30, ctx.cfg.precision_bits);
        auto brute_prof = profile(brute, grid);
        auto reduced = candidates_reduced(ctx.zeta_ref(), n, Side::dual, q_hi,
                                          ctx.cfg.precision_bits, 0.25);
        auto red_prof = profile(reduced, grid);
        double max_gap = 0.0, min_gap = 0.0;
        for (int j = 0; j <= n; ++j)
            for (size_t i = 0; i < grid.size(); ++i) {
                double d = red_prof.values[j][i] - brute_prof.values[j][i];
                max_gap = std::max(max_gap, d);
                min_gap = std::min(min_gap, d);
            }
        ch.expect_le("oracle_overshoot_n" + std::to_string(n), max_gap, 1.5);
        ch.expect_ge("oracle_soundness_n" + std::to_string(n), min_gap, -1e-6);
    }

    // conversion round trips
    {
        double worst = 0.0;
        for (int n = 1; n <= 4; ++n)
            for (double psi_v : {-0.9 / n, -0.2 / n, 0.0, 0.3 / n, 0.9 / n}) {
                double l = psi_to_exponent(psi_v, n, Side::simultaneous);
                worst = std::max(worst,
                                 std::abs(exponent_to_psi(l, n, Side::simultaneous) - psi_v));
                double w = psi_to_exponent(psi_v + (psi_v <= -1.0 / n + 0.01 ? 0.05 : 0.0), n,
                                           Side::dual);
                worst = std::max(worst, std::abs(exponent_to_psi(w, n, Side::dual) -
                                                 (psi_v + (psi_v <= -1.0 / n + 0.01 ? 0.05 : 0.0))));
            }
        ch.expect_le("roundtrip", worst, 1e-12);
    }

    // technisch slope inequality on (P_k, E_l) pairs
    {
        int pairs = 0, ok = 0;
        const auto& quads = ctx.quads_ref();
        const auto& best = ctx.best_ref();
        for (const auto& pk : quads.entries) {
            if (pk.log_height < 3.0) continue;
            for (const auto& el : best.entries) {
                if (el.log_height < 7.0) continue;
                if (pairs >= 40) break;
                auto sc = technisch_slope(pk.poly, el.poly, ctx.zeta_ref(),
                                          ctx.cfg.precision_bits);
                ++pairs;
                if (sc.ok) ++ok;
            }
            if (pairs >= 40) break;
        }
        ch.expect_ge("technisch_pairs", pairs, 20);
        ch.expect_true("technisch_all_ok", pairs > 0 && ok == pairs);
        ch.detail << "technisch=" << ok << "/" << pairs << " ";
    }

    // Gelfond window on random products
    {
        std::mt19937_64 rng(20260811);
        std::uniform_int_distribution<long> coef(-1000000, 1000000);
        std::uniform_int_distribution<int> deg(0, 4);
        bool all_ok = true;
        for (int t = 0; t < 1000; ++t) {
            int dp = deg(rng), dq = deg(rng);
            std::vector<mpz_class> pc(dp + 1), qc(dq + 1);
            for (auto& c : pc) c = coef(rng);
            for (auto& c : qc) c = coef(rng);
            if (pc.back() == 0) pc.back() = 1;
            if (qc.back() == 0) qc.back() = 1;
            IntPolynomial p(pc), q(qc);
            if (p.is_zero() || q.is_zero()) continue;
            auto mr = poly_mul(p, q, 8);
            int d = p.degree() + q.degree();
            mpq_class lo(1);
            lo /= (mpz_class(1) << d);
            mpq_class hi(d + 1);
            if (mr.gelfond_ratio < lo || mr.gelfond_ratio > hi) all_ok = false;
        }
        ch.expect_true("gelfond_window", all_ok);
    }

    // transference tables; for n = 4 the uniform exponents must sit at the
    // Dirichlet values predicted for a tight Khintchine bound
    for (int n = 2; n <= 4; ++n) {
        double q_max = n == 2 ? ctx.cfg.q_max_n2 : (n == 3 ? ctx.cfg.q_max_n3 : ctx.cfg.q_max_n4);
        const auto& rep = ctx.report(n, q_max);
        auto res = transference_check(rep);
        ch.expect_true("transference_n" + std::to_string(n), res.all_ok);
        if (n == 4) {
            ch.detail << "khintchine_tight_n4=" << (res.khintchine_equality ? 1 : 0) << " ";
            if (res.deckel_checked) ch.expect_true("deckel_n4", res.deckel_ok);
            ch.expect_range("w4_hat", rep.w_hat[0].value, 4.0, 0.05);
            ch.expect_range("lambda4_hat", rep.lambda_hat[0].value, 0.25, 0.02);
        }
    }

    // Dirichlet floors and j-monotonicity of the estimated exponent tables
    for (int n = 2; n <= 4; ++n) {
        double q_max = n == 2 ? ctx.cfg.q_max_n2 : (n == 3 ? ctx.cfg.q_max_n3 : ctx.cfg.q_max_n4);
        const auto& rep = ctx.report(n, q_max);
        std::string tag = "_n" + std::to_string(n);
        ch.expect_ge("dirichlet_w_hat" + tag, rep.w_hat[0].value, n - 0.05);
        ch.expect_ge("dirichlet_lambda_hat" + tag, rep.lambda_hat[0].value, 1.0 / n - 0.02);
        ch.expect_ge("ordering_w" + tag, rep.w[0].value, rep.w_hat[0].value - 0.05);
        ch.expect_ge("ordering_lambda" + tag, rep.lambda[0].value,
                     rep.lambda_hat[0].value - 0.02);
        bool mono = true;
        for (int j = 1; j <= n; ++j) {
            if (rep.lambda[j].valid && rep.lambda[j - 1].valid)
                mono = mono && rep.lambda[j].value <= rep.lambda[j - 1].value + 0.05;
            if (rep.w[j].valid && rep.w[j - 1].valid)
                mono = mono && rep.w[j].value <= rep.w[j - 1].value + 0.05;
        }
        ch.expect_true("monotone_levels" + tag, mono);
    }

    // parametric identity at the latest dual minima (n=3, levels 1 and 2)
    for (int level = 1; level <= 2; ++level) {
        auto res = parametric_identity_residuals(ctx.dual_profile(3, ctx.cfg.q_max_n3), level, 3);
        for (double r : res)
            ch.expect_le("parametric_identity_j" + std::to_string(level), r, 0.05);
    }

    return {"C7 property suites", ch.all(), seconds_since(t0), ch.detail.str()};
}

} // namespace

std::pair<MinimaProfile, int> simultaneous_brute_profile_auto(const Zeta& zeta, int n, long x_max,
                                                              const std::vector<double>& grid,
                                                              mpfr_prec_t bits, int max_window,
                                                              double trend_tol) {
    for (int w = 2; w <= max_window; ++w) {
        auto cands = candidates_simultaneous_brute(zeta, n, x_max, w, bits);
        auto prof = profile(cands, grid);
        if (std::abs(minkowski_stats(prof).trend_slope) <= trend_tol || w == max_window)
            return {std::move(prof), w};
    }
    throw Error(errc::insufficient_candidates, "window widening failed");
}

std::vector<CriterionResult> run_acceptance(const std::string& suite, const AcceptanceConfig& cfg,
                                            std::ostream& log) {
    Ctx ctx;
    ctx.cfg = cfg;
    std::vector<CriterionResult> results;
    auto want = [&](const std::string& s) { return suite == "all" || suite == s; };

    auto run = [&](const char* name, CriterionResult (*fn)(Ctx&)) {
        CriterionResult r;
        try {
            r = fn(ctx);
        } catch (const std::exception& e) {
            r.id = name;
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (r.id.empty()) r.id = name;
        log << (r.pass ? "PASS " : "FAIL ") << r.id << "  [" << fmt(r.seconds) << "s]  "
            << r.detail << "\n";
        results.push_back(std::move(r));
    };

    if (want("paper-n2")) run("C1 n=2 baseline", criterion_n2);
    if (want("paper-n3")) {
        run("C2 theorem n=3", criterion_n3);
        run("C3 combined graph n=3", criterion_graph);
        run("C4 higher minima n=3", criterion_dasreh);
    }
    if (want("paper-n4")) run("C5 n=4 bounds", criterion_n4);
    if (want("cubic")) run("C6 cubic experiments", criterion_cubic);
    if (want("properties")) run("C7 property suites", criterion_properties);

    int passed = 0;
    for (auto& r : results) passed += r.pass ? 1 : 0;
    log << passed << "/" << results.size() << " criteria passed\n";
    return results;
}

} // namespace dioph

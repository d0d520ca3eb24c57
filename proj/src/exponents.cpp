#include "dioph/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "dioph/error.hpp"

namespace dioph {

namespace consts {

double sqrt5() { return 2.23606797749978969640917366873; }
double rho() { return 2.0 + sqrt5(); }
double tau() { return (3.0 + sqrt5()) / 2.0; }
double nu() { return (1.0 + sqrt5()) / 2.0; }
double gamma() { return (sqrt5() - 1.0) / 2.0; }

Interval sqrt5_interval(mpfr_prec_t bits) {
    return Interval(BigFloat::sqrt_ui(5, bits, MPFR_RNDD), BigFloat::sqrt_ui(5, bits, MPFR_RNDU));
}

} // namespace consts

double psi_to_exponent(double psi, int n, Side side) {
    double ratio = (n + 1.0) / n;
    if (side == Side::simultaneous) {
        if (!(psi > -1.0) || psi > 1.0 / n + 1e-9)
            throw Error(errc::psi_out_of_domain, "simultaneous psi must lie in (-1, 1/n]",
                        {{"psi", std::to_string(psi)}});
        return ratio / (1.0 + psi) - 1.0;
    }
    if (!(psi > -1.0 / n) || psi > 1.0 + 1e-9)
        throw Error(errc::psi_out_of_domain, "dual psi must lie in (-1/n, 1]",
                    {{"psi", std::to_string(psi)}});
    return ratio / (1.0 / n + psi) - 1.0;
}

double exponent_to_psi(double exponent, int n, Side side) {
    double ratio = (n + 1.0) / n;
    if (exponent <= -1.0)
        throw Error(errc::psi_out_of_domain, "exponent must exceed -1");
    if (side == Side::simultaneous) return ratio / (1.0 + exponent) - 1.0;
    return ratio / (1.0 + exponent) - 1.0 / n;
}

namespace {

struct RawExtremum {
    size_t idx;
    bool minimum;
};

// Strict local extrema of psi_j on the grid, plateau runs collapsed.
std::vector<RawExtremum> grid_extrema(const MinimaProfile& prof, int level) {
    std::vector<RawExtremum> out;
    const auto& v = prof.values[level - 1];
    size_t m = prof.points();
    std::vector<double> psi_v(m);
    for (size_t i = 0; i < m; ++i) psi_v[i] = v[i] / prof.grid[i];
    for (size_t i = 1; i + 1 < m; ++i) {
        bool is_min = psi_v[i] <= psi_v[i - 1] && psi_v[i] <= psi_v[i + 1] &&
                      (psi_v[i] < psi_v[i - 1] || psi_v[i] < psi_v[i + 1]);
        bool is_max = psi_v[i] >= psi_v[i - 1] && psi_v[i] >= psi_v[i + 1] &&
                      (psi_v[i] > psi_v[i - 1] || psi_v[i] > psi_v[i + 1]);
        if (!is_min && !is_max) continue;
        if (!out.empty() && out.back().minimum == is_min &&
            prof.grid[i] - prof.grid[out.back().idx] < 0.5) {
            // same oscillation: keep the more extreme one
            double a = psi_v[out.back().idx], b = psi_v[i];
            if (is_min ? (b < a) : (b > a)) out.back().idx = i;
            continue;
        }
        out.push_back({i, is_min});
    }
    return out;
}

// Prune low-prominence wiggles: on the alternating extrema sequence,
// repeatedly delete the adjacent (min, max) pair of smallest contrast until
// every swing is at least `prom`.
std::vector<RawExtremum> prune_extrema(const MinimaProfile& prof, int level,
                                       std::vector<RawExtremum> seq, double prom) {
    const auto& v = prof.values[level - 1];
    // enforce alternation first: among same-type runs keep the most extreme
    std::vector<RawExtremum> alt;
    for (const auto& e : seq) {
        if (!alt.empty() && alt.back().minimum == e.minimum) {
            double a = v[alt.back().idx], b = v[e.idx];
            if (e.minimum ? (b < a) : (b > a)) alt.back().idx = e.idx;
            continue;
        }
        alt.push_back(e);
    }
    bool changed = true;
    while (changed && alt.size() >= 2) {
        changed = false;
        size_t best = alt.size();
        double best_gap = prom;
        for (size_t i = 0; i + 1 < alt.size(); ++i) {
            double gap = std::abs(v[alt[i].idx] - v[alt[i + 1].idx]);
            if (gap < best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < alt.size()) {
            alt.erase(alt.begin() + best, alt.begin() + best + 2);
            changed = true;
        }
    }
    return alt;
}

ExtremumEstimate estimate_one(const MinimaProfile& prof, int level, bool minimum,
                              double prominence) {
    ExtremumEstimate est;
    auto raw = prune_extrema(prof, level, grid_extrema(prof, level), prominence);
    std::vector<RefinedPoint> pts;
    for (const auto& r : raw) {
        if (r.minimum != minimum) continue;
        RefinedPoint p = refine_extremum(prof, level, r.idx, minimum);
        if (!pts.empty() && std::abs(p.q - pts.back().q) < 1e-9) continue;
        pts.push_back(p);
    }
    if (pts.empty()) return est;
    // per-period dominance: the structural extrema repeat with q ratio nu,
    // so an extremum beaten (in psi) by a neighbor within a factor 1.5 in q
    // is a sawtooth tooth of the product ladder, not a period extremum
    {
        std::vector<RefinedPoint> dominant;
        for (const auto& p : pts) {
            bool beaten = false;
            double psi_p = p.value / p.q;
            for (const auto& o : pts) {
                if (&o == &p) continue;
                if (o.q < p.q / 1.5 || o.q > p.q * 1.5) continue;
                double psi_o = o.value / o.q;
                if (minimum ? (psi_o < psi_p - 1e-9) : (psi_o > psi_p + 1e-9)) {
                    beaten = true;
                    break;
                }
            }
            if (!beaten) dominant.push_back(p);
        }
        pts = std::move(dominant);
    }
    if (pts.empty()) return est;
    // the last three oscillation periods carry the estimate
    if (pts.size() > 4) pts.erase(pts.begin(), pts.end() - 4);
    est.points = pts;
    est.raw_last = pts.back().value / pts.back().q;
    size_t m = pts.size();
    if (m == 1) {
        est.value = est.raw_last;
        est.uncertainty = 0.5;  // single oscillation: no slope information
        est.valid = true;
        return est;
    }
    // two-period (same-phase) slopes cancel the alternating vertex offsets
    std::vector<double> estimators;
    if (m >= 3)
        estimators.push_back((pts[m - 1].value - pts[m - 3].value) /
                             (pts[m - 1].q - pts[m - 3].q));
    if (m >= 4)
        estimators.push_back((pts[m - 2].value - pts[m - 4].value) /
                             (pts[m - 2].q - pts[m - 4].q));
    std::vector<double> xs, ys;
    for (const auto& p : pts) {
        xs.push_back(p.q);
        ys.push_back(p.value);
    }
    double ls = least_squares_slope(xs, ys);
    if (estimators.empty()) estimators.push_back(ls);
    double value = 0;
    for (double s : estimators) value += s;
    value /= estimators.size();
    double spread = std::abs(ls - value);
    for (double s : estimators) spread = std::max(spread, std::abs(s - value));
    est.value = value;
    est.uncertainty = spread + 1e-4;
    est.valid = true;
    return est;
}

} // namespace

ProfileExtrema estimate_extrema(const MinimaProfile& prof, double window_frac) {
    (void)window_frac;  // the estimator keeps the last three periods
    // need a few full oscillations of the first minimum to say anything
    auto raw1 = grid_extrema(prof, 1);
    int minima1 = 0;
    for (auto& r : raw1) minima1 += r.minimum ? 1 : 0;
    if (minima1 < 3)
        throw Error(errc::insufficient_range,
                    "profile covers fewer than 3 oscillation periods",
                    {{"minima", std::to_string(minima1)}});
    const double prominence = 0.3;
    ProfileExtrema ex;
    for (int j = 1; j <= prof.n + 1; ++j) {
        ex.lower.push_back(estimate_one(prof, j, true, prominence));
        ex.upper.push_back(estimate_one(prof, j, false, prominence));
    }
    return ex;
}

namespace {

ExponentEstimate convert(const ExtremumEstimate& e, int n, Side side) {
    ExponentEstimate out;
    if (!e.valid) return out;
    out.psi = e.value;
    out.value = psi_to_exponent(e.value, n, side);
    double lo = psi_to_exponent(std::min(e.value + e.uncertainty, side == Side::dual ? 1.0 : 1.0 / n),
                                n, side);
    double hi = psi_to_exponent(e.value - e.uncertainty, n, side);
    out.uncertainty = std::max(std::abs(out.value - lo), std::abs(hi - out.value));
    out.valid = true;
    return out;
}

} // namespace

ExponentReport make_report(const std::optional<MinimaProfile>& sim,
                           const std::optional<MinimaProfile>& dual) {
    ExponentReport rep;
    if (!sim && !dual) throw Error(errc::invalid_spec, "make_report needs at least one profile");
    const MinimaProfile& any = sim ? *sim : *dual;
    rep.n = any.n;
    if (any.cands) rep.zeta_spec = any.cands->zeta_spec;
    int levels = rep.n + 1;
    rep.lambda.resize(levels);
    rep.lambda_hat.resize(levels);
    rep.w.resize(levels);
    rep.w_hat.resize(levels);
    if (sim) {
        if (sim->side != Side::simultaneous)
            throw Error(errc::invalid_spec, "sim profile has wrong side");
        auto ex = estimate_extrema(*sim);
        for (int j = 0; j < levels; ++j) {
            rep.lambda[j] = convert(ex.lower[j], rep.n, Side::simultaneous);
            rep.lambda_hat[j] = convert(ex.upper[j], rep.n, Side::simultaneous);
        }
    }
    if (dual) {
        if (dual->side != Side::dual)
            throw Error(errc::invalid_spec, "dual profile has wrong side");
        if (dual->n != rep.n) throw Error(errc::grid_mismatch, "profiles have different n");
        auto ex = estimate_extrema(*dual);
        for (int j = 0; j < levels; ++j) {
            rep.w[j] = convert(ex.lower[j], rep.n, Side::dual);
            rep.w_hat[j] = convert(ex.upper[j], rep.n, Side::dual);
        }
    }
    return rep;
}

std::vector<DualityStats> duality_residuals(const MinimaProfile& sim, const MinimaProfile& dual) {
    if (sim.n != dual.n || sim.side != Side::simultaneous || dual.side != Side::dual)
        throw Error(errc::grid_mismatch, "duality residuals need matching sim/dual profiles");
    if (sim.grid.size() != dual.grid.size())
        throw Error(errc::grid_mismatch, "profiles have different grids");
    for (size_t i = 0; i < sim.grid.size(); ++i)
        if (std::abs(sim.grid[i] - dual.grid[i]) > 1e-9)
            throw Error(errc::grid_mismatch, "profiles have different grids");
    std::vector<DualityStats> out;
    int levels = sim.n + 1;
    for (int j = 1; j <= levels; ++j) {
        DualityStats st;
        st.level = j;
        std::vector<double> r(sim.grid.size());
        for (size_t i = 0; i < sim.grid.size(); ++i) {
            r[i] = sim.values[j - 1][i] + dual.values[levels - j][i];
            st.max_abs_residual = std::max(st.max_abs_residual, std::abs(r[i]));
        }
        st.trend_slope = least_squares_slope(sim.grid, r);
        out.push_back(st);
    }
    return out;
}

TransferenceResult transference_check(const ExponentReport& rep, double tol_eq,
                                      double deckel_tol_w, double deckel_tol_l) {
    TransferenceResult res;
    int n = rep.n;
    auto push = [&](const std::string& name, double lo, double v, double hi, double tol) {
        TransferenceRow row{name, lo, v, hi, lo - tol <= v && v <= hi + tol};
        res.rows.push_back(row);
    };
    bool have_l = !rep.lambda.empty() && rep.lambda[0].valid;
    bool have_w = !rep.w.empty() && rep.w[0].valid;
    if (have_l && have_w) {
        double w = rep.w[0].value, l = rep.lambda[0].value;
        double lo = w / ((n - 1.0) * w + n);
        double hi = (w - n + 1.0) / n;
        double tol = rep.lambda[0].uncertainty + rep.w[0].uncertainty / n + 2e-3;
        push("khintchine", lo, l, hi, tol);
        if (std::abs(l - hi) <= tol_eq || std::abs(l - lo) <= tol_eq) {
            res.khintchine_equality = true;
            if (rep.w_hat[0].valid && rep.lambda_hat[0].valid) {
                res.deckel_checked = true;
                res.deckel_ok = std::abs(rep.w_hat[0].value - n) <= deckel_tol_w &&
                                std::abs(rep.lambda_hat[0].value - 1.0 / n) <= deckel_tol_l;
            }
        }
    }
    bool have_lh = !rep.lambda_hat.empty() && rep.lambda_hat[0].valid;
    bool have_wh = !rep.w_hat.empty() && rep.w_hat[0].valid;
    if (have_lh && have_wh && n >= 2) {
        // for n = 2 the bounds collapse to the identity lhat = 1 - 1/what,
        // so the row is only meaningful up to the estimate uncertainties
        double wh = rep.w_hat[0].value, lh = rep.lambda_hat[0].value;
        double tol = rep.lambda_hat[0].uncertainty + rep.w_hat[0].uncertainty + 2e-3;
        push("german", (wh - 1.0) / ((n - 1.0) * wh), lh, (wh - n + 1.0) / wh, tol);
    }
    // dual Schmidt-Summerer inequalities on the psi* estimates: underline
    // psi*_j pairs with w_{n,j}, overline psi*_j with w_hat_{n,j}
    if (have_w && have_wh && rep.w[n].valid && rep.w_hat[n].valid) {
        double psi_up_last = exponent_to_psi(rep.w_hat[n].value, n, Side::dual);
        double psi_lo_last = exponent_to_psi(rep.w[n].value, n, Side::dual);
        for (int j = 1; j <= n + 1; ++j) {
            if (!rep.w[j - 1].valid || !rep.w_hat[j - 1].valid) continue;
            double lo_j = exponent_to_psi(rep.w[j - 1].value, n, Side::dual);
            double up_j = exponent_to_psi(rep.w_hat[j - 1].value, n, Side::dual);
            push("dual-ineq-lo-j" + std::to_string(j), 0.0,
                 j * lo_j + (n + 1 - j) * psi_up_last + 0.05, 1e18, 1e-9);
            push("dual-ineq-hi-j" + std::to_string(j), 0.0,
                 j * up_j + (n + 1 - j) * psi_lo_last + 0.05, 1e18, 1e-9);
        }
    }
    res.all_ok = true;
    for (auto& r : res.rows) res.all_ok = res.all_ok && r.ok;
    if (res.deckel_checked) res.all_ok = res.all_ok && res.deckel_ok;
    return res;
}

SlopeCheck slope_from_logs(double h_p, double e_p, double h_r, double e_r, double h_q,
                           double e_q) {
    SlopeCheck sc;
    sc.q1 = 0.75 * (h_p - e_p);
    sc.l1 = 0.75 * h_p + 0.25 * e_p;
    sc.q2 = 0.75 * (h_r - e_r);
    sc.l2 = 0.75 * h_r + 0.25 * e_r;
    sc.delta = e_q / h_q + 1.0;
    sc.delta_gelfond = h_r - h_p - h_q;
    if (std::abs(sc.q2 - sc.q1) < 1e-12)
        throw Error(errc::degenerate, "degenerate diagram points (q2 == q1)");
    sc.measured_slope = (sc.l2 - sc.l1) / (sc.q2 - sc.q1);
    sc.regime_ok = h_q > 0 && 1.0 / h_q <= std::abs(sc.delta) + 1e-12;
    sc.ok = std::abs(sc.measured_slope - 1.0 / 3.0) <= sc.bound_const * std::abs(sc.delta);
    return sc;
}

SlopeCheck technisch_slope(const IntPolynomial& p, const IntPolynomial& q, const Zeta& zeta,
                           mpfr_prec_t bits) {
    MulResult mr = poly_mul(p, q, 3);
    double h_p = p.log_height(), e_p = log_abs_eval(p, zeta, bits);
    double h_q = q.log_height(), e_q = log_abs_eval(q, zeta, bits);
    double h_r = mr.product.log_height(), e_r = log_abs_eval(mr.product, zeta, bits);
    SlopeCheck sc = slope_from_logs(h_p, e_p, h_r, e_r, h_q, e_q);
    sc.p = p;
    sc.q = q;
    sc.r = mr.product;
    return sc;
}

std::vector<double> parametric_identity_residuals(const MinimaProfile& dual, int level,
                                                  int count) {
    if (dual.side != Side::dual || !dual.cands)
        throw Error(errc::invalid_spec, "parametric identity needs a dual profile with candidates");
    auto raw = grid_extrema(dual, level);
    std::vector<RefinedPoint> minima;
    for (auto& r : raw) {
        if (!r.minimum) continue;
        minima.push_back(refine_extremum(dual, level, r.idx, true));
    }
    std::vector<double> out;
    int n = dual.n;
    size_t start = minima.size() > static_cast<size_t>(count) ? minima.size() - count : 0;
    for (size_t i = start; i < minima.size(); ++i) {
        auto snap = minima_at(*dual.cands, minima[i].q);
        if ((int)snap.values.size() < level) continue;
        double min_neg_err = 1e300, max_h = -1e300;
        for (int j = 0; j < level; ++j) {
            const Candidate& c = dual.cands->items[snap.witness_ids[j]];
            min_neg_err = std::min(min_neg_err, -c.log_error);
            max_h = std::max(max_h, c.log_height);
        }
        if (max_h <= 0) continue;
        double w_j = min_neg_err / max_h;
        double psi_j = minima[i].value / minima[i].q;
        out.push_back(std::abs((1.0 + w_j) * (1.0 / n + psi_j) - (n + 1.0) / n));
    }
    return out;
}

} // namespace dioph

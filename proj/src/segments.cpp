#include "dioph/segments.hpp"

#include <algorithm>
#include <cmath>

#include "dioph/error.hpp"
#include "dioph/lattice.hpp"

namespace dioph {

namespace {

double fit_slope_on(const MinimaProfile& prof, int level, double q_lo, double q_hi) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < prof.points(); ++i) {
        if (prof.grid[i] < q_lo || prof.grid[i] > q_hi) continue;
        xs.push_back(prof.grid[i]);
        ys.push_back(prof.values[level - 1][i]);
    }
    return least_squares_slope(xs, ys);
}

// Refined minimum of `level` over the open interval (q_lo, q_hi).
RefinedPoint interval_minimum(const MinimaProfile& prof, int level, double q_lo, double q_hi) {
    size_t best = prof.points();
    double best_v = 1e300;
    for (size_t i = 0; i < prof.points(); ++i) {
        if (prof.grid[i] <= q_lo || prof.grid[i] >= q_hi) continue;
        double v = prof.values[level - 1][i];
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    if (best == prof.points()) return {0.5 * (q_lo + q_hi), 0.0};
    return refine_extremum(prof, level, best, true);
}

} // namespace

SegmentReport segment(const MinimaProfile& prof, double eps_band, double fit_margin) {
    if (prof.n != 3 || prof.side != Side::dual)
        throw Error(errc::invalid_spec, "segmentation expects the dual n=3 profile");
    SegmentReport rep;
    rep.eps_band = eps_band;

    // m(q) = max_j |L_j(q)|: joints are its local minima inside the band
    size_t m = prof.points();
    std::vector<double> env(m);
    for (size_t i = 0; i < m; ++i) {
        double v = 0;
        for (int j = 0; j < 4; ++j) v = std::max(v, std::abs(prof.values[j][i]));
        env[i] = v;
    }
    std::vector<size_t> joints;
    for (size_t i = 1; i + 1 < m; ++i) {
        if (env[i] > env[i - 1] || env[i] > env[i + 1]) continue;
        if (env[i] == env[i - 1] && env[i] == env[i + 1]) continue;
        if (env[i] > eps_band * prof.grid[i]) continue;
        if (!joints.empty() && prof.grid[i] - prof.grid[joints.back()] < 1.0) {
            if (env[i] < env[joints.back()]) joints.back() = i;
            continue;
        }
        joints.push_back(i);
    }
    // per-period dominance: joints repeat with q ratio nu, so a candidate
    // beaten (relative to q) within a factor 1.5 is an in-period dip
    {
        std::vector<size_t> dominant;
        for (size_t a : joints) {
            bool beaten = false;
            double band_a = env[a] / prof.grid[a];
            for (size_t b : joints) {
                if (a == b) continue;
                if (prof.grid[b] < prof.grid[a] / 1.5 || prof.grid[b] > prof.grid[a] * 1.5)
                    continue;
                if (env[b] / prof.grid[b] < band_a - 1e-12) {
                    beaten = true;
                    break;
                }
            }
            if (!beaten) dominant.push_back(a);
        }
        joints = std::move(dominant);
    }
    if (joints.size() < 3)
        throw Error(errc::segmentation_failed,
                    "fewer than 2 complete interval pairs detected",
                    {{"joints", std::to_string(joints.size())}});

    for (size_t j : joints) {
        rep.q_joints.push_back(prof.grid[j]);
        rep.joint_band.push_back(env[j] / prof.grid[j]);
    }

    for (size_t k = 0; k + 1 < rep.q_joints.size(); ++k) {
        double qa = rep.q_joints[k], qb = rep.q_joints[k + 1];
        RefinedPoint b = interval_minimum(prof, 1, qa, qb);
        RefinedPoint c = interval_minimum(prof, 2, qa, qb);
        rep.b_mins.push_back(b.q);
        rep.b_values.push_back(b.value);
        rep.c_mins.push_back(c.q);
        rep.c_values.push_back(c.value);

        // vertex minima of the witness value functions at b and c
        auto vertex_min = [&](const RefinedPoint& at, int level) {
            if (!prof.cands) return at.q;
            auto snap = minima_at(*prof.cands, at.q);
            if ((int)snap.witness_ids.size() < level) return at.q;
            const Candidate& w = prof.cands->items[snap.witness_ids[level - 1]];
            return prof.n * (w.log_height - w.log_error) / (prof.n + 1.0);
        };
        rep.d_mins.push_back(vertex_min(b, 1));
        rep.e_mins.push_back(vertex_min(c, 2));

        double len_I = b.q - qa, len_J = qb - b.q;
        double mI = fit_margin * len_I, mJ = fit_margin * len_J;
        SegmentReport::Fit fI{qa + mI, b.q - mI, {}};
        SegmentReport::Fit fJ{b.q + mJ, qb - mJ, {}};
        for (int lvl = 1; lvl <= 4; ++lvl) {
            fI.slopes[lvl - 1] = fit_slope_on(prof, lvl, fI.q_lo, fI.q_hi);
            fJ.slopes[lvl - 1] = fit_slope_on(prof, lvl, fJ.q_lo, fJ.q_hi);
        }
        rep.interval_I.push_back(fI);
        rep.interval_J.push_back(fJ);
    }

    rep.gap12 = gap_stats(prof, 1, 2);
    rep.gap34 = gap_stats(prof, 3, 4);
    return rep;
}

std::vector<ClaimRow> verify_graph_claims(const SegmentReport& rep, const MinimaProfile& prof,
                                          int last_pairs) {
    std::vector<ClaimRow> rows;
    size_t pairs = rep.pairs();
    size_t from = pairs > static_cast<size_t>(last_pairs) ? pairs - last_pairs : 0;
    double nu = consts::nu();
    double psi_target = (1.0 - consts::sqrt5()) / (3.0 * (3.0 + consts::sqrt5()));

    auto add = [&](const std::string& id, double target, double measured, double tol) {
        rows.push_back({id, target, measured, tol, std::abs(measured - target) <= tol});
    };

    for (size_t k = from; k < pairs; ++k) {
        double len_I = rep.b_mins[k] - rep.q_joints[k];
        double len_J = rep.q_joints[k + 1] - rep.b_mins[k];
        add("len-ratio-I/J-k" + std::to_string(k), 1.0, len_I / len_J, 0.1);
        add("q-ratio-k" + std::to_string(k), nu, rep.q_joints[k + 1] / rep.q_joints[k], 0.08);
        if (k + 1 < pairs) {
            double len_I2 = rep.b_mins[k + 1] - rep.q_joints[k + 1];
            double len_J2 = rep.q_joints[k + 2] - rep.b_mins[k + 1];
            add("I-growth-k" + std::to_string(k), nu, len_I2 / len_I, 0.1 * nu);
            add("J-growth-k" + std::to_string(k), nu, len_J2 / len_J, 0.1 * nu);
        }
        add("b/q-k" + std::to_string(k), (1.0 + nu) / 2.0, rep.b_mins[k] / rep.q_joints[k], 0.10);
        // slope fits: L1, L2 fall at -1/3 on I and rise at +1/3 on J;
        // L3, L4 do the opposite
        for (int lvl = 1; lvl <= 4; ++lvl) {
            double tI = (lvl <= 2) ? -1.0 / 3.0 : 1.0 / 3.0;
            add("slope-I-L" + std::to_string(lvl) + "-k" + std::to_string(k), tI,
                rep.interval_I[k].slopes[lvl - 1], 0.05);
            add("slope-J-L" + std::to_string(lvl) + "-k" + std::to_string(k), -tI,
                rep.interval_J[k].slopes[lvl - 1], 0.05);
        }
        // psi values at b_k
        double psi1 = rep.b_values[k] / rep.b_mins[k];
        add("psi1-at-b-k" + std::to_string(k), psi_target, psi1, 0.01);
        double q3 = rep.b_mins[k];
        double psi3 = psi(prof, 3, std::exp(q3));
        add("psi3-at-b-k" + std::to_string(k), -psi_target, psi3, 0.01);
    }
    // bounded level gaps, trend-free
    add("gap12-trend", 0.0, rep.gap12.trend_slope, 0.01);
    add("gap34-trend", 0.0, rep.gap34.trend_slope, 0.01);
    return rows;
}

std::vector<bool> witness_plane_consistency(const MinimaProfile& prof, const SegmentReport& rep,
                                            const QuadraticSequence& quads) {
    std::vector<bool> out;
    if (!prof.cands) return out;
    const IntPolynomial t = IntPolynomial::monomial(1);
    for (size_t k = 0; k + 1 < rep.q_joints.size(); ++k) {
        double qa = rep.q_joints[k], qb = rep.b_mins[k];
        double mid = 0.5 * (qa + qb);
        auto snap = minima_at(*prof.cands, mid);
        if (snap.witness_ids.size() < 2) {
            out.push_back(false);
            continue;
        }
        ZVec w1 = prof.cands->items[snap.witness_ids[0]].payload;
        ZVec w2 = prof.cands->items[snap.witness_ids[1]].payload;
        bool found = false;
        for (const auto& entry : quads.entries) {
            ZVec p(entry.poly.coeffs());
            p.resize(4, mpz_class(0));
            ZVec tp(poly_mul(entry.poly, t, 3).product.coeffs());
            tp.resize(4, mpz_class(0));
            ZMat plane{p, tp};
            if (rank_of(plane) == 2 && in_span(plane, w1) && in_span(plane, w2)) {
                found = true;
                break;
            }
        }
        out.push_back(found);
    }
    return out;
}

} // namespace dioph

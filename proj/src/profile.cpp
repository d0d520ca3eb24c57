#include "dioph/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dioph/error.hpp"

namespace dioph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Pick {
    double value;
    int idx;  // index into cands.items
};

// Greedy successive minima: sort by value, take the next candidate outside
// the rational span of the already chosen ones.
std::vector<Pick> select_levels(const CandidateSet& cands, double q) {
    std::vector<Pick> order;
    order.reserve(cands.items.size());
    for (size_t i = 0; i < cands.items.size(); ++i)
        order.push_back({candidate_value(cands.items[i], q, cands.side, cands.n), (int)i});
    std::sort(order.begin(), order.end(), [&](const Pick& a, const Pick& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.idx < b.idx;
    });
    std::vector<Pick> picked;
    ZMat span;
    for (const Pick& p : order) {
        if ((int)picked.size() == cands.n + 1) break;
        const ZVec& v = cands.items[p.idx].payload;
        if (!span.empty() && in_span(span, v)) continue;
        span.push_back(v);
        picked.push_back(p);
    }
    return picked;
}

} // namespace

std::vector<double> make_grid(double q_min, double q_max, double step) {
    if (!(q_min > 0) || !(q_max > q_min) || !(step > 0))
        throw Error(errc::invalid_config, "grid bounds must satisfy 0 < q_min < q_max, step > 0");
    std::vector<double> g;
    for (double q = q_min; q <= q_max + 1e-12; q += step) g.push_back(q);
    return g;
}

MinimaProfile profile(std::shared_ptr<CandidateSet> cands, const std::vector<double>& grid,
                      bool allow_incomplete) {
    if (!cands || cands->items.empty())
        throw Error(errc::insufficient_candidates, "empty candidate set");
    for (size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw Error(errc::invalid_config, "grid must be strictly ascending");
    if (!grid.empty() && grid.front() <= 0)
        throw Error(errc::invalid_config, "grid must be positive");

    MinimaProfile prof;
    prof.side = cands->side;
    prof.n = cands->n;
    prof.grid = grid;
    prof.cands = cands;
    int levels = cands->n + 1;
    prof.values.assign(levels, std::vector<double>(grid.size(), kInf));
    prof.witness.assign(levels, std::vector<int>(grid.size(), -1));

    for (size_t i = 0; i < grid.size(); ++i) {
        auto picked = select_levels(*cands, grid[i]);
        if ((int)picked.size() < levels && !allow_incomplete)
            throw Error(errc::insufficient_candidates,
                        "fewer than n+1 independent candidates at a grid point",
                        {{"q", std::to_string(grid[i])},
                         {"found", std::to_string(picked.size())}});
        for (size_t j = 0; j < picked.size(); ++j) {
            prof.values[j][i] = picked[j].value;
            prof.witness[j][i] = cands->items[picked[j].idx].id;
        }
    }
    return prof;
}

LevelSnapshot minima_at(const CandidateSet& cands, double q) {
    auto picked = select_levels(cands, q);
    LevelSnapshot snap;
    for (auto& p : picked) {
        snap.values.push_back(p.value);
        snap.witness_ids.push_back(cands.items[p.idx].id);
    }
    return snap;
}

double psi(const MinimaProfile& prof, int level, double Q) {
    if (Q <= 1.0) throw Error(errc::out_of_range, "psi requires Q > 1");
    double q = std::log(Q);
    if (q < prof.grid.front() - 1e-9 || q > prof.grid.back() + 1e-9)
        throw Error(errc::out_of_range, "log Q outside the profile grid",
                    {{"q", std::to_string(q)}});
    const auto& v = prof.values[level - 1];
    auto it = std::lower_bound(prof.grid.begin(), prof.grid.end(), q);
    size_t hi = std::min<size_t>(it - prof.grid.begin(), prof.grid.size() - 1);
    size_t lo = (hi == 0) ? 0 : hi - 1;
    double L;
    if (hi == lo || prof.grid[hi] == prof.grid[lo]) {
        L = v[hi];
    } else {
        double t = (q - prof.grid[lo]) / (prof.grid[hi] - prof.grid[lo]);
        t = std::clamp(t, 0.0, 1.0);
        L = v[lo] + t * (v[hi] - v[lo]);
    }
    return L / q;
}

RefinedPoint refine_extremum(const MinimaProfile& prof, int level, size_t i, bool minimum) {
    size_t lo = (i == 0) ? 0 : i - 1;
    size_t hi = std::min(i + 1, prof.grid.size() - 1);
    double qa = prof.grid[lo], qb = prof.grid[hi];
    RefinedPoint best{prof.grid[i], prof.values[level - 1][i]};
    if (!prof.cands) return best;

    const auto& items = prof.cands->items;
    Side side = prof.side;
    int n = prof.n;

    // candidate breakpoints: own vertices of nearby witnesses plus pairwise
    // crossings of their two branch lines inside the window
    std::set<int> ids;
    for (int j = 0; j < n + 1; ++j)
        for (size_t g = lo; g <= hi; ++g)
            if (prof.witness[j][g] >= 0) ids.insert(prof.witness[j][g]);

    std::vector<double> qs = {qa, qb, prof.grid[i]};
    auto branch = [&](const Candidate& c) {
        // value(q) = max(h + ch*q, e + ce*q)
        double ch = (side == Side::dual) ? -1.0 / n : -1.0;
        double ce = (side == Side::dual) ? 1.0 : 1.0 / n;
        return std::array<double, 4>{c.log_height, ch, c.log_error, ce};
    };
    std::vector<std::array<double, 4>> lines;
    for (int id : ids) lines.push_back(branch(items[id]));
    for (auto& l : lines) {
        // vertex where the two branches meet
        double q = (l[0] - l[2]) / (l[3] - l[1]);
        if (q > qa && q < qb) qs.push_back(q);
    }
    for (size_t a = 0; a < lines.size(); ++a)
        for (size_t b = a + 1; b < lines.size(); ++b)
            for (int ba = 0; ba < 2; ++ba)
                for (int bb = 0; bb < 2; ++bb) {
                    double ia = lines[a][2 * ba], sa = lines[a][2 * ba + 1];
                    double ib = lines[b][2 * bb], sb = lines[b][2 * bb + 1];
                    if (sa == sb) continue;
                    double q = (ib - ia) / (sa - sb);
                    if (q > qa && q < qb) qs.push_back(q);
                }

    for (double q : qs) {
        if (!(q > 0)) continue;
        auto snap = minima_at(*prof.cands, q);
        if ((int)snap.values.size() < level) continue;
        double v = snap.values[level - 1];
        if (minimum ? (v < best.value) : (v > best.value)) best = {q, v};
    }
    return best;
}

std::vector<SimRecord> best_sim_sequence(const Zeta& zeta, int n, long x_max) {
    if (x_max < 2) throw Error(errc::invalid_spec, "x_max must be >= 2");
    // 64-bit fixed point fractional parts of zeta^i; the rounding error
    // x * 2^-65 stays far below any distance of interest at x <= 1e8.
    const auto& pows = zeta.power_enclosures(n, 192);
    std::vector<uint64_t> frac(n);
    for (int i = 0; i < n; ++i) {
        mpfr_t t;
        mpfr_init2(t, 192);
        mpfr_add(t, pows[i].lo().raw(), pows[i].hi().raw(), MPFR_RNDN);
        mpfr_div_ui(t, t, 2, MPFR_RNDN);
        mpfr_frac(t, t, MPFR_RNDN);
        mpfr_mul_2exp(t, t, 64, MPFR_RNDN);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDD);
        frac[i] = static_cast<uint64_t>(z.get_ui());
        mpfr_clear(t);
    }
    std::vector<SimRecord> records;
    double best = 2.0;
    for (long x = 1; x <= x_max; ++x) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            uint64_t v = frac[i] * static_cast<uint64_t>(x);  // mod 2^64
            uint64_t d = std::min(v, ~v + 1);
            double dist = static_cast<double>(d) * 0x1p-64;
            worst = std::max(worst, dist);
        }
        if (worst < best) {
            best = worst;
            records.push_back({x, worst});
        }
    }
    return records;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    size_t m = x.size();
    if (m < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double den = m * sxx - sx * sx;
    if (den == 0) return 0.0;
    return (m * sxy - sx * sy) / den;
}

MinkowskiStats minkowski_stats(const MinimaProfile& prof) {
    MinkowskiStats st;
    std::vector<double> sums(prof.points());
    for (size_t i = 0; i < prof.points(); ++i) {
        double s = 0;
        for (int j = 0; j < prof.n + 1; ++j) s += prof.values[j][i];
        sums[i] = s;
        st.max_abs_sum = std::max(st.max_abs_sum, std::abs(s));
    }
    st.trend_slope = least_squares_slope(prof.grid, sums);
    return st;
}

GapStats gap_stats(const MinimaProfile& prof, int level_a, int level_b) {
    GapStats st;
    std::vector<double> gaps(prof.points());
    for (size_t i = 0; i < prof.points(); ++i) {
        gaps[i] = std::abs(prof.values[level_a - 1][i] - prof.values[level_b - 1][i]);
        st.sup = std::max(st.sup, gaps[i]);
    }
    st.trend_slope = least_squares_slope(prof.grid, gaps);
    return st;
}

} // namespace dioph

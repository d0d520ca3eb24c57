// Command-line front end: computes successive-minima profiles, exponent
// reports, graph segmentations, quadratic sequences and cubic experiments
// for a continued-fraction-specified real number, with reproducible CSV
// and JSON artifacts.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "dioph/acceptance.hpp"
#include "dioph/cubic.hpp"
#include "dioph/error.hpp"
#include "dioph/exponents.hpp"
#include "dioph/io.hpp"
#include "dioph/segments.hpp"

namespace fs = std::filesystem;
using namespace dioph;

namespace {

struct RunConfig {
    std::string zeta_spec = "fib:1,2";
    int n = 3;
    std::string side = "dual";
    std::string backend = "structured,reduced";
    double q_max = 60.0;
    double grid_step = 0.05;
    long precision_bits = 2048;
    double tol_eq = 0.02;
    double eps_band = 0.1;
    double rung_step = 0.5;
    long x_max = 1000;
    long h_max = 30;
    int window = 2;
    int generations = 6;
    long cubic_scan_h = 60;
    double cubic_scan_eps = 0.5;
    std::string cache_dir;
    std::string out_dir = ".";
    std::string suite = "all";
    bool plot_data = false;

    void validate() const {
        if (q_max <= 0) throw Error(errc::invalid_config, "q_max must be positive");
        if (grid_step <= 0) throw Error(errc::invalid_config, "grid_step must be positive");
        if (precision_bits < 128)
            throw Error(errc::invalid_config, "precision_bits must be >= 128");
        if (tol_eq <= 0 || eps_band <= 0 || rung_step <= 0)
            throw Error(errc::invalid_config, "tolerances must be positive");
        if (n < 1 || n > 4) throw Error(errc::invalid_config, "n must be in 1..4");
    }
};

void merge_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::invalid_config, "cannot open config file", {{"path", path}});
    json j;
    in >> j;
    if (j.contains("zeta")) cfg.zeta_spec = j["zeta"].get<std::string>();
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("side")) cfg.side = j["side"].get<std::string>();
    if (j.contains("backend")) cfg.backend = j["backend"].get<std::string>();
    if (j.contains("q_max")) cfg.q_max = j["q_max"].get<double>();
    if (j.contains("grid_step")) cfg.grid_step = j["grid_step"].get<double>();
    if (j.contains("precision_bits")) cfg.precision_bits = j["precision_bits"].get<long>();
    if (j.contains("tol_eq")) cfg.tol_eq = j["tol_eq"].get<double>();
    if (j.contains("eps_band")) cfg.eps_band = j["eps_band"].get<double>();
    if (j.contains("rung_step")) cfg.rung_step = j["rung_step"].get<double>();
    if (j.contains("x_max")) cfg.x_max = j["x_max"].get<long>();
    if (j.contains("h_max")) cfg.h_max = j["h_max"].get<long>();
    if (j.contains("window")) cfg.window = j["window"].get<int>();
    if (j.contains("generations")) cfg.generations = j["generations"].get<int>();
    if (j.contains("cache_dir")) cfg.cache_dir = j["cache_dir"].get<std::string>();
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
}

double dual_height_cap(int n, double q_max) {
    return q_max * (1.0 / n + (n == 2 ? 0.30 : 0.20)) + 4.0;
}

mpz_class exp_mpz(double x) {
    mpfr_t t;
    mpfr_init2(t, 96);
    mpfr_set_d(t, x, MPFR_RNDN);
    mpfr_exp(t, t, MPFR_RNDN);
    mpz_class out;
    mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDD);
    mpfr_clear(t);
    return out;
}

struct Pipeline {
    RunConfig cfg;
    std::shared_ptr<Zeta> zeta;
    std::optional<QuadraticSequence> quads;
    std::optional<BestApproxSequence> best;
    std::optional<CandidateCache> cache;

    explicit Pipeline(RunConfig c) : cfg(std::move(c)) {
        zeta = zeta_from_spec(cfg.zeta_spec, cfg.precision_bits);
        if (!cfg.cache_dir.empty()) cache.emplace(cfg.cache_dir);
    }

    const QuadraticSequence& quads_ref() {
        if (!quads)
            quads = extract_quadratic_sequence(*zeta, dual_height_cap(cfg.n, cfg.q_max),
                                               cfg.precision_bits);
        return *quads;
    }

    const BestApproxSequence& best_ref() {
        if (!best)
            best = best_approx_polys(*zeta, exp_mpz(dual_height_cap(cfg.n, cfg.q_max)),
                                     cfg.precision_bits);
        return *best;
    }

    std::shared_ptr<CandidateSet> with_cache(const std::string& tag,
                                             const std::function<std::shared_ptr<CandidateSet>()>& gen) {
        if (!cache) return gen();
        std::string key = cfg.zeta_spec + "|" + std::to_string(cfg.n) + "|" + cfg.side + "|" +
                          cfg.backend + "|" + tag + "|" + std::to_string(cfg.precision_bits);
        if (auto hit = cache->load(key)) return hit;
        auto set = gen();
        cache->store(key, *set);
        return set;
    }

    std::shared_ptr<CandidateSet> build_candidates(Side side) {
        std::vector<std::shared_ptr<CandidateSet>> parts;
        std::ostringstream tag;
        tag << "qmax=" << cfg.q_max << ";x=" << cfg.x_max << ";h=" << cfg.h_max
            << ";w=" << cfg.window << ";rung=" << cfg.rung_step;
        auto backends = cfg.backend;
        for (auto& c : backends)
            if (c == '+' || c == ',') c = ' ';
        std::istringstream iss(backends);
        std::string b;
        while (iss >> b) {
            if (b == "brute") {
                parts.push_back(side == Side::dual
                                    ? candidates_dual_brute(*zeta, cfg.n, cfg.h_max,
                                                            cfg.precision_bits)
                                    : candidates_simultaneous_brute(*zeta, cfg.n, cfg.x_max,
                                                                    cfg.window,
                                                                    cfg.precision_bits));
            } else if (b == "reduced") {
                parts.push_back(candidates_reduced(*zeta, cfg.n, side, cfg.q_max,
                                                   cfg.precision_bits, cfg.rung_step));
            } else if (b == "structured") {
                if (side != Side::dual)
                    throw Error(errc::invalid_config,
                                "structured backend applies to the dual side only");
                parts.push_back(candidates_structured(*zeta, cfg.n, quads_ref(), best_ref(),
                                                      dual_height_cap(cfg.n, cfg.q_max),
                                                      cfg.precision_bits));
            } else {
                throw Error(errc::invalid_config, "unknown backend", {{"backend", b}});
            }
        }
        if (parts.empty()) throw Error(errc::invalid_config, "no backend selected");
        if (parts.size() == 1) return parts[0];
        return merge_candidate_sets(parts);
    }

    MinimaProfile build_profile(Side side) {
        std::ostringstream tag;
        tag << side_name(side) << ";qmax=" << cfg.q_max << ";x=" << cfg.x_max
            << ";h=" << cfg.h_max << ";w=" << cfg.window << ";rung=" << cfg.rung_step;
        auto set = with_cache(tag.str(), [&] { return build_candidates(side); });
        auto grid = make_grid(cfg.grid_step, cfg.q_max, cfg.grid_step);
        return profile(set, grid);
    }
};

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

int cmd_minima(Pipeline& pl) {
    Side side = side_from_name(pl.cfg.side);
    auto prof = pl.build_profile(side);
    std::string base = "profile_n" + std::to_string(pl.cfg.n) + "_" + side_name(side);
    write_profile_file(prof, out_path(pl.cfg, base + ".csv"));
    if (pl.cfg.plot_data) write_plot_series(prof, out_path(pl.cfg, base));
    std::cout << "wrote " << out_path(pl.cfg, base + ".csv") << " (" << prof.points()
              << " grid points, " << prof.cands->items.size() << " candidates)\n";
    return 0;
}

int cmd_exponents(Pipeline& pl) {
    auto dual = pl.build_profile(Side::dual);
    RunConfig c2 = pl.cfg;
    c2.side = "simultaneous";
    c2.backend = "reduced";
    Pipeline pl2(c2);
    auto sim = pl2.build_profile(Side::simultaneous);
    auto rep = make_report(sim, dual);
    write_text_atomic(out_path(pl.cfg, "exponents_n" + std::to_string(pl.cfg.n) + ".json"),
                      report_to_json(rep).dump(2) + "\n");
    std::cout << "j  lambda      lambda_hat  w           w_hat\n";
    for (int j = 0; j <= rep.n; ++j) {
        auto cell = [](const ExponentEstimate& e) {
            return e.valid ? format_double(e.value) : std::string("-");
        };
        std::printf("%d  %-11s %-11s %-11s %-11s\n", j + 1, cell(rep.lambda[j]).c_str(),
                    cell(rep.lambda_hat[j]).c_str(), cell(rep.w[j]).c_str(),
                    cell(rep.w_hat[j]).c_str());
    }
    auto tr = transference_check(rep, pl.cfg.tol_eq);
    for (const auto& row : tr.rows)
        std::printf("%-18s %10s <= %10s <= %-10s %s\n", row.name.c_str(),
                    format_double(row.lower).c_str(), format_double(row.value).c_str(),
                    format_double(row.upper).c_str(), row.ok ? "ok" : "VIOLATED");
    if (tr.deckel_checked)
        std::printf("khintchine equality: uniform exponents %s\n",
                    tr.deckel_ok ? "match the predicted 1/n and n" : "DIVERGE from prediction");
    return tr.all_ok ? 0 : 1;
}

int cmd_segments(Pipeline& pl) {
    if (pl.cfg.n != 3)
        throw Error(errc::invalid_config, "segments requires --n 3");
    pl.cfg.side = "dual";
    auto prof = pl.build_profile(Side::dual);
    auto rep = segment(prof, pl.cfg.eps_band);
    write_text_atomic(out_path(pl.cfg, "segments_n3.json"),
                      segment_report_to_json(rep).dump(2) + "\n");
    auto claims = verify_graph_claims(rep, prof);
    write_text_atomic(out_path(pl.cfg, "claims_n3.csv"), claims_to_csv(claims));
    int failed = 0;
    for (const auto& c : claims) failed += c.pass ? 0 : 1;
    std::cout << rep.pairs() << " interval pairs, " << claims.size() - failed << "/"
              << claims.size() << " claims pass\n";
    return failed == 0 ? 0 : 1;
}

int cmd_roy(Pipeline& pl) {
    const auto& quads = pl.quads_ref();
    write_text_atomic(out_path(pl.cfg, "quadratic_sequence.json"),
                      quadratic_sequence_to_json(quads).dump(2) + "\n");
    std::cout << "k  H(P_k)        exponent    logH ratio\n";
    for (size_t k = 0; k < quads.size(); ++k) {
        const auto& e = quads.entries[k];
        double ratio = k + 1 < quads.size()
                           ? quads.entries[k + 1].log_height / e.log_height
                           : 0.0;
        std::printf("%-2zu %-13s %-11s %s\n", k, e.height.get_str().c_str(),
                    format_double(e.exponent).c_str(),
                    k + 1 < quads.size() ? format_double(ratio).c_str() : "-");
    }
    return 0;
}

int cmd_cubic(Pipeline& pl) {
    auto ws = cubic_experiment(*pl.zeta, pl.quads_ref(), pl.best_ref(), pl.cfg.generations,
                               pl.cfg.precision_bits);
    write_text_atomic(out_path(pl.cfg, "cubic_witnesses.json"),
                      cubic_witnesses_to_json(ws).dump(2) + "\n");
    write_text_atomic(out_path(pl.cfg, "cubic_summary.csv"), cubic_summary_csv(ws));
    auto list = cubic_nonexistence_scan(*pl.zeta, pl.cfg.cubic_scan_h, pl.cfg.cubic_scan_eps,
                                        pl.cfg.precision_bits);
    std::cout << ws.size() << " witnesses; nonexistence scan (h<=" << pl.cfg.cubic_scan_h
              << ", eps=" << pl.cfg.cubic_scan_eps << ") has " << list.size() << " members\n";
    for (const auto& p : list) std::cout << "  " << p.str() << "\n";
    return 0;
}

int cmd_verify(Pipeline& pl) {
    AcceptanceConfig acfg;
    acfg.zeta_spec = pl.cfg.zeta_spec;
    acfg.precision_bits = pl.cfg.precision_bits;
    acfg.grid_step = pl.cfg.grid_step;
    acfg.rung_step = pl.cfg.rung_step;
    acfg.cache_dir = pl.cfg.cache_dir;
    auto results = run_acceptance(pl.cfg.suite, acfg, std::cout);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* env = std::getenv("DIOPHLAB_CACHE_DIR")) cfg.cache_dir = env;
    std::string config_path;

    CLI::App app{"successive-minima laboratory for continued-fraction reals"};
    app.require_subcommand(1);
    app.add_option("--config", config_path, "JSON config file merged under the flags");
    app.add_option("--zeta", cfg.zeta_spec, "zeta spec: fib:a,b[,len] or cf-file:<path>");
    app.add_option("--n", cfg.n, "dimension (1..4)");
    app.add_option("--side", cfg.side, "dual or simultaneous");
    app.add_option("--backend", cfg.backend, "comma/plus list of brute,reduced,structured");
    app.add_option("--q-max", cfg.q_max, "parametric range limit");
    app.add_option("--grid-step", cfg.grid_step, "q grid step");
    app.add_option("--precision-bits", cfg.precision_bits, "working precision (>= 128)");
    app.add_option("--tol-eq", cfg.tol_eq, "equality tolerance for transference checks");
    app.add_option("--eps-band", cfg.eps_band, "joint detection band coefficient");
    app.add_option("--rung-step", cfg.rung_step, "q step of the reduction ladder");
    app.add_option("--x-max", cfg.x_max, "brute simultaneous bound");
    app.add_option("--h-max", cfg.h_max, "brute dual height bound");
    app.add_option("--window", cfg.window, "brute simultaneous window");
    app.add_option("--generations", cfg.generations, "cubic experiment generations");
    app.add_option("--cubic-scan-h", cfg.cubic_scan_h, "cubic scan height bound");
    app.add_option("--cubic-scan-eps", cfg.cubic_scan_eps, "cubic scan exponent margin");
    app.add_option("--cache-dir", cfg.cache_dir, "candidate cache directory");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_option("--suite", cfg.suite, "verify suite: paper-n2|paper-n3|paper-n4|cubic|properties|all");
    app.add_flag("--plot-data", cfg.plot_data, "emit per-function (q, L) series files");

    auto* c_min = app.add_subcommand("minima", "compute a successive-minima profile");
    auto* c_exp = app.add_subcommand("exponents", "estimate the classical exponents");
    auto* c_seg = app.add_subcommand("segments", "segment the n=3 dual profile");
    auto* c_roy = app.add_subcommand("roy", "extract the quadratic sequence");
    auto* c_cub = app.add_subcommand("cubic", "degree-three approximation experiments");
    auto* c_ver = app.add_subcommand("verify", "run the acceptance suite");
    for (auto* c : {c_min, c_exp, c_seg, c_roy, c_cub, c_ver}) c->fallthrough();

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            RunConfig from_file = cfg;
            merge_config_file(from_file, config_path);
            // flags win over the config file: reparse on top
            cfg = from_file;
            app.clear();
            app.parse(argc, argv);
        }
        cfg.validate();
        Pipeline pl(cfg);
        if (c_min->parsed()) return cmd_minima(pl);
        if (c_exp->parsed()) return cmd_exponents(pl);
        if (c_seg->parsed()) return cmd_segments(pl);
        if (c_roy->parsed()) return cmd_roy(pl);
        if (c_cub->parsed()) return cmd_cubic(pl);
        if (c_ver->parsed()) return cmd_verify(pl);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        json err;
        err["code"] = e.code();
        err["message"] = e.what();
        err["context"] = e.context();
        std::cerr << err.dump() << "\n";
        return e.code() == errc::invalid_config ? 2 : 1;
    } catch (const std::exception& e) {
        json err;
        err["code"] = "internal";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
}

#include "dioph/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dioph/error.hpp"

namespace dioph {

namespace fs = std::filesystem;

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

namespace {

// lossless round trip for cached values
std::string format_double_hex(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::strtod(s.c_str(), nullptr);
}

} // namespace

namespace {

json zvec_to_json(const ZVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

ZVec zvec_from_json(const json& a) {
    ZVec v;
    for (const auto& x : a) v.emplace_back(x.get<std::string>());
    return v;
}

json estimate_to_json(const ExponentEstimate& e) {
    json j;
    j["valid"] = e.valid;
    j["value"] = format_double(e.value);
    j["uncertainty"] = format_double(e.uncertainty);
    j["psi"] = format_double(e.psi);
    return j;
}

} // namespace

json candidate_set_to_json(const CandidateSet& set) {
    json j;
    j["side"] = side_name(set.side);
    j["n"] = set.n;
    j["zeta"] = set.zeta_spec;
    j["backend"] = set.backend;
    j["precision_bits"] = static_cast<long>(set.precision_bits);
    json items = json::array();
    for (const auto& c : set.items) {
        json e;
        e["id"] = c.id;
        e["payload"] = zvec_to_json(c.payload);
        e["log_height"] = format_double_hex(c.log_height);
        e["log_error"] = format_double_hex(c.log_error);
        items.push_back(std::move(e));
    }
    j["items"] = std::move(items);
    return j;
}

std::shared_ptr<CandidateSet> candidate_set_from_json(const json& j) {
    auto set = std::make_shared<CandidateSet>();
    set->side = side_from_name(j.at("side").get<std::string>());
    set->n = j.at("n").get<int>();
    set->zeta_spec = j.at("zeta").get<std::string>();
    set->backend = j.at("backend").get<std::string>();
    set->precision_bits = j.at("precision_bits").get<long>();
    for (const auto& e : j.at("items")) {
        Candidate c;
        c.id = e.at("id").get<int>();
        c.payload = zvec_from_json(e.at("payload"));
        c.log_height = parse_double(e.at("log_height").get<std::string>());
        c.log_error = parse_double(e.at("log_error").get<std::string>());
        set->items.push_back(std::move(c));
    }
    return set;
}

json profile_header_json(const MinimaProfile& prof) {
    json j;
    j["zeta"] = prof.cands ? prof.cands->zeta_spec : "synthetic";
    j["n"] = prof.n;
    j["side"] = side_name(prof.side);
    j["backend"] = prof.cands ? prof.cands->backend : "synthetic";
    j["precision_bits"] = prof.cands ? static_cast<long>(prof.cands->precision_bits) : 0;
    j["points"] = prof.points();
    return j;
}

void write_profile_file(const MinimaProfile& prof, const std::string& path) {
    std::ostringstream os;
    os << profile_header_json(prof).dump() << "\n";
    os << "q";
    for (int jl = 1; jl <= prof.n + 1; ++jl) os << ",L" << jl;
    for (int jl = 1; jl <= prof.n + 1; ++jl) os << ",w" << jl;
    os << "\n";
    for (size_t i = 0; i < prof.points(); ++i) {
        os << format_double(prof.grid[i]);
        for (int jl = 0; jl < prof.n + 1; ++jl) os << "," << format_double(prof.values[jl][i]);
        for (int jl = 0; jl < prof.n + 1; ++jl) os << "," << prof.witness[jl][i];
        os << "\n";
    }
    write_text_atomic(path, os.str());
}

void write_plot_series(const MinimaProfile& prof, const std::string& base_path) {
    for (int jl = 1; jl <= prof.n + 1; ++jl) {
        std::ostringstream os;
        os << "q,L\n";
        for (size_t i = 0; i < prof.points(); ++i)
            os << format_double(prof.grid[i]) << "," << format_double(prof.values[jl - 1][i])
               << "\n";
        write_text_atomic(base_path + ".L" + std::to_string(jl) + ".csv", os.str());
    }
}

json report_to_json(const ExponentReport& rep) {
    json j;
    j["n"] = rep.n;
    j["zeta"] = rep.zeta_spec;
    json per = json::array();
    for (int lvl = 0; lvl <= rep.n; ++lvl) {
        json e;
        e["j"] = lvl + 1;
        e["lambda"] = estimate_to_json(rep.lambda[lvl]);
        e["lambda_hat"] = estimate_to_json(rep.lambda_hat[lvl]);
        e["w"] = estimate_to_json(rep.w[lvl]);
        e["w_hat"] = estimate_to_json(rep.w_hat[lvl]);
        per.push_back(std::move(e));
    }
    j["levels"] = std::move(per);
    return j;
}

json segment_report_to_json(const SegmentReport& rep) {
    json j;
    auto arr = [](const std::vector<double>& v) {
        json a = json::array();
        for (double x : v) a.push_back(format_double(x));
        return a;
    };
    j["q_joints"] = arr(rep.q_joints);
    j["joint_band"] = arr(rep.joint_band);
    j["b_mins"] = arr(rep.b_mins);
    j["b_values"] = arr(rep.b_values);
    j["c_mins"] = arr(rep.c_mins);
    j["c_values"] = arr(rep.c_values);
    j["d_mins"] = arr(rep.d_mins);
    j["e_mins"] = arr(rep.e_mins);
    auto fits = [&](const std::vector<SegmentReport::Fit>& f) {
        json a = json::array();
        for (const auto& x : f) {
            json e;
            e["q_lo"] = format_double(x.q_lo);
            e["q_hi"] = format_double(x.q_hi);
            json s = json::array();
            for (double sl : x.slopes) s.push_back(format_double(sl));
            e["slopes"] = std::move(s);
            a.push_back(std::move(e));
        }
        return a;
    };
    j["interval_I"] = fits(rep.interval_I);
    j["interval_J"] = fits(rep.interval_J);
    j["gap12"] = {{"sup", format_double(rep.gap12.sup)},
                  {"trend", format_double(rep.gap12.trend_slope)}};
    j["gap34"] = {{"sup", format_double(rep.gap34.sup)},
                  {"trend", format_double(rep.gap34.trend_slope)}};
    j["eps_band"] = format_double(rep.eps_band);
    return j;
}

std::string claims_to_csv(const std::vector<ClaimRow>& rows) {
    std::ostringstream os;
    os << "claim,target,measured,tolerance,pass\n";
    for (const auto& r : rows)
        os << r.id << "," << format_double(r.target) << "," << format_double(r.measured) << ","
           << format_double(r.tol) << "," << (r.pass ? 1 : 0) << "\n";
    return os.str();
}

json quadratic_sequence_to_json(const QuadraticSequence& seq) {
    json a = json::array();
    for (const auto& e : seq.entries) {
        json x;
        x["coeffs"] = zvec_to_json(e.poly.coeffs());
        x["height"] = e.height.get_str();
        x["log_height"] = format_double(e.log_height);
        x["log_err"] = format_double(e.log_err);
        x["log_deriv"] = format_double(e.log_deriv);
        x["exponent"] = format_double(e.exponent);
        a.push_back(std::move(x));
    }
    json j;
    j["entries"] = std::move(a);
    return j;
}

json cubic_witnesses_to_json(const std::vector<CubicWitness>& ws) {
    json a = json::array();
    for (const auto& w : ws) {
        json x;
        x["k"] = w.k;
        x["shift"] = w.shift;
        x["coeffs"] = zvec_to_json(w.s.coeffs());
        x["budget"] = w.budget.get_str();
        x["log_height"] = format_double(w.log_height);
        x["log_err"] = format_double(w.log_err);
        x["log_deriv"] = format_double(w.log_deriv);
        x["exponent_poly"] = format_double(w.exponent_poly);
        x["exponent_root"] = format_double(w.exponent_root);
        x["root_gap"] = format_double(w.root_gap);
        x["both_irreducible"] = w.both_irreducible;
        x["derivative_guard_ok"] = w.derivative_guard_ok;
        a.push_back(std::move(x));
    }
    json j;
    j["witnesses"] = std::move(a);
    return j;
}

std::string cubic_summary_csv(const std::vector<CubicWitness>& ws) {
    std::ostringstream os;
    os << "k,height,exponent_poly,exponent_root\n";
    for (const auto& w : ws)
        os << w.k << "," << format_double(std::exp(w.log_height)) << ","
           << format_double(w.exponent_poly) << "," << format_double(w.exponent_root) << "\n";
    return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(errc::io_error, "cannot open file for writing", {{"path", path}});
        out << content;
    }
    fs::rename(tmp, p);
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string CandidateCache::path_for(const std::string& key) const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(key));
    return (fs::path(dir_) / (std::string(buf) + ".json")).string();
}

std::shared_ptr<CandidateSet> CandidateCache::load(const std::string& key) const {
    if (dir_.empty()) return nullptr;
    fs::path p(path_for(key));
    if (!fs::exists(p)) return nullptr;
    std::ifstream in(p);
    json j;
    in >> j;
    if (j.value("cache_key", "") != key) return nullptr;  // hash collision
    return candidate_set_from_json(j.at("set"));
}

void CandidateCache::store(const std::string& key, const CandidateSet& set) const {
    if (dir_.empty()) return;
    json j;
    j["cache_key"] = key;
    j["set"] = candidate_set_to_json(set);
    write_text_atomic(path_for(key), j.dump());
}

} // namespace dioph

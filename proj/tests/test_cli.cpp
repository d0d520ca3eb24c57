#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dioph/io.hpp"

namespace fs = std::filesystem;
using namespace dioph;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(DIOPHLAB_BIN) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
    int rc = pclose(pipe);
    r.status = WEXITSTATUS(rc);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("diophlab_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter() {
        static int c = 0;
        return ++c;
    }
};

} // namespace

TEST_CASE("invalid configuration exits with status 2 and error JSON") {
    auto r = run_cli("minima --q-max -1");
    CHECK(r.status == 2);
    CHECK(r.out.find("q_max must be positive") != std::string::npos);
    CHECK(r.out.find("invalid-config") != std::string::npos);
    auto r2 = run_cli("minima --precision-bits 16");
    CHECK(r2.status == 2);
    auto r3 = run_cli("minima --backend nope --q-max 2 --n 1 --zeta fib:1,2,200");
    CHECK(r3.status == 2);
}

TEST_CASE("minima command writes a deterministic profile file") {
    TempDir tmp;
    std::string common = "minima --zeta fib:1,2,400 --n 2 --side dual --backend brute "
                         "--h-max 12 --q-max 4 --grid-step 0.2 --precision-bits 512 --out ";
    auto r1 = run_cli(common + (tmp.path / "a").string());
    CHECK(r1.status == 0);
    auto r2 = run_cli(common + (tmp.path / "b").string());
    CHECK(r2.status == 0);
    std::string a = slurp(tmp.path / "a" / "profile_n2_dual.csv");
    std::string b = slurp(tmp.path / "b" / "profile_n2_dual.csv");
    REQUIRE(!a.empty());
    CHECK(a == b);
    // header line is JSON with the run key fields
    std::istringstream is(a);
    std::string header;
    std::getline(is, header);
    auto j = json::parse(header);
    CHECK(j["n"] == 2);
    CHECK(j["side"] == "dual");
    std::string cols;
    std::getline(is, cols);
    CHECK(cols == "q,L1,L2,L3,w1,w2,w3");
}

TEST_CASE("candidate cache: hit reproduces the cold-run output") {
    TempDir tmp;
    std::string cache = (tmp.path / "cache").string();
    std::string common = "minima --zeta fib:1,2,400 --n 1 --side dual --backend reduced "
                         "--q-max 4 --grid-step 0.2 --precision-bits 512 --cache-dir " + cache +
                         " --out ";
    auto r1 = run_cli(common + (tmp.path / "cold").string());
    CHECK(r1.status == 0);
    CHECK(fs::exists(cache));
    size_t files = 0;
    for (auto& e : fs::directory_iterator(cache)) (void)e, ++files;
    CHECK(files >= 1);
    auto r2 = run_cli(common + (tmp.path / "warm").string());
    CHECK(r2.status == 0);
    CHECK(slurp(tmp.path / "cold" / "profile_n1_dual.csv") ==
          slurp(tmp.path / "warm" / "profile_n1_dual.csv"));
}

TEST_CASE("plot data emits one series per level") {
    TempDir tmp;
    auto r = run_cli("minima --zeta fib:1,2,400 --n 1 --side dual --backend brute --h-max 8 "
                     "--q-max 3 --grid-step 0.5 --precision-bits 512 --plot-data --out " +
                     tmp.path.string());
    CHECK(r.status == 0);
    CHECK(fs::exists(tmp.path / "profile_n1_dual.L1.csv"));
    CHECK(fs::exists(tmp.path / "profile_n1_dual.L2.csv"));
}

TEST_CASE("roy command prints the sequence table") {
    TempDir tmp;
    auto r = run_cli("roy --zeta fib:1,2 --n 2 --q-max 16 --precision-bits 1024 --out " +
                     tmp.path.string());
    CHECK(r.status == 0);
    CHECK(fs::exists(tmp.path / "quadratic_sequence.json"));
    CHECK(r.out.find("H(P_k)") != std::string::npos);
}

TEST_CASE("config file merges under flags") {
    TempDir tmp;
    {
        std::ofstream cfg(tmp.path / "cfg.json");
        cfg << R"({"zeta": "fib:1,2,400", "n": 1, "q_max": 3.0, "grid_step": 0.5,)"
            << R"( "h_max": 8, "backend": "brute", "precision_bits": 512, "side": "dual"})";
    }
    auto r = run_cli("minima --config " + (tmp.path / "cfg.json").string() + " --out " +
                     tmp.path.string());
    CHECK(r.status == 0);
    CHECK(fs::exists(tmp.path / "profile_n1_dual.csv"));
    // a flag overrides the file value
    auto r2 = run_cli("minima --config " + (tmp.path / "cfg.json").string() +
                      " --n 2 --out " + tmp.path.string());
    CHECK(r2.status == 0);
    CHECK(fs::exists(tmp.path / "profile_n2_dual.csv"));
}

TEST_CASE("verify command runs a suite end to end") {
    auto r = run_cli("verify --suite paper-n2 --zeta fib:1,2");
    CHECK(r.status == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("1/1 criteria passed") != std::string::npos);
}

TEST_CASE("format_double pins 12 significant digits") {
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(1e100) == "1e+100");
}

// Acceptance driver: runs every criterion of the verification plan and
// prints one PASS/FAIL line each. Exit status 0 iff all pass.

#include <cstring>
#include <iostream>

#include "dioph/acceptance.hpp"

int main(int argc, char** argv) {
    std::string suite = argc > 1 ? argv[1] : "all";
    dioph::AcceptanceConfig cfg;
    for (int i = 2; i + 1 < argc; i += 2) {
        std::string k = argv[i];
        std::string v = argv[i + 1];
        if (k == "--zeta") cfg.zeta_spec = v;
        else if (k == "--bits") cfg.precision_bits = std::stol(v);
        else if (k == "--grid-step") cfg.grid_step = std::stod(v);
        else if (k == "--cache-dir") cfg.cache_dir = v;
    }
    auto results = dioph::run_acceptance(suite, cfg, std::cout);
    if (results.empty()) {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
    }
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}

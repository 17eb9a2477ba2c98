// One line per criterion; exits nonzero when any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "heightcensus/acceptance.hpp"

int main(int argc, char** argv) {
    hc::AcceptanceOptions opt;
    if (const char* w = std::getenv("HEIGHTCENSUS_WORKERS")) opt.workers = static_cast<unsigned>(std::atoi(w));
    const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    bool all = true;
    for (int id = 1; id <= 8; ++id) {
        const auto r = hc::run_criterion(id, opt);
        all = all && r.pass;
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
        std::cout << "criterion " << id << " [" << (r.pass ? "PASS" : "FAIL") << "] " << r.title << " (" << secs << ")\n";
        if (verbose || !r.pass)
            for (const auto& d : r.details) std::cout << "    " << d << "\n";
        std::cout.flush();
    }
    return all ? 0 : 1;
}

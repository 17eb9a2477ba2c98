#pragma once

// The end-to-end acceptance suite shared by the selftest command and the
// acceptance test binary. Each criterion recomputes its quantities from
// scratch and cross-checks them against independent oracles.

#include <string>
#include <vector>

#include "heightcensus/auxfn.hpp"
#include "heightcensus/census.hpp"

namespace hc {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<std::string> details;
    double seconds = 0;
};

struct AcceptanceOptions {
    unsigned workers = 1;
    unsigned long seed = 20240601;
};

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

/// What no finite run can check, stated once for the selftest report.
std::vector<std::string> limitations();

/// Point sets (at most 10 points, T <= 8) with the D and T used for each.
struct SiegelInstance {
    std::string name;
    std::vector<PointPair> points;
    int T = 1, D = 1;
    long N0 = 1;
};
std::vector<SiegelInstance> siegel_instances();

/// Points (a, a^2) with a rational, max(|num|, den) <= H and |a| <= bound.
std::vector<PointPair> parabola_points(long H, long bound);

}  // namespace hc

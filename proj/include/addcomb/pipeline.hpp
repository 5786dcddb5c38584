#pragma once

#include <string>
#include <vector>

#include "addcomb/json_io.hpp"

namespace addcomb {

struct PipelineOptions {
    Rat epsilon = Rat(1, 2);
    std::string mode = "auto"; // exact | heuristic | auto (pick by cap)
    std::uint64_t seed = 0;
    unsigned max_order = 8; // clamp for k = 2^([log ln m] + 1)
    ConnectivityCaps caps{};
};

// Full pipeline: derive the parameter schedule from epsilon and |A|, run
// connected-subset extraction then the almost-basis process, measure span
// coverage, and assemble a deterministic JSON report with every inequality
// embedded as exact integers. The headline conclusions are asserted only
// when the hypothesis ledger shows every hypothesis holds; otherwise they
// are recorded as observations.
Json run_main_pipeline(const GroupSet& a, const PipelineOptions& opts);

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    bool ok = true;
    Json to_json() const;
};

const std::vector<std::string>& known_suites();

// Runs the named suites (all of them for an empty scope); throws UsageError
// on an unknown name.
VerifyReport verify_suite(const std::vector<std::string>& scope, std::uint64_t seed);

} // namespace addcomb

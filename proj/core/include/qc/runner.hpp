#pragma once

// Seeded multi-point suite runs and their JSON reports.

#include "qc/biquard.hpp"
#include "qc/qcframe.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qc {

struct RunConfig {
    std::string example;
    std::string chart_path;
    std::optional<int> n;
    std::optional<std::string> deform;
    int points = 5;
    std::uint64_t seed = 1;
    int jet_order = 3;
    int coeff_bound = 7;
    SuiteSelection suites;
    bool cone = false;
    bool prescreen = false;
    int retries = 5;
    /// 0 picks the hardware concurrency.
    int threads = 0;
};

/// "structure,torsion,theorem,cone" or any subset; throws ConfigError.
void parse_suites(const std::string& list, RunConfig& config);

/// Throws ConfigError for invalid flag combinations.
void validate_config(const RunConfig& config);

/// Loads or generates the chart named by the config, applying the deformation.
QcChart resolve_chart(const RunConfig& config);

struct RunOutcome {
    std::string report;
    int exit_code = 0;
    /// Expected-zero checks that were nonzero or errored.
    std::vector<std::string> failures;
};

/// Deterministic given the config. Input errors propagate as exceptions.
RunOutcome run_check(const RunConfig& config);

} // namespace qc

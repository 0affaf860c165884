#pragma once

#include "wcop/config.hpp"
#include "wcop/oracle.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wcop {

inline constexpr const char* kToolVersion = "0.1.0";

struct OracleResult {
    SweepTrend lower_bound;
    CompactnessProbe compactness;
    EmpiricalConstants constants;
    /// Present when boundedness into B holds.
    std::optional<double> chain_constant;
};

struct TaskResult {
    Task task = Task::BoundedBloch;
    std::optional<Classification> classification;
    /// Reason the classifier declined to run, empty otherwise.
    std::string refused;
    std::vector<EquivalenceProbe> probes;
    std::optional<OracleResult> oracle;
    double seconds = 0.0;
};

struct Report {
    RunConfig config;
    std::vector<TaskResult> tasks;
    /// Classifier verdicts contradicted by a decided oracle trend or probe.
    std::vector<std::string> disagreements;
    /// Decided classifier verdicts the oracle could not decide.
    std::vector<std::string> uncorroborated;
    double total_seconds = 0.0;

    const TaskResult* find(Task task) const;
};

/// Runs every scheduled task. Computation errors are rethrown with the task name attached.
Report run(const RunConfig& config, Execution exec = Execution::Parallel);

/// Verdict payload: deterministic, no timings.
nlohmann::ordered_json report_json(const Report& report);
/// Wall-clock data kept out of the verdict payload.
nlohmann::ordered_json metadata_json(const Report& report);

/// Writes report.json and run_metadata.json (json) and flat tables (csv). Returns the files written.
std::vector<std::filesystem::path> emit(const Report& report, const std::filesystem::path& dir,
                                        const std::vector<std::string>& formats);

/// 0 on completion; 3 under `strict` when a classifier and an oracle or a limit-equivalence probe disagree.
int exit_code(const Report& report, bool strict);

}  // namespace wcop

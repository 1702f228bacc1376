#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floop/search.hpp"

namespace floop {

// One report object backs both renderings, so they cannot diverge.
struct RunReport {
    std::string source_path;
    std::string source_hash;
    int loop_count = 0;

    SearchConfig config;
    std::string backend;
    uint64_t seed = 0;
    double noise_amplitude = 0;
    std::string cost_model_name;
    std::string cost_model_hash;

    struct LoopRow {
        int id = 0;
        std::optional<int> parent_id;
        std::string function;
        std::optional<long long> trip_count;
        OpProfile profile;
        bool offloadable = false;
        std::vector<std::string> reasons;
    };
    std::vector<LoopRow> candidates;

    struct IntensityRow {
        int loop_id = 0;
        double value = 0;
        long long total_ops = 0;
        long long total_accesses = 0;
        bool kept = false;
    };
    std::vector<IntensityRow> intensity;  // every scored loop, value order

    struct EfficiencyRow {
        int loop_id = 0;
        double intensity = 0;
        ResourceEstimate estimate;
        double efficiency = 0;
        bool kept = false;
        bool excluded_infeasible = false;
    };
    std::vector<EfficiencyRow> efficiency;  // the top-A rows, efficiency order

    struct TrialRow {
        int pattern_id = 0;
        std::vector<int> loops;
        int round = 0;
        double predicted_ff = 0, predicted_lut = 0, predicted_dsp = 0, predicted_bram = 0;
        std::string status;
        double runtime_seconds = 0;
        double speedup = 0;
    };
    std::vector<TrialRow> trials;

    int budget_limit = 0;
    int budget_used = 0;

    struct SolutionRow {
        int pattern_id = 0;
        std::vector<int> loops;
        double runtime_seconds = 0;
        double speedup = 0;
        std::string speedup_provenance;  // "model-derived" | "measured"
        std::vector<std::string> kernel_paths;  // out-dir relative
    };
    SolutionRow solution;

    std::vector<std::string> warnings;
};

RunReport build_report(const std::string& source_path, const std::string& source_text,
                       const ProgramModel& model, const Solution& solution,
                       const std::string& backend, uint64_t seed, double noise_amplitude,
                       const std::string& cost_model_name, const std::string& cost_model_hash,
                       std::vector<std::string> chosen_kernel_paths);

// Machine-readable rendering; stable key order, no wall-clock data.
std::string report_to_json(const RunReport& report);

// Human-readable rendering of the same object.
std::string report_to_text(const RunReport& report);

// Timestamps and stage timings live apart from the deterministic report.
std::string meta_to_json(const std::map<std::string, long long>& stage_timings_us);

// Single-loop drill-down: profile, verdict, scores, where it was kept or cut.
std::string explain_loop(const RunReport& report, int loop_id);

}  // namespace floop

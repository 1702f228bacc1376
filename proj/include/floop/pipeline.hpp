#pragma once

#include <optional>
#include <string>

#include "floop/report.hpp"

namespace floop {

struct PipelineOptions {
    std::string source_path;
    SearchConfig search;
    std::string backend = "simulate";  // simulate | external
    std::string cost_model_path;       // empty: built-in example model
    std::string out_dir = "floop-out";
    std::optional<int> explain_loop_id;
    uint64_t seed = 0;
    double noise_amplitude = 0.0;
    std::string executor_command;   // required for backend=external
    std::string estimator_command;  // optional external estimator
    bool write_outputs = true;
};

struct PipelineResult {
    RunReport report;
    Solution solution;
    std::string report_json;   // the bytes written to report.json
    std::string report_text;
    std::string explain_text;  // filled when explain_loop_id is set
};

// End-to-end: parse, search, report, write outputs (report.json, report.txt,
// run_meta.json, kernels/, attempts/). Throws; map_exit_code translates.
PipelineResult run_pipeline(const PipelineOptions& options);

// 2 parse error, 3 config error, 4 executor unavailable, 1 otherwise.
int map_exit_code(const std::exception& e);

}  // namespace floop

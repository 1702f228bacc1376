#include "floop/pipeline.hpp"

#include <chrono>
#include <filesystem>

#include "floop/errors.hpp"
#include "floop/frontend.hpp"
#include "floop/simulator.hpp"
#include "floop/util.hpp"

namespace floop {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

long long elapsed_us(Clock::time_point from) {
    return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - from).count();
}

std::string pattern_dir_name(const RunReport::TrialRow& t) {
    std::string name = "p" + std::to_string(t.pattern_id);
    for (int id : t.loops) name += "_l" + std::to_string(id);
    return name;
}

}  // namespace

int map_exit_code(const std::exception& e) {
    if (dynamic_cast<const SyntaxError*>(&e) || dynamic_cast<const UnsupportedConstructError*>(&e))
        return 2;
    if (dynamic_cast<const ConfigError*>(&e)) return 3;
    if (dynamic_cast<const ExecutorUnavailableError*>(&e)) return 4;
    return 1;
}

PipelineResult run_pipeline(const PipelineOptions& options) {
    std::map<std::string, long long> timings;
    auto t0 = Clock::now();

    std::string source;
    try {
        source = read_file(options.source_path);
    } catch (const Error& e) {
        throw SyntaxError({0, 0}, e.what());  // unreadable source maps to the parse bucket
    }
    ProgramModel model = parse_program(source);
    timings["parse_us"] = elapsed_us(t0);

    CostModel cm = options.cost_model_path.empty()
                       ? cost_model_from_json(default_cost_model_json())
                       : load_cost_model(options.cost_model_path);

    options.search.validate();
    if (options.backend != "simulate" && options.backend != "external")
        throw ConfigError("unknown backend '" + options.backend + "'");
    if (options.backend == "external" && options.executor_command.empty())
        throw ExecutorUnavailableError("backend 'external' needs an executor command");

    std::unique_ptr<ResourceEstimator> estimator;
    if (options.estimator_command.empty())
        estimator = std::make_unique<CostModelEstimator>(model, cm,
                                                         options.search.resource_strategy);
    else
        estimator = std::make_unique<ExternalEstimator>(options.estimator_command,
                                                        options.search.resource_strategy);

    std::unique_ptr<PatternExecutor> executor;
    if (options.backend == "simulate") {
        SimSpec spec;
        spec.cost_model = cm;
        spec.resource_limit = options.search.resource_limit;
        spec.resource_strategy = options.search.resource_strategy;
        spec.noise_amplitude = options.noise_amplitude;
        spec.noise_seed = options.seed;
        executor = std::make_unique<SimulatorExecutor>(std::move(spec));
    } else {
        executor = std::make_unique<ExternalExecutor>(options.executor_command);
    }

    auto t1 = Clock::now();
    Solution solution = run_search(model, options.search, *estimator, *executor);
    solution.cost_model_hash = cm.hash;
    timings["search_us"] = elapsed_us(t1);

    auto t2 = Clock::now();
    std::vector<std::string> kernel_paths;
    for (int id : solution.chosen.loops)
        kernel_paths.push_back("kernels/kernel_loop_" + std::to_string(id) + ".cl");

    PipelineResult result;
    result.report = build_report(options.source_path, source, model, solution, options.backend,
                                 options.seed, options.noise_amplitude, cm.name, cm.hash,
                                 kernel_paths);
    result.report_json = report_to_json(result.report);
    result.report_text = report_to_text(result.report);
    if (options.explain_loop_id)
        result.explain_text = explain_loop(result.report, *options.explain_loop_id);
    timings["report_us"] = elapsed_us(t2);

    if (options.write_outputs) {
        auto t3 = Clock::now();
        fs::create_directories(options.out_dir);
        write_file(options.out_dir + "/report.json", result.report_json);
        write_file(options.out_dir + "/report.txt", result.report_text);

        fs::create_directories(options.out_dir + "/kernels");
        for (int id : solution.chosen.loops) {
            OffloadUnit unit = split_kernel_host(model, id, options.search.unroll);
            write_file(options.out_dir + "/kernels/kernel_loop_" + std::to_string(id) + ".cl",
                       render_kernel(unit.kernel));
            write_file(options.out_dir + "/kernels/host_plan_loop_" + std::to_string(id) + ".json",
                       host_plan_to_json(unit.host));
        }

        // losing patterns stay inspectable
        for (const auto& t : result.report.trials) {
            if (t.pattern_id == result.report.solution.pattern_id || t.loops.empty()) continue;
            std::string dir = options.out_dir + "/attempts/" + pattern_dir_name(t);
            fs::create_directories(dir);
            for (int id : t.loops) {
                OffloadUnit unit = split_kernel_host(model, id, options.search.unroll);
                write_file(dir + "/kernel_loop_" + std::to_string(id) + ".cl",
                           render_kernel(unit.kernel));
            }
        }
        timings["write_us"] = elapsed_us(t3);
        write_file(options.out_dir + "/run_meta.json", meta_to_json(timings));
    }

    result.solution = std::move(solution);
    return result;
}

}  // namespace floop

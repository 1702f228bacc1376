#include <CLI11.hpp>
#include <iostream>

#include "floop/errors.hpp"
#include "floop/frontend.hpp"
#include "floop/pipeline.hpp"
#include "floop/util.hpp"

namespace {

int run_command(const floop::PipelineOptions& opts) {
    try {
        floop::PipelineResult result = floop::run_pipeline(opts);
        std::cout << result.report_text;
        if (!result.explain_text.empty()) std::cout << "\n" << result.explain_text;
        if (opts.write_outputs)
            std::cout << "\noutputs written to " << opts.out_dir << "/\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "floop: " << e.what() << "\n";
        return floop::map_exit_code(e);
    }
}

int parse_command(const std::string& source_path, bool pretty) {
    try {
        floop::ProgramModel model = floop::parse_program(floop::read_file(source_path));
        if (pretty) std::cout << floop::pretty_print(model);
        else std::cout << floop::model_to_json(model) << "\n";
        return 0;
    } catch (const floop::SyntaxError& e) {
        std::cerr << "floop: " << e.what() << "\n";
        return 2;
    } catch (const floop::UnsupportedConstructError& e) {
        std::cerr << "floop: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "floop: " << e.what() << "\n";
        return floop::map_exit_code(e);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"floop finds which loops of a C-subset program to offload to an FPGA:\n"
                 "it ranks loops by arithmetic intensity, estimates kernel resources,\n"
                 "narrows by resource efficiency and measures a budgeted set of offload\n"
                 "patterns, keeping the fastest."};
    app.require_subcommand(1);

    floop::PipelineOptions opts;
    int explain_id = -1;

    auto* run = app.add_subcommand("run", "search for the best offload pattern");
    run->add_option("source", opts.source_path, "C-subset source file")->required();
    run->set_config("--config", "", "configuration file; flags override it");
    run->add_option("--top-intensity", opts.search.top_intensity,
                    "A: keep the top-A loops by arithmetic intensity")
        ->envname("FLOOP_TOP_INTENSITY");
    run->add_option("--unroll", opts.search.unroll, "B: kernel unroll factor")
        ->envname("FLOOP_UNROLL");
    run->add_option("--top-efficiency", opts.search.top_efficiency,
                    "C: keep the top-C loops by resource efficiency")
        ->envname("FLOOP_TOP_EFFICIENCY");
    run->add_option("--budget", opts.search.budget,
                    "D: maximum measured offload patterns (baseline excluded)")
        ->envname("FLOOP_BUDGET");
    run->add_option("--resource-limit", opts.search.resource_limit,
                    "usable fraction of each device resource class")
        ->envname("FLOOP_RESOURCE_LIMIT");
    run->add_option("--accel-threshold", opts.search.accel_threshold,
                    "speedup a single must exceed to join round-2 combinations")
        ->envname("FLOOP_ACCEL_THRESHOLD");
    run->add_option("--backend", opts.backend, "simulate | external")
        ->envname("FLOOP_BACKEND");
    run->add_option("--cost-model", opts.cost_model_path, "cost model JSON file")
        ->envname("FLOOP_COST_MODEL");
    run->add_option("--out", opts.out_dir, "output directory")->envname("FLOOP_OUT");
    run->add_option("--explain", explain_id, "print a drill-down for one loop id")
        ->envname("FLOOP_EXPLAIN");
    run->add_option("--seed", opts.seed, "seed for simulator noise")->envname("FLOOP_SEED");
    run->add_option("--noise", opts.noise_amplitude,
                    "simulator noise amplitude (0 disables jitter)")
        ->envname("FLOOP_NOISE");
    run->add_option("--executor-cmd", opts.executor_command,
                    "command measuring one pattern per JSON line (backend external)")
        ->envname("FLOOP_EXECUTOR_CMD");
    run->add_option("--estimator-cmd", opts.estimator_command,
                    "command estimating resources per JSON line (replaces the cost model)")
        ->envname("FLOOP_ESTIMATOR_CMD");
    run->add_option("--intensity-strategy", opts.search.intensity_strategy,
                    "ops_per_access | ops_per_byte")
        ->envname("FLOOP_INTENSITY_STRATEGY");
    run->add_option("--resource-strategy", opts.search.resource_strategy,
                    "max | lut_only | weighted_sum")
        ->envname("FLOOP_RESOURCE_STRATEGY");

    std::string parse_source;
    bool pretty = false;
    auto* parse = app.add_subcommand("parse", "dump the parsed program model");
    parse->add_option("source", parse_source, "C-subset source file")->required();
    parse->add_flag("--pretty", pretty, "print canonical source instead of JSON");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (explain_id >= 0) opts.explain_loop_id = explain_id;
        return run_command(opts);
    }
    return parse_command(parse_source, pretty);
}

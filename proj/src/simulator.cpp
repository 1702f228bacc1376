#include "floop/simulator.hpp"

#include <random>
#include <set>

#include "floop/errors.hpp"

namespace floop {

long long transfer_bytes_per_invocation(const OffloadUnit& unit) {
    long long bytes = 0;
    for (const auto& p : unit.kernel.params) {
        if (p.direction != ParamDirection::Out) bytes += p.transfer_bytes;  // host to device
        if (p.direction != ParamDirection::In) bytes += p.transfer_bytes;   // device to host
    }
    return bytes;
}

double simulated_cpu_seconds(const ProgramModel& model, int loop_id, const TimingCosts& t) {
    const auto& loop = model.loop(loop_id);
    long long own_ops = loop.body_profile.arith_ops * loop.trip_count.value_or(1) *
                        model.execution_count(loop_id);
    return static_cast<double>(own_ops) * t.cpu_seconds_per_op;
}

double simulated_baseline_seconds(const ProgramModel& model, const TimingCosts& t) {
    double total = 0;
    for (const auto& loop : model.loops) total += simulated_cpu_seconds(model, loop.id, t);
    return total;
}

double simulated_fpga_seconds(const ProgramModel& model, const OffloadUnit& unit,
                              const TimingCosts& t) {
    auto ops = model.total_arith_ops(unit.loop_id);
    if (!ops) throw InfeasiblePatternError("loop " + std::to_string(unit.loop_id) +
                                           " has no static op count");
    double per_launch = t.kernel_launch_seconds +
                        static_cast<double>(transfer_bytes_per_invocation(unit)) *
                            t.transfer_seconds_per_byte +
                        static_cast<double>(*ops) * t.fpga_seconds_per_op /
                            static_cast<double>(unit.kernel.unroll_factor);
    return static_cast<double>(model.execution_count(unit.loop_id)) * per_launch;
}

namespace {

void collect_subtree_ids(const ProgramModel& model, int id, std::set<int>& out) {
    out.insert(id);
    for (int c : model.loop(id).children) collect_subtree_ids(model, c, out);
}

}  // namespace

MeasurementResult simulate_runtime(const ProgramModel& model, const OffloadPattern& pattern,
                                   const std::vector<OffloadUnit>& units, const SimSpec& spec) {
    for (const auto& unit : units) {
        ResourceEstimate est =
            estimate_resources(unit, model, spec.cost_model, spec.resource_strategy);
        if (!est.feasible(spec.resource_limit))
            throw InfeasiblePatternError("loop " + std::to_string(unit.loop_id) +
                                         " exceeds the resource limit");
    }

    std::set<int> covered;
    for (const auto& unit : units) collect_subtree_ids(model, unit.loop_id, covered);

    double runtime = 0;
    for (const auto& loop : model.loops)
        if (!covered.count(loop.id))
            runtime += simulated_cpu_seconds(model, loop.id, spec.cost_model.timing);
    for (const auto& unit : units)
        runtime += simulated_fpga_seconds(model, unit, spec.cost_model.timing);

    if (spec.noise_amplitude > 0) {
        uint64_t h = spec.noise_seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
        for (int id : pattern.loops) h = (h ^ static_cast<uint64_t>(id)) * 0x100000001b3ull;
        std::mt19937_64 rng(h);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        runtime *= 1.0 + spec.noise_amplitude * u(rng);
    }

    MeasurementResult r;
    r.pattern_id = pattern.id;
    r.status = MeasureStatus::Ok;
    r.runtime_seconds = runtime;
    return r;
}

MeasurementResult SimulatorExecutor::measure(const ProgramModel& model,
                                             const OffloadPattern& pattern,
                                             const std::vector<OffloadUnit>& units) {
    try {
        return simulate_runtime(model, pattern, units, spec_);
    } catch (const InfeasiblePatternError&) {
        MeasurementResult r;
        r.pattern_id = pattern.id;
        r.status = MeasureStatus::CompileFailed;
        return r;
    }
}

}  // namespace floop

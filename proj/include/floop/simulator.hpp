#pragma once

#include "floop/search.hpp"

namespace floop {

// Deterministic timing model: with noise off, identical inputs give
// bit-identical runtimes.
struct SimSpec {
    CostModel cost_model;
    double resource_limit = 1.0;
    std::string resource_strategy = "max";
    double noise_amplitude = 0.0;  // multiplicative jitter, off by default
    uint64_t noise_seed = 0;
};

// Per-loop terms. The model prices loop arithmetic only; unknown trip counts
// count as a single iteration.
double simulated_cpu_seconds(const ProgramModel& model, int loop_id, const TimingCosts& t);
double simulated_fpga_seconds(const ProgramModel& model, const OffloadUnit& unit,
                              const TimingCosts& t);
double simulated_baseline_seconds(const ProgramModel& model, const TimingCosts& t);
long long transfer_bytes_per_invocation(const OffloadUnit& unit);

// runtime = sum of cpu terms of non-offloaded loops
//         + per unit: exec_count x (launch + bytes x s/byte + ops x s/op / B).
// Throws InfeasiblePatternError when a unit exceeds the resource limit.
MeasurementResult simulate_runtime(const ProgramModel& model, const OffloadPattern& pattern,
                                   const std::vector<OffloadUnit>& units, const SimSpec& spec);

class SimulatorExecutor final : public PatternExecutor {
  public:
    explicit SimulatorExecutor(SimSpec spec) : spec_(std::move(spec)) {}
    MeasurementResult measure(const ProgramModel& model, const OffloadPattern& pattern,
                              const std::vector<OffloadUnit>& units) override;
    int capacity() const override { return 64; }  // pure function of its arguments
    std::string backend_name() const override { return "simulate"; }
    const SimSpec& spec() const { return spec_; }

  private:
    SimSpec spec_;
};

}  // namespace floop

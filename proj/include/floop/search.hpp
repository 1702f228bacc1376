#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "floop/resources.hpp"

namespace floop {

struct SearchConfig {
    int top_intensity = 5;       // A: intensity cut
    int unroll = 1;              // B: kernel unroll factor
    int top_efficiency = 3;      // C: efficiency cut
    int budget = 4;              // D: non-baseline measurements
    double resource_limit = 1.0;
    double accel_threshold = 1.0;  // "accelerated" means speedup strictly above this
    bool failed_measurements_consume_budget = true;
    std::string intensity_strategy = "ops_per_access";
    std::string resource_strategy = "max";

    void validate() const;  // 1 <= C <= A, 1 <= D, C <= D; throws ConfigError
};

struct OffloadPattern {
    int id = 0;                  // 0 is the CPU baseline
    std::vector<int> loops;      // offloaded loop ids, ascending
    int round = 0;               // 0 baseline, 1 singles, 2 combinations
    double ff = 0, lut = 0, dsp = 0, bram = 0;  // summed predicted fractions

    bool feasible(double limit) const {
        return ff <= limit && lut <= limit && dsp <= limit && bram <= limit;
    }
};

enum class MeasureStatus { Ok, CompileFailed, RunFailed };
const char* measure_status_name(MeasureStatus s);

struct MeasurementResult {
    int pattern_id = 0;
    MeasureStatus status = MeasureStatus::Ok;
    double runtime_seconds = 0;
    double speedup = 0;  // baseline / runtime; defined for status Ok
};

struct TrialRecord {
    OffloadPattern pattern;
    MeasurementResult result;
};

struct SearchTrace {
    std::vector<IntensityScore> scored;  // every offloadable loop
    std::vector<int> top_by_intensity;
    struct EstimateRow {
        int loop_id = 0;
        ResourceEstimate estimate;
        double efficiency = 0;
    };
    std::vector<EstimateRow> estimated;  // the top-A rows
    std::vector<int> top_by_efficiency;
    std::vector<int> excluded_infeasible_singles;
};

struct Solution {
    OffloadPattern chosen;
    MeasurementResult chosen_result;
    std::vector<TrialRecord> trials;  // execution order, baseline first
    SearchConfig config;
    std::string cost_model_hash;
    std::vector<std::string> warnings;
    SearchTrace trace;
};

// Measurement backend. Implementations: SimulatorExecutor (simulator.hpp) and
// ExternalExecutor (a configured command per pattern).
class PatternExecutor {
  public:
    virtual ~PatternExecutor() = default;
    virtual MeasurementResult measure(const ProgramModel& model, const OffloadPattern& pattern,
                                      const std::vector<OffloadUnit>& units) = 0;
    virtual int capacity() const { return 1; }
    virtual std::string backend_name() const = 0;
};

class ExternalExecutor final : public PatternExecutor {
  public:
    explicit ExternalExecutor(std::string command) : command_(std::move(command)) {}
    MeasurementResult measure(const ProgramModel& model, const OffloadPattern& pattern,
                              const std::vector<OffloadUnit>& units) override;
    std::string backend_name() const override { return "external"; }

  private:
    std::string command_;
};

// One single-loop pattern per candidate, efficiency order, infeasible singles
// excluded (ids recorded in excluded), truncated to min(C, D).
std::vector<OffloadPattern> enumerate_round1(const std::vector<EfficiencyEntry>& candidates,
                                             const std::map<int, ResourceEstimate>& estimates,
                                             const SearchConfig& config, int first_pattern_id,
                                             std::vector<int>* excluded);

// Subsets (size >= 2) of the singles that accelerated, resource-feasible and
// free of ancestor-descendant overlap, ranked by summed single speedups,
// truncated to the remaining budget.
std::vector<OffloadPattern> enumerate_round2(const std::vector<TrialRecord>& round1_results,
                                             const std::map<int, ResourceEstimate>& estimates,
                                             const SearchConfig& config, const ProgramModel& model,
                                             int remaining_budget, int first_pattern_id);

// Minimum runtime among status-ok results; ties prefer fewer offloaded loops,
// then lexicographically smaller loop-id sets. Baseline must be present.
std::pair<OffloadPattern, MeasurementResult> select_solution(
    const std::vector<TrialRecord>& trials);

// Full pipeline: offloadability filter, intensity top-A, codegen + estimate,
// efficiency top-C, round 1, round 2, selection.
Solution run_search(const ProgramModel& model, const SearchConfig& config,
                    ResourceEstimator& estimator, PatternExecutor& executor);

}  // namespace floop

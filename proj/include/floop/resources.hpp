#pragma once

#include <memory>
#include <string>
#include <vector>

#include "floop/cost_model.hpp"
#include "floop/intensity.hpp"

namespace floop {

struct ResourceEstimate {
    ResourceUnits units;  // base overhead + op costs, per class
    double ff = 0, lut = 0, dsp = 0, bram = 0;  // fractions of capacity
    double scalar_amount = 0;                   // strategy-collapsed fraction

    double fraction(int cls) const;  // 0=ff 1=lut 2=dsp 3=bram
    bool feasible(double resource_limit) const;
};

// Collapses the four class fractions into the single "resource amount".
// Strategies: max (default), lut_only, weighted_sum.
double collapse_resource_amount(const ResourceEstimate& est, const std::string& strategy);
bool is_resource_strategy(const std::string& name);

// usage_c = (base_overhead_c + sum of op costs_c) / capacity_c, per class.
// Epilogue ops included. Throws UnknownOpKindError on a missing table entry.
ResourceEstimate estimate_resources(const OffloadUnit& unit, const ProgramModel& model,
                                    const CostModel& cm,
                                    const std::string& scalar_strategy = "max");

// intensity / scalar resource amount. Throws ZeroResourceError.
double resource_efficiency(const IntensityScore& intensity, const ResourceEstimate& est);

struct EfficiencyEntry {
    int loop_id = 0;
    double efficiency = 0;
};

// Top min(C, n) by efficiency descending, ties by ascending loop id.
std::vector<EfficiencyEntry> rank_by_efficiency(std::vector<EfficiencyEntry> entries, int top_c);

// ---------------------------------------------------------------------------
// Estimation backends. The in-process backend prices the cost model; the
// external backend is the seam for a real pre-compile flow.
// ---------------------------------------------------------------------------
class ResourceEstimator {
  public:
    virtual ~ResourceEstimator() = default;
    virtual ResourceEstimate estimate(const OffloadUnit& unit) = 0;
    virtual int capacity() const { return 1; }
};

class CostModelEstimator final : public ResourceEstimator {
  public:
    CostModelEstimator(const ProgramModel& model, CostModel cm, std::string strategy = "max")
        : model_(model), cm_(std::move(cm)), strategy_(std::move(strategy)) {}
    ResourceEstimate estimate(const OffloadUnit& unit) override {
        return estimate_resources(unit, model_, cm_, strategy_);
    }
    int capacity() const override { return 64; }  // pure function

  private:
    const ProgramModel& model_;
    CostModel cm_;
    std::string strategy_;
};

// Request: serialized OffloadUnit, one line on the child's stdin.
// Response: one JSON line {"ff":f,"lut":f,"dsp":f,"bram":f} of fractions.
class ExternalEstimator final : public ResourceEstimator {
  public:
    ExternalEstimator(std::string command, std::string strategy = "max", int concurrency = 1)
        : command_(std::move(command)), strategy_(std::move(strategy)),
          concurrency_(concurrency) {}
    ResourceEstimate estimate(const OffloadUnit& unit) override;
    int capacity() const override { return concurrency_; }

  private:
    std::string command_;
    std::string strategy_;
    int concurrency_;
};

}  // namespace floop

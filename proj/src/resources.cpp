#include "floop/resources.hpp"

#include <algorithm>

#include "floop/errors.hpp"
#include "floop/json_io.hpp"
#include "floop/util.hpp"

namespace floop {

double ResourceEstimate::fraction(int cls) const {
    switch (cls) {
        case 0: return ff;
        case 1: return lut;
        case 2: return dsp;
        default: return bram;
    }
}

bool ResourceEstimate::feasible(double resource_limit) const {
    return ff <= resource_limit && lut <= resource_limit && dsp <= resource_limit &&
           bram <= resource_limit;
}

double collapse_resource_amount(const ResourceEstimate& est, const std::string& strategy) {
    if (strategy == "max" || strategy.empty())
        return std::max({est.ff, est.lut, est.dsp, est.bram});
    if (strategy == "lut_only") return est.lut;
    if (strategy == "weighted_sum") return (est.ff + est.lut + est.dsp + est.bram) / 4.0;
    throw ConfigError("unknown resource strategy '" + strategy + "'");
}

bool is_resource_strategy(const std::string& name) {
    return name == "max" || name == "lut_only" || name == "weighted_sum";
}

ResourceEstimate estimate_resources(const OffloadUnit& unit, const ProgramModel& model,
                                    const CostModel& cm, const std::string& scalar_strategy) {
    ResourceEstimate est;
    est.units = cm.base_overhead;
    for (const auto& op : enumerate_static_ops(unit.kernel, model))
        est.units += cm.cost_of(op.kind, op.type).scaled(op.count);

    est.ff = static_cast<double>(est.units.ff) / static_cast<double>(cm.capacity.ff);
    est.lut = static_cast<double>(est.units.lut) / static_cast<double>(cm.capacity.lut);
    est.dsp = static_cast<double>(est.units.dsp) / static_cast<double>(cm.capacity.dsp);
    est.bram = static_cast<double>(est.units.bram) / static_cast<double>(cm.capacity.bram);
    est.scalar_amount = collapse_resource_amount(est, scalar_strategy);
    return est;
}

double resource_efficiency(const IntensityScore& intensity, const ResourceEstimate& est) {
    if (est.scalar_amount <= 0.0) throw ZeroResourceError();
    return intensity.value / est.scalar_amount;
}

std::vector<EfficiencyEntry> rank_by_efficiency(std::vector<EfficiencyEntry> entries, int top_c) {
    if (top_c < 1) throw ConfigError("efficiency cut C must be >= 1");
    std::sort(entries.begin(), entries.end(), [](const EfficiencyEntry& a, const EfficiencyEntry& b) {
        if (a.efficiency != b.efficiency) return a.efficiency > b.efficiency;
        return a.loop_id < b.loop_id;
    });
    if (entries.size() > static_cast<size_t>(top_c)) entries.resize(top_c);
    return entries;
}

ResourceEstimate ExternalEstimator::estimate(const OffloadUnit& unit) {
    auto result = run_line_process(command_, unit_to_json(unit));
    if (!result.spawned)
        throw ExecutorUnavailableError("estimator command failed: " + command_);
    ojson j;
    try {
        j = ojson::parse(result.output);
    } catch (const std::exception&) {
        throw Error("estimator returned malformed response: " + result.output);
    }
    ResourceEstimate est;
    est.ff = j.value("ff", 0.0);
    est.lut = j.value("lut", 0.0);
    est.dsp = j.value("dsp", 0.0);
    est.bram = j.value("bram", 0.0);
    est.scalar_amount = collapse_resource_amount(est, strategy_);
    return est;
}

}  // namespace floop

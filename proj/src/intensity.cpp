#include "floop/intensity.hpp"

#include <algorithm>

#include "floop/errors.hpp"

namespace floop {

IntensityScore compute_intensity(const LoopCandidate& loop) {
    if (!loop.verdict.offloadable || !loop.trip_count) throw NotOffloadableError(loop.id);
    IntensityScore s;
    s.loop_id = loop.id;
    s.total_ops = loop.body_profile.arith_ops * *loop.trip_count;
    s.total_accesses = loop.body_profile.mem_accesses * *loop.trip_count;
    s.value = static_cast<double>(s.total_ops) /
              static_cast<double>(std::max<long long>(s.total_accesses, 1));
    return s;
}

IntensityScore compute_intensity_with(const std::string& strategy, const LoopCandidate& loop,
                                      const ProgramModel& model) {
    if (strategy == "ops_per_access" || strategy.empty()) return compute_intensity(loop);
    if (strategy == "ops_per_byte") {
        IntensityScore s = compute_intensity(loop);
        long long bytes = 0;
        for (const auto& acc : loop.accessed_vars) bytes += model.var(acc.var).byte_size;
        s.value = static_cast<double>(s.total_ops) /
                  static_cast<double>(std::max<long long>(bytes, 1));
        return s;
    }
    throw ConfigError("unknown intensity strategy '" + strategy + "'");
}

bool is_intensity_strategy(const std::string& name) {
    return name == "ops_per_access" || name == "ops_per_byte";
}

std::vector<IntensityScore> rank_by_intensity(std::vector<IntensityScore> scores, int top_a) {
    if (top_a < 1) throw ConfigError("intensity cut A must be >= 1");
    std::sort(scores.begin(), scores.end(), [](const IntensityScore& a, const IntensityScore& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.loop_id < b.loop_id;
    });
    if (scores.size() > static_cast<size_t>(top_a)) scores.resize(top_a);
    return scores;
}

}  // namespace floop

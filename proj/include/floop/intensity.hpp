#pragma once

#include <string>
#include <vector>

#include "floop/model.hpp"

namespace floop {

struct IntensityScore {
    int loop_id = 0;
    double value = 0;
    long long total_ops = 0;       // arith_ops x trip_count
    long long total_accesses = 0;  // mem_accesses x trip_count
};

// Default strategy (`ops_per_access`): total ops / max(total accesses, 1).
// Throws NotOffloadableError when the verdict failed.
IntensityScore compute_intensity(const LoopCandidate& loop);

// Named strategy dispatch; `ops_per_byte` divides total ops by the accessed
// working-set bytes instead.
IntensityScore compute_intensity_with(const std::string& strategy, const LoopCandidate& loop,
                                      const ProgramModel& model);

bool is_intensity_strategy(const std::string& name);

// Top min(A, n) scores, value descending, ties by ascending loop id.
std::vector<IntensityScore> rank_by_intensity(std::vector<IntensityScore> scores, int top_a);

}  // namespace floop

#include "floop/search.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "floop/errors.hpp"
#include "floop/frontend.hpp"
#include "floop/json_io.hpp"
#include "floop/util.hpp"

namespace floop {

const char* measure_status_name(MeasureStatus s) {
    switch (s) {
        case MeasureStatus::Ok: return "ok";
        case MeasureStatus::CompileFailed: return "compile_failed";
        case MeasureStatus::RunFailed: return "run_failed";
    }
    return "?";
}

void SearchConfig::validate() const {
    if (top_intensity < 1) throw ConfigError("A (top-intensity) must be >= 1");
    if (unroll < 1) throw ConfigError("B (unroll) must be >= 1");
    if (top_efficiency < 1) throw ConfigError("C (top-efficiency) must be >= 1");
    if (top_efficiency > top_intensity) throw ConfigError("C must not exceed A");
    if (budget < 1) throw ConfigError("D (budget) must be >= 1");
    if (top_efficiency > budget) throw ConfigError("C must not exceed D");
    if (resource_limit <= 0) throw ConfigError("resource limit must be positive");
    if (!is_intensity_strategy(intensity_strategy))
        throw ConfigError("unknown intensity strategy '" + intensity_strategy + "'");
    if (!is_resource_strategy(resource_strategy))
        throw ConfigError("unknown resource strategy '" + resource_strategy + "'");
}

namespace {

void add_fractions(OffloadPattern& p, const ResourceEstimate& est) {
    p.ff += est.ff;
    p.lut += est.lut;
    p.dsp += est.dsp;
    p.bram += est.bram;
}

bool subtrees_overlap(const ProgramModel& model, const std::vector<int>& loops) {
    // a pattern may not contain a loop together with one of its ancestors
    for (int id : loops) {
        std::optional<int> p = model.loop(id).parent_id;
        while (p) {
            if (std::find(loops.begin(), loops.end(), *p) != loops.end()) return true;
            p = model.loop(*p).parent_id;
        }
    }
    return false;
}

}  // namespace

std::vector<OffloadPattern> enumerate_round1(const std::vector<EfficiencyEntry>& candidates,
                                             const std::map<int, ResourceEstimate>& estimates,
                                             const SearchConfig& config, int first_pattern_id,
                                             std::vector<int>* excluded) {
    if (candidates.empty()) throw NoCandidatesError();
    std::vector<OffloadPattern> out;
    int id = first_pattern_id;
    for (const auto& cand : candidates) {
        const auto& est = estimates.at(cand.loop_id);
        if (!est.feasible(config.resource_limit)) {
            if (excluded) excluded->push_back(cand.loop_id);
            continue;
        }
        OffloadPattern p;
        p.id = id;
        p.loops = {cand.loop_id};
        p.round = 1;
        add_fractions(p, est);
        if (static_cast<int>(out.size()) <
            std::min(config.top_efficiency, config.budget)) {
            out.push_back(std::move(p));
            ++id;
        }
    }
    return out;
}

std::vector<OffloadPattern> enumerate_round2(const std::vector<TrialRecord>& round1_results,
                                             const std::map<int, ResourceEstimate>& estimates,
                                             const SearchConfig& config, const ProgramModel& model,
                                             int remaining_budget, int first_pattern_id) {
    if (remaining_budget <= 0) return {};

    struct Single {
        int loop_id;
        double speedup;
    };
    std::vector<Single> accelerated;
    for (const auto& rec : round1_results)
        if (rec.result.status == MeasureStatus::Ok && rec.pattern.loops.size() == 1 &&
            rec.result.speedup > config.accel_threshold)
            accelerated.push_back({rec.pattern.loops[0], rec.result.speedup});
    if (accelerated.size() < 2) return {};

    struct Combo {
        std::vector<int> loops;
        double speedup_sum;
        OffloadPattern pattern;
    };
    std::vector<Combo> combos;
    const size_t n = accelerated.size();
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
        if (__builtin_popcountll(mask) < 2) continue;
        Combo c;
        c.speedup_sum = 0;
        for (size_t b = 0; b < n; ++b)
            if (mask & (size_t{1} << b)) {
                c.loops.push_back(accelerated[b].loop_id);
                c.speedup_sum += accelerated[b].speedup;
            }
        std::sort(c.loops.begin(), c.loops.end());
        if (subtrees_overlap(model, c.loops)) continue;
        c.pattern.loops = c.loops;
        c.pattern.round = 2;
        for (int lid : c.loops) add_fractions(c.pattern, estimates.at(lid));
        if (!c.pattern.feasible(config.resource_limit)) continue;
        combos.push_back(std::move(c));
    }

    std::sort(combos.begin(), combos.end(), [](const Combo& a, const Combo& b) {
        if (a.speedup_sum != b.speedup_sum) return a.speedup_sum > b.speedup_sum;
        return std::lexicographical_compare(a.loops.begin(), a.loops.end(), b.loops.begin(),
                                            b.loops.end());
    });
    if (combos.size() > static_cast<size_t>(remaining_budget)) combos.resize(remaining_budget);

    std::vector<OffloadPattern> out;
    int id = first_pattern_id;
    for (auto& c : combos) {
        c.pattern.id = id++;
        out.push_back(std::move(c.pattern));
    }
    return out;
}

std::pair<OffloadPattern, MeasurementResult> select_solution(
    const std::vector<TrialRecord>& trials) {
    const TrialRecord* best = nullptr;
    for (const auto& rec : trials) {
        if (rec.result.status != MeasureStatus::Ok) continue;
        if (!best) {
            best = &rec;
            continue;
        }
        if (rec.result.runtime_seconds != best->result.runtime_seconds) {
            if (rec.result.runtime_seconds < best->result.runtime_seconds) best = &rec;
            continue;
        }
        if (rec.pattern.loops.size() != best->pattern.loops.size()) {
            if (rec.pattern.loops.size() < best->pattern.loops.size()) best = &rec;
            continue;
        }
        if (std::lexicographical_compare(rec.pattern.loops.begin(), rec.pattern.loops.end(),
                                         best->pattern.loops.begin(), best->pattern.loops.end()))
            best = &rec;
    }
    if (!best) throw Error("no successful measurement to select from");
    return {best->pattern, best->result};
}

namespace {

// Measures a batch, honoring the executor's declared capacity. Results are
// appended in enumeration order either way.
void measure_patterns(const ProgramModel& model, PatternExecutor& executor,
                      const std::vector<OffloadPattern>& patterns,
                      const std::map<int, OffloadUnit>& units_by_loop, double baseline_runtime,
                      std::vector<TrialRecord>& log) {
    auto units_for = [&](const OffloadPattern& p) {
        std::vector<OffloadUnit> units;
        for (int lid : p.loops) units.push_back(clone(units_by_loop.at(lid)));
        return units;
    };

    auto run_one = [&](const OffloadPattern& p) -> MeasurementResult {
        try {
            MeasurementResult r = executor.measure(model, p, units_for(p));
            r.pattern_id = p.id;
            if (r.status == MeasureStatus::Ok && r.runtime_seconds > 0)
                r.speedup = baseline_runtime / r.runtime_seconds;
            return r;
        } catch (const ExecutorUnavailableError&) {
            throw;
        } catch (const InfeasiblePatternError&) {
            MeasurementResult r;
            r.pattern_id = p.id;
            r.status = MeasureStatus::CompileFailed;
            return r;
        } catch (const std::exception&) {
            MeasurementResult r;
            r.pattern_id = p.id;
            r.status = MeasureStatus::RunFailed;
            return r;
        }
    };

    int cap = std::max(1, executor.capacity());
    if (cap == 1 || patterns.size() <= 1) {
        for (const auto& p : patterns) log.push_back({p, run_one(p)});
        return;
    }
    for (size_t i = 0; i < patterns.size(); i += static_cast<size_t>(cap)) {
        size_t end = std::min(patterns.size(), i + static_cast<size_t>(cap));
        std::vector<std::future<MeasurementResult>> futs;
        for (size_t k = i; k < end; ++k)
            futs.push_back(std::async(std::launch::async, run_one, std::cref(patterns[k])));
        for (size_t k = i; k < end; ++k) log.push_back({patterns[k], futs[k - i].get()});
    }
}

int consumed(const std::vector<TrialRecord>& log, const SearchConfig& config) {
    int used = 0;
    for (const auto& rec : log) {
        if (rec.pattern.round == 0) continue;  // baseline is free
        if (rec.result.status == MeasureStatus::Ok || config.failed_measurements_consume_budget)
            ++used;
    }
    return used;
}

}  // namespace

Solution run_search(const ProgramModel& model, const SearchConfig& config,
                    ResourceEstimator& estimator, PatternExecutor& executor) {
    config.validate();

    Solution sol;
    sol.config = config;

    // baseline first; it anchors every speedup
    OffloadPattern baseline;
    baseline.id = 0;
    baseline.round = 0;
    MeasurementResult base = executor.measure(model, baseline, {});
    base.pattern_id = 0;
    if (base.status != MeasureStatus::Ok)
        throw ExecutorUnavailableError("baseline measurement failed");
    base.speedup = 1.0;
    sol.trials.push_back({baseline, base});

    std::vector<const LoopCandidate*> offloadable;
    for (const auto& loop : model.loops)
        if (loop.verdict.offloadable) offloadable.push_back(&loop);

    if (offloadable.empty()) {
        sol.warnings.push_back("no offloadable loops; baseline kept");
        std::tie(sol.chosen, sol.chosen_result) = select_solution(sol.trials);
        return sol;
    }

    for (const auto* loop : offloadable)
        sol.trace.scored.push_back(
            compute_intensity_with(config.intensity_strategy, *loop, model));

    auto top_a = rank_by_intensity(sol.trace.scored, config.top_intensity);
    for (const auto& s : top_a) sol.trace.top_by_intensity.push_back(s.loop_id);

    std::map<int, OffloadUnit> units_by_loop;
    std::map<int, ResourceEstimate> estimates;
    std::vector<EfficiencyEntry> entries;
    for (const auto& s : top_a) {
        OffloadUnit unit = split_kernel_host(model, s.loop_id, config.unroll);
        ResourceEstimate est = estimator.estimate(unit);
        double eff = resource_efficiency(s, est);
        sol.trace.estimated.push_back({s.loop_id, est, eff});
        estimates.emplace(s.loop_id, est);
        units_by_loop.emplace(s.loop_id, std::move(unit));
        entries.push_back({s.loop_id, eff});
    }

    auto top_c = rank_by_efficiency(entries, config.top_efficiency);
    for (const auto& e : top_c) sol.trace.top_by_efficiency.push_back(e.loop_id);

    auto round1 = enumerate_round1(top_c, estimates, config, 1,
                                   &sol.trace.excluded_infeasible_singles);
    for (int lid : sol.trace.excluded_infeasible_singles)
        sol.warnings.push_back("loop " + std::to_string(lid) +
                               " excluded from round 1: single-kernel estimate exceeds the "
                               "resource limit");

    measure_patterns(model, executor, round1, units_by_loop, base.runtime_seconds, sol.trials);

    int remaining = config.budget - consumed(sol.trials, config);
    std::vector<TrialRecord> round1_records(sol.trials.begin() + 1, sol.trials.end());
    int next_id = round1.empty() ? 1 : round1.back().id + 1;
    auto round2 = enumerate_round2(round1_records, estimates, config, model, remaining, next_id);

    measure_patterns(model, executor, round2, units_by_loop, base.runtime_seconds, sol.trials);

    std::tie(sol.chosen, sol.chosen_result) = select_solution(sol.trials);
    return sol;
}

// ---------------------------------------------------------------------------
// External executor: one command invocation per pattern. Request is a single
// JSON line; response is a single JSON line {"status":..,"runtime_seconds":..}.
// ---------------------------------------------------------------------------

MeasurementResult ExternalExecutor::measure(const ProgramModel& model,
                                            const OffloadPattern& pattern,
                                            const std::vector<OffloadUnit>& units) {
    ojson req;
    req["model"] = model_to_ojson(model);
    ojson pj;
    pj["id"] = pattern.id;
    pj["loops"] = pattern.loops;
    pj["round"] = pattern.round;
    req["pattern"] = std::move(pj);
    ojson uj = ojson::array();
    for (const auto& u : units) uj.push_back(ojson::parse(unit_to_json(u)));
    req["units"] = std::move(uj);
    req["sample_inputs"] = nullptr;  // reserved for benchmark input bindings

    auto result = run_line_process(command_, req.dump());
    if (!result.spawned)
        throw ExecutorUnavailableError("executor command failed to start: " + command_);

    MeasurementResult r;
    r.pattern_id = pattern.id;
    try {
        ojson resp = ojson::parse(result.output);
        std::string status = resp.value("status", std::string("run_failed"));
        if (status == "ok") {
            r.status = MeasureStatus::Ok;
            r.runtime_seconds = resp.at("runtime_seconds").get<double>();
        } else if (status == "compile_failed") {
            r.status = MeasureStatus::CompileFailed;
        } else {
            r.status = MeasureStatus::RunFailed;
        }
    } catch (const std::exception&) {
        r.status = MeasureStatus::RunFailed;
    }
    return r;
}

}  // namespace floop

#include "floop/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "floop/json_io.hpp"
#include "floop/util.hpp"

namespace floop {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string loops_label(const std::vector<int>& loops) {
    if (loops.empty()) return "(baseline)";
    std::string s = "{";
    for (size_t i = 0; i < loops.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(loops[i]);
    }
    return s + "}";
}

}  // namespace

RunReport build_report(const std::string& source_path, const std::string& source_text,
                       const ProgramModel& model, const Solution& solution,
                       const std::string& backend, uint64_t seed, double noise_amplitude,
                       const std::string& cost_model_name, const std::string& cost_model_hash,
                       std::vector<std::string> chosen_kernel_paths) {
    RunReport r;
    r.source_path = source_path;
    r.source_hash = fnv1a64_hex(source_text);
    r.loop_count = static_cast<int>(model.loops.size());
    r.config = solution.config;
    r.backend = backend;
    r.seed = seed;
    r.noise_amplitude = noise_amplitude;
    r.cost_model_name = cost_model_name;
    r.cost_model_hash = cost_model_hash;
    r.warnings = solution.warnings;

    for (const auto& loop : model.loops) {
        RunReport::LoopRow row;
        row.id = loop.id;
        row.parent_id = loop.parent_id;
        row.function = loop.function_name;
        row.trip_count = loop.trip_count;
        row.profile = loop.body_profile;
        row.offloadable = loop.verdict.offloadable;
        for (auto d : loop.verdict.reasons) row.reasons.push_back(disqualifier_code(d));
        r.candidates.push_back(std::move(row));
    }

    auto kept_intensity = [&](int id) {
        return std::find(solution.trace.top_by_intensity.begin(),
                         solution.trace.top_by_intensity.end(),
                         id) != solution.trace.top_by_intensity.end();
    };
    std::vector<IntensityScore> scored = solution.trace.scored;
    std::sort(scored.begin(), scored.end(), [](const IntensityScore& a, const IntensityScore& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.loop_id < b.loop_id;
    });
    for (const auto& s : scored)
        r.intensity.push_back({s.loop_id, s.value, s.total_ops, s.total_accesses,
                               kept_intensity(s.loop_id)});

    auto kept_efficiency = [&](int id) {
        return std::find(solution.trace.top_by_efficiency.begin(),
                         solution.trace.top_by_efficiency.end(),
                         id) != solution.trace.top_by_efficiency.end();
    };
    auto excluded = [&](int id) {
        return std::find(solution.trace.excluded_infeasible_singles.begin(),
                         solution.trace.excluded_infeasible_singles.end(),
                         id) != solution.trace.excluded_infeasible_singles.end();
    };
    std::vector<SearchTrace::EstimateRow> est_rows = solution.trace.estimated;
    std::sort(est_rows.begin(), est_rows.end(),
              [](const SearchTrace::EstimateRow& a, const SearchTrace::EstimateRow& b) {
                  if (a.efficiency != b.efficiency) return a.efficiency > b.efficiency;
                  return a.loop_id < b.loop_id;
              });
    for (const auto& row : est_rows) {
        double intensity = 0;
        for (const auto& s : solution.trace.scored)
            if (s.loop_id == row.loop_id) intensity = s.value;
        r.efficiency.push_back({row.loop_id, intensity, row.estimate, row.efficiency,
                                kept_efficiency(row.loop_id), excluded(row.loop_id)});
    }

    for (const auto& rec : solution.trials) {
        RunReport::TrialRow row;
        row.pattern_id = rec.pattern.id;
        row.loops = rec.pattern.loops;
        row.round = rec.pattern.round;
        row.predicted_ff = rec.pattern.ff;
        row.predicted_lut = rec.pattern.lut;
        row.predicted_dsp = rec.pattern.dsp;
        row.predicted_bram = rec.pattern.bram;
        row.status = measure_status_name(rec.result.status);
        row.runtime_seconds = rec.result.runtime_seconds;
        row.speedup = rec.result.speedup;
        r.trials.push_back(std::move(row));
    }

    r.budget_limit = solution.config.budget;
    int used = 0;
    for (const auto& rec : solution.trials) {
        if (rec.pattern.round == 0) continue;
        if (rec.result.status == MeasureStatus::Ok ||
            solution.config.failed_measurements_consume_budget)
            ++used;
    }
    r.budget_used = used;

    r.solution.pattern_id = solution.chosen.id;
    r.solution.loops = solution.chosen.loops;
    r.solution.runtime_seconds = solution.chosen_result.runtime_seconds;
    r.solution.speedup = solution.chosen_result.speedup;
    r.solution.speedup_provenance = backend == "simulate" ? "model-derived" : "measured";
    r.solution.kernel_paths = std::move(chosen_kernel_paths);
    return r;
}

std::string report_to_json(const RunReport& r) {
    ojson j;
    j["format"] = "floop-report";
    j["version"] = 1;

    ojson input;
    input["source_path"] = r.source_path;
    input["source_hash"] = r.source_hash;
    input["loop_count"] = r.loop_count;
    j["input"] = std::move(input);

    ojson cfg;
    cfg["top_intensity"] = r.config.top_intensity;
    cfg["unroll"] = r.config.unroll;
    cfg["top_efficiency"] = r.config.top_efficiency;
    cfg["budget"] = r.config.budget;
    cfg["resource_limit"] = r.config.resource_limit;
    cfg["accel_threshold"] = r.config.accel_threshold;
    cfg["failed_measurements_consume_budget"] = r.config.failed_measurements_consume_budget;
    cfg["intensity_strategy"] = r.config.intensity_strategy;
    cfg["resource_strategy"] = r.config.resource_strategy;
    cfg["backend"] = r.backend;
    cfg["seed"] = r.seed;
    cfg["noise_amplitude"] = r.noise_amplitude;
    j["config"] = std::move(cfg);

    ojson cm;
    cm["name"] = r.cost_model_name;
    cm["hash"] = r.cost_model_hash;
    j["cost_model"] = std::move(cm);

    ojson stages;
    ojson cands = ojson::array();
    for (const auto& c : r.candidates) {
        ojson row;
        row["id"] = c.id;
        row["parent_id"] = c.parent_id ? ojson(*c.parent_id) : ojson(nullptr);
        row["function"] = c.function;
        row["trip_count"] = c.trip_count ? ojson(*c.trip_count) : ojson(nullptr);
        row["arith_ops"] = c.profile.arith_ops;
        row["mem_accesses"] = c.profile.mem_accesses;
        row["calls"] = c.profile.calls;
        row["has_io"] = c.profile.has_io;
        row["offloadable"] = c.offloadable;
        row["reasons"] = c.reasons;
        cands.push_back(std::move(row));
    }
    stages["candidates"] = std::move(cands);

    ojson inten = ojson::array();
    for (const auto& s : r.intensity) {
        ojson row;
        row["loop"] = s.loop_id;
        row["value"] = s.value;
        row["total_ops"] = s.total_ops;
        row["total_accesses"] = s.total_accesses;
        row["kept"] = s.kept;
        inten.push_back(std::move(row));
    }
    stages["intensity"] = std::move(inten);

    ojson effs = ojson::array();
    for (const auto& e : r.efficiency) {
        ojson row;
        row["loop"] = e.loop_id;
        row["intensity"] = e.intensity;
        ojson est;
        est["ff"] = e.estimate.ff;
        est["lut"] = e.estimate.lut;
        est["dsp"] = e.estimate.dsp;
        est["bram"] = e.estimate.bram;
        est["scalar_amount"] = e.estimate.scalar_amount;
        row["estimate"] = std::move(est);
        row["efficiency"] = e.efficiency;
        row["kept"] = e.kept;
        row["excluded_infeasible"] = e.excluded_infeasible;
        effs.push_back(std::move(row));
    }
    stages["efficiency"] = std::move(effs);
    j["stages"] = std::move(stages);

    ojson trials = ojson::array();
    for (const auto& t : r.trials) {
        ojson row;
        row["pattern_id"] = t.pattern_id;
        row["loops"] = t.loops;
        row["round"] = t.round;
        ojson pred;
        pred["ff"] = t.predicted_ff;
        pred["lut"] = t.predicted_lut;
        pred["dsp"] = t.predicted_dsp;
        pred["bram"] = t.predicted_bram;
        row["predicted_resources"] = std::move(pred);
        row["status"] = t.status;
        row["runtime_seconds"] = t.runtime_seconds;
        row["speedup"] = t.speedup;
        trials.push_back(std::move(row));
    }
    j["trials"] = std::move(trials);

    ojson budget;
    budget["limit"] = r.budget_limit;
    budget["used"] = r.budget_used;
    j["budget"] = std::move(budget);

    ojson sol;
    sol["pattern_id"] = r.solution.pattern_id;
    sol["loops"] = r.solution.loops;
    sol["runtime_seconds"] = r.solution.runtime_seconds;
    sol["speedup"] = r.solution.speedup;
    sol["speedup_provenance"] = r.solution.speedup_provenance;
    sol["kernels"] = r.solution.kernel_paths;
    j["solution"] = std::move(sol);

    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

std::string meta_to_json(const std::map<std::string, long long>& stage_timings_us) {
    ojson j;
    j["format"] = "floop-run-meta";
    auto now = std::chrono::system_clock::now();
    j["timestamp_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
    ojson t;
    for (const auto& [k, v] : stage_timings_us) t[k] = v;
    j["stage_timings_us"] = std::move(t);
    return j.dump(2) + "\n";
}

std::string report_to_text(const RunReport& r) {
    std::ostringstream os;
    os << "floop report\n";
    os << "  source: " << r.source_path << " (hash " << r.source_hash << ")\n";
    os << "  loops: " << r.loop_count << "\n";
    os << "  config: A=" << r.config.top_intensity << " B=" << r.config.unroll
       << " C=" << r.config.top_efficiency << " D=" << r.config.budget
       << " limit=" << fmt(r.config.resource_limit) << " backend=" << r.backend << "\n";
    os << "  cost model: " << r.cost_model_name << " (hash " << r.cost_model_hash << ")\n\n";

    os << "candidates (" << r.candidates.size() << ")\n";
    os << "  id  parent  function        trip       arith  mem  calls  verdict\n";
    for (const auto& c : r.candidates) {
        char line[160];
        std::string verdict = c.offloadable ? "offloadable" : "";
        if (!c.offloadable) {
            for (size_t i = 0; i < c.reasons.size(); ++i)
                verdict += (i ? "," : "") + c.reasons[i];
        }
        std::snprintf(line, sizeof(line), "  %-3d %-7s %-15s %-10s %-6lld %-4lld %-6lld %s\n",
                      c.id, c.parent_id ? std::to_string(*c.parent_id).c_str() : "-",
                      c.function.c_str(),
                      c.trip_count ? std::to_string(*c.trip_count).c_str() : "?",
                      c.profile.arith_ops, c.profile.mem_accesses, c.profile.calls,
                      verdict.c_str());
        os << line;
    }

    os << "\nintensity (top " << r.config.top_intensity << " kept)\n";
    for (const auto& s : r.intensity)
        os << "  loop " << s.loop_id << ": value " << fmt(s.value) << " (" << s.total_ops
           << " ops / " << s.total_accesses << " accesses)" << (s.kept ? "  [kept]" : "  [cut]")
           << "\n";

    os << "\nresource efficiency (top " << r.config.top_efficiency << " kept)\n";
    for (const auto& e : r.efficiency) {
        os << "  loop " << e.loop_id << ": intensity " << fmt(e.intensity) << ", resources ff="
           << fmt(e.estimate.ff) << " lut=" << fmt(e.estimate.lut) << " dsp=" << fmt(e.estimate.dsp)
           << " bram=" << fmt(e.estimate.bram) << " -> amount " << fmt(e.estimate.scalar_amount)
           << ", efficiency " << fmt(e.efficiency);
        if (e.excluded_infeasible) os << "  [infeasible]";
        else os << (e.kept ? "  [kept]" : "  [cut]");
        os << "\n";
    }

    os << "\ntrials (budget " << r.budget_used << "/" << r.budget_limit << " used)\n";
    for (const auto& t : r.trials) {
        os << "  #" << t.pattern_id << " round " << t.round << " " << loops_label(t.loops) << ": "
           << t.status;
        if (t.status == "ok")
            os << ", " << fmt(t.runtime_seconds) << " s, speedup " << fmt(t.speedup);
        os << "\n";
    }

    os << "\nsolution\n";
    os << "  pattern #" << r.solution.pattern_id << " " << loops_label(r.solution.loops) << "\n";
    os << "  runtime " << fmt(r.solution.runtime_seconds) << " s, speedup "
       << fmt(r.solution.speedup) << " (" << r.solution.speedup_provenance << ")\n";
    for (const auto& k : r.solution.kernel_paths) os << "  kernel: " << k << "\n";
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    return os.str();
}

std::string explain_loop(const RunReport& r, int loop_id) {
    std::ostringstream os;
    const RunReport::LoopRow* loop = nullptr;
    for (const auto& c : r.candidates)
        if (c.id == loop_id) loop = &c;
    if (!loop) return "loop " + std::to_string(loop_id) + ": no such loop\n";

    os << "loop " << loop_id << " (function " << loop->function << ")\n";
    os << "  trip count: " << (loop->trip_count ? std::to_string(*loop->trip_count) : "unknown")
       << "\n";
    os << "  per-iteration profile: " << loop->profile.arith_ops << " arith, "
       << loop->profile.mem_accesses << " mem, " << loop->profile.calls << " calls"
       << (loop->profile.has_io ? ", has I/O" : "") << "\n";
    if (!loop->offloadable) {
        os << "  verdict: not offloadable (";
        for (size_t i = 0; i < loop->reasons.size(); ++i) os << (i ? ", " : "") << loop->reasons[i];
        os << ")\n";
        return os.str();
    }
    os << "  verdict: offloadable\n";

    bool scored = false;
    for (const auto& s : r.intensity)
        if (s.loop_id == loop_id) {
            scored = true;
            os << "  intensity: " << fmt(s.value) << " (" << s.total_ops << " ops / "
               << s.total_accesses << " accesses) -> " << (s.kept ? "kept" : "cut") << " at top-"
               << r.config.top_intensity << "\n";
        }
    if (!scored) os << "  intensity: not scored\n";

    bool estimated = false;
    for (const auto& e : r.efficiency)
        if (e.loop_id == loop_id) {
            estimated = true;
            os << "  resources: ff=" << fmt(e.estimate.ff) << " lut=" << fmt(e.estimate.lut)
               << " dsp=" << fmt(e.estimate.dsp) << " bram=" << fmt(e.estimate.bram)
               << " -> amount " << fmt(e.estimate.scalar_amount) << "\n";
            os << "  efficiency: " << fmt(e.efficiency) << " -> "
               << (e.excluded_infeasible ? "excluded (infeasible)" : (e.kept ? "kept" : "cut"))
               << " at top-" << r.config.top_efficiency << "\n";
        }
    if (!estimated) os << "  resources: not estimated (cut before this stage)\n";

    for (const auto& t : r.trials)
        if (std::find(t.loops.begin(), t.loops.end(), loop_id) != t.loops.end())
            os << "  measured in pattern #" << t.pattern_id << " " << loops_label(t.loops) << ": "
               << t.status << (t.status == "ok" ? ", speedup " + fmt(t.speedup) : "") << "\n";
    if (std::find(r.solution.loops.begin(), r.solution.loops.end(), loop_id) !=
        r.solution.loops.end())
        os << "  part of the chosen pattern\n";
    return os.str();
}

}  // namespace floop

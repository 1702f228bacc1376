#include "floop/cost_model.hpp"

#include <set>

#include "floop/errors.hpp"
#include "floop/json_io.hpp"
#include "floop/util.hpp"

namespace floop {

namespace {

const std::set<std::string> kOpKinds = {"add", "sub", "mul", "div", "load", "store", "call"};
const std::set<std::string> kTypes = {"int32", "int64", "float32", "float64"};

void reject_unknown_keys(const ojson& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

ResourceUnits parse_units(const ojson& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    reject_unknown_keys(j, {"ff", "lut", "dsp", "bram"}, where);
    ResourceUnits u;
    u.ff = j.value("ff", 0LL);
    u.lut = j.value("lut", 0LL);
    u.dsp = j.value("dsp", 0LL);
    u.bram = j.value("bram", 0LL);
    if (u.ff < 0 || u.lut < 0 || u.dsp < 0 || u.bram < 0)
        throw ConfigError(where + " must be non-negative");
    return u;
}

}  // namespace

const ResourceUnits& CostModel::cost_of(OpKind kind, ScalarType type) const {
    const char* kname = op_kind_name(kind);
    auto kit = resource_costs.find(kname);
    if (kit == resource_costs.end()) throw UnknownOpKindError(kname);
    const char* tname = type_name(type);
    auto tit = kit->second.find(tname);
    if (tit == kit->second.end())
        throw UnknownOpKindError(std::string(kname) + "/" + tname);
    return tit->second;
}

CostModel cost_model_from_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text, nullptr, true, true);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("cost model is not valid JSON: ") + e.what());
    }
    reject_unknown_keys(j, {"name", "version", "resource_costs", "capacity", "base_overhead",
                            "timing"},
                        "cost model");

    CostModel cm;
    cm.name = j.value("name", std::string("unnamed"));
    cm.version = j.value("version", 1);

    if (!j.contains("capacity")) throw ConfigError("cost model is missing 'capacity'");
    cm.capacity = parse_units(j.at("capacity"), "capacity");
    if (cm.capacity.ff <= 0 || cm.capacity.lut <= 0 || cm.capacity.dsp <= 0 ||
        cm.capacity.bram <= 0)
        throw ConfigError("all device capacities must be positive");

    if (j.contains("base_overhead"))
        cm.base_overhead = parse_units(j.at("base_overhead"), "base_overhead");

    if (j.contains("resource_costs")) {
        for (auto it = j.at("resource_costs").begin(); it != j.at("resource_costs").end(); ++it) {
            if (!kOpKinds.count(it.key()))
                throw ConfigError("unknown op kind '" + it.key() + "' in resource_costs");
            for (auto tit = it.value().begin(); tit != it.value().end(); ++tit) {
                if (!kTypes.count(tit.key()))
                    throw ConfigError("unknown element type '" + tit.key() + "' under op '" +
                                      it.key() + "'");
                cm.resource_costs[it.key()][tit.key()] =
                    parse_units(tit.value(), it.key() + "." + tit.key());
            }
        }
    }

    if (j.contains("timing")) {
        const auto& t = j.at("timing");
        reject_unknown_keys(t,
                            {"cpu_seconds_per_op", "fpga_seconds_per_op",
                             "transfer_seconds_per_byte", "kernel_launch_seconds"},
                            "timing");
        cm.timing.cpu_seconds_per_op = t.value("cpu_seconds_per_op", 0.0);
        cm.timing.fpga_seconds_per_op = t.value("fpga_seconds_per_op", 0.0);
        cm.timing.transfer_seconds_per_byte = t.value("transfer_seconds_per_byte", 0.0);
        cm.timing.kernel_launch_seconds = t.value("kernel_launch_seconds", 0.0);
        if (cm.timing.cpu_seconds_per_op < 0 || cm.timing.fpga_seconds_per_op < 0 ||
            cm.timing.transfer_seconds_per_byte < 0 || cm.timing.kernel_launch_seconds < 0)
            throw ConfigError("timing costs must be non-negative");
    }

    // canonical hash: key-sorted dump, independent of file formatting
    cm.hash = fnv1a64_hex(nlohmann::json::parse(text, nullptr, true, true).dump());
    return cm;
}

CostModel load_cost_model(const std::string& path) {
    return cost_model_from_json(read_file(path));
}

std::string default_cost_model_json() {
    // Example numbers in the shape of a mid-size FPGA; calibrate against a
    // real device before trusting absolute figures.
    return R"({
  "name": "example-default",
  "version": 1,
  "resource_costs": {
    "add":   {"int32": {"ff": 64, "lut": 64, "dsp": 0, "bram": 0},
              "int64": {"ff": 128, "lut": 128, "dsp": 0, "bram": 0},
              "float32": {"ff": 500, "lut": 700, "dsp": 2, "bram": 0},
              "float64": {"ff": 1000, "lut": 1600, "dsp": 4, "bram": 0}},
    "sub":   {"int32": {"ff": 64, "lut": 64, "dsp": 0, "bram": 0},
              "int64": {"ff": 128, "lut": 128, "dsp": 0, "bram": 0},
              "float32": {"ff": 500, "lut": 700, "dsp": 2, "bram": 0},
              "float64": {"ff": 1000, "lut": 1600, "dsp": 4, "bram": 0}},
    "mul":   {"int32": {"ff": 100, "lut": 150, "dsp": 1, "bram": 0},
              "int64": {"ff": 200, "lut": 300, "dsp": 4, "bram": 0},
              "float32": {"ff": 700, "lut": 600, "dsp": 3, "bram": 0},
              "float64": {"ff": 1600, "lut": 1400, "dsp": 8, "bram": 0}},
    "div":   {"int32": {"ff": 800, "lut": 2500, "dsp": 8, "bram": 0},
              "int64": {"ff": 1600, "lut": 5000, "dsp": 16, "bram": 0},
              "float32": {"ff": 2400, "lut": 6200, "dsp": 28, "bram": 0},
              "float64": {"ff": 5200, "lut": 14000, "dsp": 60, "bram": 0}},
    "load":  {"int32": {"ff": 120, "lut": 160, "dsp": 0, "bram": 2},
              "int64": {"ff": 240, "lut": 330, "dsp": 0, "bram": 4},
              "float32": {"ff": 120, "lut": 160, "dsp": 0, "bram": 2},
              "float64": {"ff": 240, "lut": 330, "dsp": 0, "bram": 4}},
    "store": {"int32": {"ff": 120, "lut": 160, "dsp": 0, "bram": 2},
              "int64": {"ff": 240, "lut": 330, "dsp": 0, "bram": 4},
              "float32": {"ff": 120, "lut": 160, "dsp": 0, "bram": 2},
              "float64": {"ff": 240, "lut": 330, "dsp": 0, "bram": 4}},
    "call":  {"int32": {"ff": 3200, "lut": 5200, "dsp": 22, "bram": 4},
              "int64": {"ff": 3200, "lut": 5200, "dsp": 22, "bram": 4},
              "float32": {"ff": 3200, "lut": 5200, "dsp": 22, "bram": 4},
              "float64": {"ff": 6400, "lut": 10400, "dsp": 44, "bram": 8}}
  },
  "capacity": {"ff": 1708800, "lut": 427200, "dsp": 1518, "bram": 2713},
  "base_overhead": {"ff": 80000, "lut": 60000, "dsp": 0, "bram": 100},
  "timing": {
    "cpu_seconds_per_op": 2e-9,
    "fpga_seconds_per_op": 1e-10,
    "transfer_seconds_per_byte": 1e-10,
    "kernel_launch_seconds": 1e-4
  }
})";
}

}  // namespace floop

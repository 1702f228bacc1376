#pragma once

#include <map>
#include <string>

#include "floop/codegen.hpp"

namespace floop {

struct ResourceUnits {
    long long ff = 0;
    long long lut = 0;
    long long dsp = 0;
    long long bram = 0;

    ResourceUnits& operator+=(const ResourceUnits& o) {
        ff += o.ff;
        lut += o.lut;
        dsp += o.dsp;
        bram += o.bram;
        return *this;
    }
    ResourceUnits scaled(long long k) const { return {ff * k, lut * k, dsp * k, bram * k}; }
    bool operator==(const ResourceUnits&) const = default;
};

struct TimingCosts {
    double cpu_seconds_per_op = 0;
    double fpga_seconds_per_op = 0;
    double transfer_seconds_per_byte = 0;
    double kernel_launch_seconds = 0;
};

// One file covers both estimation and simulation: resource costs per static
// op, device capacities, per-kernel shell overhead, timing constants.
struct CostModel {
    std::string name;
    int version = 1;
    std::map<std::string, std::map<std::string, ResourceUnits>> resource_costs;
    ResourceUnits capacity;
    ResourceUnits base_overhead;
    TimingCosts timing;
    std::string hash;  // canonical content hash, filled on load

    const ResourceUnits& cost_of(OpKind kind, ScalarType type) const;  // UnknownOpKindError
};

CostModel cost_model_from_json(const std::string& text);  // rejects unknown keys
CostModel load_cost_model(const std::string& path);

// Documented example configuration; not calibrated against any device.
std::string default_cost_model_json();

}  // namespace floop

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floop/model.hpp"

namespace floop {

enum class ParamDirection { In, Out, InOut };
const char* direction_name(ParamDirection d);

struct KernelParam {
    std::string var;
    ScalarType type = ScalarType::Int32;
    bool is_buffer = false;       // device buffer; false = passed by value
    long long length = 1;         // buffer element count (1 for scalar buffers)
    ParamDirection direction = ParamDirection::In;
    long long transfer_bytes = 0;  // full-buffer bytes per invocation
};

struct KernelLocal {
    std::string name;
    ScalarType type;
};

// Residual iterations when the trip count is not divisible by the unroll
// factor. Runs after the main loop with the original stride.
struct KernelEpilogue {
    long long start_value = 0;
    long long trip = 0;
    std::vector<Stmt> body;  // one original copy
};

struct KernelSpec {
    int loop_id = 0;
    std::string name;
    std::vector<KernelParam> params;
    std::vector<KernelLocal> locals;
    std::string ivar;
    ScalarType ivar_type = ScalarType::Int32;
    long long init_value = 0;
    long long stride = 1;   // original stride
    long long trip = 0;     // original trip count
    int unroll_factor = 1;
    long long main_trip = 0;  // trip / unroll_factor
    std::vector<Stmt> body;   // unroll_factor substituted copies of the body
    std::optional<KernelEpilogue> epilogue;
};

enum class HostPhase {
    DevicePrep,
    KernelPrep,
    AllocDeviceMemory,
    TransferHostToDevice,
    SetKernelArgs,
    ExecuteKernel,
    TransferDeviceToHost,
    ReleaseDeviceMemory,
    ReleaseKernels,
    ReleaseObjects,
};

const char* host_phase_name(HostPhase p);
constexpr int kHostPhaseCount = 10;

struct HostPhaseRecord {
    HostPhase phase;
    std::vector<std::string> vars;
};

struct HostPlan {
    std::vector<HostPhaseRecord> phases;  // always the 10 phases, in order
};

struct OffloadUnit {
    int loop_id = 0;
    KernelSpec kernel;
    HostPlan host;
};

KernelSpec clone(const KernelSpec& spec);
OffloadUnit clone(const OffloadUnit& unit);

// Kernel construction. The loop must be offloadable; the whole subtree moves
// into the kernel. Throws UnknownLoopIdError / NotOffloadableError.
OffloadUnit split_kernel_host(const ProgramModel& model, int loop_id, int unroll_factor);

// Re-unrolls a kernel to factor B (the input may have any factor; unrolling
// always starts from the original body).
KernelSpec unroll_loop(const KernelSpec& kernel, int unroll_factor);

// Deterministic OpenCL-style source text.
std::string render_kernel(const KernelSpec& kernel);

// Straight-line arithmetic ops at unroll depth 0 (epilogue and nested loops
// excluded); equals unroll_factor x the original per-iteration count.
long long straight_line_arith_ops(const KernelSpec& kernel);

// Static op instances for resource estimation: every arithmetic op, array
// load/store and call in the kernel text, including nested loops and the
// epilogue, each counted once.
enum class OpKind { Add, Sub, Mul, Div, Load, Store, Call };
const char* op_kind_name(OpKind k);

struct StaticOp {
    OpKind kind;
    ScalarType type;
    long long count;
};

std::vector<StaticOp> enumerate_static_ops(const KernelSpec& kernel, const ProgramModel& model);

// Serialization (estimator adapter wire format, report attachments).
std::string unit_to_json(const OffloadUnit& unit);
std::string host_plan_to_json(const HostPlan& plan);

}  // namespace floop

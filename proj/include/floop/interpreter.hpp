#pragma once

#include <map>
#include <string>
#include <vector>

#include "floop/codegen.hpp"
#include "floop/model.hpp"

namespace floop {

struct RuntimeValue {
    ScalarType type = ScalarType::Int32;
    long long i = 0;  // integer types
    double f = 0.0;   // float types (float32 kept rounded)

    static RuntimeValue make_int(long long v, ScalarType t = ScalarType::Int64);
    static RuntimeValue make_float(double v, ScalarType t = ScalarType::Float64);
    double as_double() const;
    long long as_int() const;
};

RuntimeValue convert(const RuntimeValue& v, ScalarType target);

struct Cell {
    bool defined = false;
    RuntimeValue value;
};

struct Binding {
    VarInfo info;
    std::vector<Cell> cells;  // length 1 for scalars
};

using ProgramState = std::map<std::string, Binding>;

// Values for variables with no initializer. Converted to the declared type.
struct InterpreterInputs {
    std::map<std::string, std::vector<RuntimeValue>> values;

    void set_scalar(const std::string& name, RuntimeValue v) { values[name] = {v}; }
    void set_array(const std::string& name, std::vector<RuntimeValue> vs) {
        values[name] = std::move(vs);
    }
};

struct InterpOptions {
    long long max_steps = 200000000;
    int max_call_depth = 64;
};

struct ExecutionResult {
    ProgramState state;
    std::vector<RuntimeValue> printed;
};

// Direct evaluation of the C-subset semantics. Entry: the global prelude,
// then `main` (or the first function). Throws DivisionByZeroError /
// UnboundInputError / InterpError.
ExecutionResult interpret_program(const ProgramModel& model, const InterpreterInputs& inputs,
                                  const InterpOptions& opts = {});

// Same as interpret_program, but loops covered by a unit run through the
// offload semantics: transfer down, kernel body + epilogue, transfer up.
ExecutionResult interpret_with_offload(const ProgramModel& model, const InterpreterInputs& inputs,
                                       const std::vector<OffloadUnit>& units,
                                       const InterpOptions& opts = {});

// One offload unit against an existing state, in place.
void interpret_offload_unit(const OffloadUnit& unit, const ProgramModel& model,
                            ProgramState& state, const InterpOptions& opts = {});

}  // namespace floop

#pragma once

#include <stdexcept>
#include <string>

#include "floop/ast.hpp"

namespace floop {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Frontend
struct SyntaxError : Error {
    SourcePos pos;
    std::string expected;
    SyntaxError(SourcePos p, const std::string& msg, std::string expect = {})
        : Error(std::to_string(p.line) + ":" + std::to_string(p.col) + ": syntax error: " + msg),
          pos(p),
          expected(std::move(expect)) {}
};

struct UnsupportedConstructError : Error {
    SourcePos pos;
    std::string construct;
    UnsupportedConstructError(SourcePos p, std::string name)
        : Error(std::to_string(p.line) + ":" + std::to_string(p.col) +
                ": unsupported construct: " + name),
          pos(p),
          construct(std::move(name)) {}
};

struct UnknownLoopIdError : Error {
    explicit UnknownLoopIdError(int id) : Error("unknown loop id " + std::to_string(id)) {}
};

struct NotOffloadableError : Error {
    explicit NotOffloadableError(int id)
        : Error("loop " + std::to_string(id) + " is not offloadable") {}
};

// Resources
struct UnknownOpKindError : Error {
    explicit UnknownOpKindError(const std::string& key)
        : Error("cost model has no entry for op '" + key + "'") {}
};

struct ZeroResourceError : Error {
    ZeroResourceError() : Error("resource amount is zero; cost model is degenerate") {}
};

// Configuration / model files
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
};

// Interpreter
struct InterpError : Error {
    explicit InterpError(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroError : InterpError {
    SourcePos pos;
    explicit DivisionByZeroError(SourcePos p)
        : InterpError(std::to_string(p.line) + ":" + std::to_string(p.col) + ": division by zero"),
          pos(p) {}
};

struct UnboundInputError : InterpError {
    std::string var;
    explicit UnboundInputError(const std::string& name)
        : InterpError("unbound input: variable '" + name + "' read before any value was assigned"),
          var(name) {}
};

// Search / execution
struct NoCandidatesError : Error {
    NoCandidatesError() : Error("no candidates to enumerate") {}
};

struct InfeasiblePatternError : Error {
    explicit InfeasiblePatternError(const std::string& msg)
        : Error("infeasible pattern: " + msg) {}
};

struct ExecutorUnavailableError : Error {
    explicit ExecutorUnavailableError(const std::string& msg)
        : Error("executor unavailable: " + msg) {}
};

}  // namespace floop

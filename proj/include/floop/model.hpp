#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floop/ast.hpp"

namespace floop {

enum class AccessMode { Read, Write, ReadWrite };
const char* access_mode_name(AccessMode m);
AccessMode merge(AccessMode a, AccessMode b);

struct VarInfo {
    std::string name;
    bool is_array = false;
    ScalarType element_type = ScalarType::Int32;
    long long array_length = 1;  // 1 for scalars
    long long byte_size = 0;     // element bytes x array_length
    bool has_initializer = false;
};

// Per-iteration operation counts over a loop's immediate body. Statements of
// nested loops are excluded; they are profiled by the nested candidate.
struct OpProfile {
    long long arith_ops = 0;
    long long mem_accesses = 0;
    long long calls = 0;
    bool has_io = false;
};

enum class Disqualifier {
    UnknownTripCount,
    HasIo,
    OpaqueCall,
    NonAffineIndex,
    LoopCarriedScalarDep,
};

const char* disqualifier_code(Disqualifier d);  // "UNKNOWN_TRIP_COUNT", ...

struct OffloadabilityVerdict {
    bool offloadable = false;
    std::vector<Disqualifier> reasons;  // empty iff offloadable
};

struct VarAccess {
    std::string var;
    AccessMode mode;
};

// How a scalar written inside a loop subtree behaves across iterations.
enum class ScalarRole {
    LoopInput,    // read only
    Reduction,    // compound-assign accumulator
    PrivateTemp,  // plainly written before any read, every iteration
    Output,       // written only, never read inside
    Carried,      // anything else: unsupported loop-carried dependence
};

struct LoopCandidate {
    int id = 0;
    std::optional<int> parent_id;
    std::optional<long long> trip_count;
    OpProfile body_profile;
    std::vector<VarAccess> accessed_vars;  // subtree data vars, name-sorted
    OffloadabilityVerdict verdict;

    // structural wiring
    std::vector<int> children;
    int function_index = 0;
    std::string function_name;
    int depth = 0;  // 0 = not nested in another loop
    const ForStmt* stmt = nullptr;
    std::map<std::string, ScalarRole> scalar_roles;  // written scalars in subtree
};

// Parsed program plus derived loop/variable tables. Move-only: LoopCandidate
// holds pointers into the owned function ASTs.
struct ProgramModel {
    std::vector<FunctionDef> functions;
    std::vector<LoopCandidate> loops;           // document order, ids 1..n
    std::map<std::string, VarInfo> variables;   // flat symbol table
    std::map<std::string, long long> constants; // scalars with a literal init, never reassigned

    ProgramModel() = default;
    ProgramModel(ProgramModel&&) = default;
    ProgramModel& operator=(ProgramModel&&) = default;
    ProgramModel(const ProgramModel&) = delete;
    ProgramModel& operator=(const ProgramModel&) = delete;

    const LoopCandidate& loop(int id) const;  // throws UnknownLoopIdError
    const VarInfo& var(const std::string& name) const;

    // arith_ops x trip + sum over children; empty if any subtree trip is unknown.
    std::optional<long long> total_arith_ops(int id) const;

    // Product of enclosing loops' trip counts (unknown trips count as 1).
    long long execution_count(int id) const;

    // True if `name` is referenced anywhere outside loop `id`'s subtree.
    bool referenced_outside_loop(const std::string& name, int id) const;
};

// Op counts over a statement list, nested loops excluded. parse_program uses
// this for LoopCandidate profiles; codegen uses it on unrolled kernel bodies.
OpProfile profile_statements(const std::vector<Stmt>& body);

}  // namespace floop

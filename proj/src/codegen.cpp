#include "floop/codegen.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "floop/errors.hpp"
#include "floop/frontend.hpp"
#include "floop/json_io.hpp"

namespace floop {

const char* direction_name(ParamDirection d) {
    switch (d) {
        case ParamDirection::In: return "in";
        case ParamDirection::Out: return "out";
        case ParamDirection::InOut: return "inout";
    }
    return "?";
}

const char* host_phase_name(HostPhase p) {
    switch (p) {
        case HostPhase::DevicePrep: return "DevicePrep";
        case HostPhase::KernelPrep: return "KernelPrep";
        case HostPhase::AllocDeviceMemory: return "AllocDeviceMemory";
        case HostPhase::TransferHostToDevice: return "TransferHostToDevice";
        case HostPhase::SetKernelArgs: return "SetKernelArgs";
        case HostPhase::ExecuteKernel: return "ExecuteKernel";
        case HostPhase::TransferDeviceToHost: return "TransferDeviceToHost";
        case HostPhase::ReleaseDeviceMemory: return "ReleaseDeviceMemory";
        case HostPhase::ReleaseKernels: return "ReleaseKernels";
        case HostPhase::ReleaseObjects: return "ReleaseObjects";
    }
    return "?";
}

const char* op_kind_name(OpKind k) {
    switch (k) {
        case OpKind::Add: return "add";
        case OpKind::Sub: return "sub";
        case OpKind::Mul: return "mul";
        case OpKind::Div: return "div";
        case OpKind::Load: return "load";
        case OpKind::Store: return "store";
        case OpKind::Call: return "call";
    }
    return "?";
}

namespace {

ParamDirection direction_from_mode(AccessMode m) {
    switch (m) {
        case AccessMode::Read: return ParamDirection::In;
        case AccessMode::Write: return ParamDirection::Out;
        case AccessMode::ReadWrite: return ParamDirection::InOut;
    }
    return ParamDirection::In;
}

std::optional<long long> const_value_of(const Expr& e,
                                        const std::map<std::string, long long>& consts) {
    if (const auto* i = std::get_if<IntLit>(&e.node)) return i->value;
    if (const auto* v = std::get_if<VarRef>(&e.node)) {
        auto it = consts.find(v->name);
        if (it != consts.end()) return it->second;
    }
    if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
        auto l = const_value_of(*b->lhs, consts);
        auto r = const_value_of(*b->rhs, consts);
        if (l && r) {
            switch (b->op) {
                case BinOp::Add: return *l + *r;
                case BinOp::Sub: return *l - *r;
                case BinOp::Mul: return *l * *r;
                case BinOp::Div: return *r == 0 ? std::nullopt : std::optional(*l / *r);
            }
        }
    }
    return std::nullopt;
}

void collect_nested_ivar_locals(const std::vector<Stmt>& body, const ProgramModel& model,
                                std::vector<KernelLocal>& locals) {
    for (const auto& s : body) {
        if (const auto* f = std::get_if<ForStmt>(&s.node)) {
            if (!f->declares_ivar)
                locals.push_back({f->ivar, model.var(f->ivar).element_type});
            collect_nested_ivar_locals(f->body, model, locals);
        }
    }
}

// Declarations do not survive into the kernel body: locals are declared once
// at kernel scope, so an in-body decl becomes an assignment (or disappears).
void lower_body_decls(std::vector<Stmt>& body) {
    std::vector<Stmt> out;
    out.reserve(body.size());
    for (auto& s : body) {
        if (auto* d = std::get_if<DeclStmt>(&s.node)) {
            if (d->init) {
                AssignStmt a;
                a.lhs.name = d->name;
                a.op = AssignOp::Set;
                a.value = clone(*d->init);
                Stmt repl;
                repl.pos = s.pos;
                repl.node = std::move(a);
                out.push_back(std::move(repl));
            }
            continue;
        }
        if (auto* f = std::get_if<ForStmt>(&s.node)) lower_body_decls(f->body);
        if (auto* w = std::get_if<WhileStmt>(&s.node)) lower_body_decls(w->body);
        out.push_back(std::move(s));
    }
    body = std::move(out);
}

HostPlan build_host_plan(const KernelSpec& kernel) {
    HostPlan plan;
    std::vector<std::string> buffers, down, all, up;
    for (const auto& p : kernel.params) {
        all.push_back(p.var);
        if (p.is_buffer) buffers.push_back(p.var);
        if (p.direction != ParamDirection::Out) down.push_back(p.var);
        if (p.direction != ParamDirection::In) up.push_back(p.var);
    }
    plan.phases = {
        {HostPhase::DevicePrep, {}},
        {HostPhase::KernelPrep, {kernel.name}},
        {HostPhase::AllocDeviceMemory, buffers},
        {HostPhase::TransferHostToDevice, down},
        {HostPhase::SetKernelArgs, all},
        {HostPhase::ExecuteKernel, {kernel.name}},
        {HostPhase::TransferDeviceToHost, up},
        {HostPhase::ReleaseDeviceMemory, buffers},
        {HostPhase::ReleaseKernels, {kernel.name}},
        {HostPhase::ReleaseObjects, {}},
    };
    return plan;
}

}  // namespace

long long straight_line_arith_ops(const KernelSpec& kernel) {
    return profile_statements(kernel.body).arith_ops;
}

KernelSpec clone(const KernelSpec& spec) {
    KernelSpec out;
    out.loop_id = spec.loop_id;
    out.name = spec.name;
    out.params = spec.params;
    out.locals = spec.locals;
    out.ivar = spec.ivar;
    out.ivar_type = spec.ivar_type;
    out.init_value = spec.init_value;
    out.stride = spec.stride;
    out.trip = spec.trip;
    out.unroll_factor = spec.unroll_factor;
    out.main_trip = spec.main_trip;
    out.body = clone(spec.body);
    if (spec.epilogue) {
        KernelEpilogue e;
        e.start_value = spec.epilogue->start_value;
        e.trip = spec.epilogue->trip;
        e.body = clone(spec.epilogue->body);
        out.epilogue = std::move(e);
    }
    return out;
}

OffloadUnit clone(const OffloadUnit& unit) {
    OffloadUnit out;
    out.loop_id = unit.loop_id;
    out.kernel = clone(unit.kernel);
    out.host = unit.host;
    return out;
}

KernelSpec unroll_loop(const KernelSpec& kernel, int unroll_factor) {
    if (unroll_factor < 1) throw Error("unroll factor must be >= 1");

    // copy 0 carries offset 0, so the original body is the first slice
    size_t orig_count = kernel.body.size() / std::max(1, kernel.unroll_factor);
    std::vector<Stmt> original;
    original.reserve(orig_count);
    for (size_t i = 0; i < orig_count; ++i) original.push_back(clone(kernel.body[i]));

    KernelSpec out;
    out.loop_id = kernel.loop_id;
    out.name = kernel.name;
    for (const auto& p : kernel.params) out.params.push_back(p);
    out.locals = kernel.locals;
    out.ivar = kernel.ivar;
    out.ivar_type = kernel.ivar_type;
    out.init_value = kernel.init_value;
    out.stride = kernel.stride;
    out.trip = kernel.trip;
    out.unroll_factor = unroll_factor;
    out.main_trip = kernel.trip / unroll_factor;

    for (int k = 0; k < unroll_factor; ++k) {
        for (const auto& s : original) {
            Stmt copy = clone(s);
            offset_var_reads(copy, kernel.ivar, static_cast<long long>(k) * kernel.stride);
            out.body.push_back(std::move(copy));
        }
    }

    long long residual = kernel.trip % unroll_factor;
    if (residual != 0) {
        KernelEpilogue epi;
        epi.trip = residual;
        epi.start_value = kernel.init_value + out.main_trip * unroll_factor * kernel.stride;
        epi.body = clone(original);
        out.epilogue = std::move(epi);
    }
    return out;
}

OffloadUnit split_kernel_host(const ProgramModel& model, int loop_id, int unroll_factor) {
    const LoopCandidate& loop = model.loop(loop_id);
    if (!loop.verdict.offloadable) throw NotOffloadableError(loop_id);
    if (unroll_factor < 1) throw Error("unroll factor must be >= 1");

    KernelSpec spec;
    spec.loop_id = loop_id;
    spec.name = "kernel_loop_" + std::to_string(loop_id);
    spec.ivar = loop.stmt->ivar;
    spec.ivar_type = loop.stmt->ivar_type;
    spec.stride = loop.stmt->stride;
    spec.trip = *loop.trip_count;
    spec.main_trip = spec.trip;
    spec.unroll_factor = 1;
    auto init = const_value_of(loop.stmt->init, model.constants);
    spec.init_value = *init;  // trip is static, so init is too
    spec.body = clone(loop.stmt->body);
    lower_body_decls(spec.body);

    for (const auto& acc : loop.accessed_vars) {
        const VarInfo& v = model.var(acc.var);
        if (v.is_array) {
            KernelParam p;
            p.var = acc.var;
            p.type = v.element_type;
            p.is_buffer = true;
            p.length = v.array_length;
            p.direction = direction_from_mode(acc.mode);
            p.transfer_bytes = v.byte_size;
            spec.params.push_back(std::move(p));
            continue;
        }
        auto role = loop.scalar_roles.find(acc.var);
        if (role == loop.scalar_roles.end()) {
            // read-only scalar: passed by value
            KernelParam p;
            p.var = acc.var;
            p.type = v.element_type;
            p.is_buffer = false;
            p.length = 1;
            p.direction = ParamDirection::In;
            p.transfer_bytes = v.byte_size;
            spec.params.push_back(std::move(p));
            continue;
        }
        if (model.referenced_outside_loop(acc.var, loop_id)) {
            // written scalar the host still needs: single-element buffer
            KernelParam p;
            p.var = acc.var;
            p.type = v.element_type;
            p.is_buffer = true;
            p.length = 1;
            p.direction = direction_from_mode(acc.mode);
            p.transfer_bytes = v.byte_size;
            spec.params.push_back(std::move(p));
        } else {
            spec.locals.push_back({acc.var, v.element_type});
        }
    }
    collect_nested_ivar_locals(loop.stmt->body, model, spec.locals);

    if (unroll_factor > 1) spec = unroll_loop(spec, unroll_factor);

    OffloadUnit unit;
    unit.loop_id = loop_id;
    unit.host = build_host_plan(spec);
    unit.kernel = std::move(spec);
    return unit;
}

// ---------------------------------------------------------------------------
// Static op enumeration
// ---------------------------------------------------------------------------

namespace {

ScalarType expr_type(const Expr& e, const ProgramModel& model) {
    ScalarType t = ScalarType::Int32;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                t = n.is_long ? ScalarType::Int64 : ScalarType::Int32;
            } else if constexpr (std::is_same_v<T, FloatLit>) {
                t = n.is_single ? ScalarType::Float32 : ScalarType::Float64;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                t = model.var(n.name).element_type;
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                t = model.var(n.name).element_type;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                t = promote(expr_type(*n.lhs, model), expr_type(*n.rhs, model));
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                t = n.args.empty() ? ScalarType::Float64 : expr_type(n.args[0], model);
            }
        },
        e.node);
    return t;
}

struct OpCounter {
    const ProgramModel& model;
    std::map<std::pair<int, int>, long long> counts;  // (kind, type) -> count

    void add(OpKind k, ScalarType t) { counts[{static_cast<int>(k), static_cast<int>(t)}] += 1; }

    OpKind kind_of(BinOp op) {
        switch (op) {
            case BinOp::Add: return OpKind::Add;
            case BinOp::Sub: return OpKind::Sub;
            case BinOp::Mul: return OpKind::Mul;
            case BinOp::Div: return OpKind::Div;
        }
        return OpKind::Add;
    }

    OpKind kind_of(AssignOp op) {
        switch (op) {
            case AssignOp::AddAssign: return OpKind::Add;
            case AssignOp::SubAssign: return OpKind::Sub;
            case AssignOp::MulAssign: return OpKind::Mul;
            case AssignOp::Set: break;
        }
        return OpKind::Add;
    }

    void count_expr(const Expr& e, bool in_index) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ArrayRef>) {
                    add(OpKind::Load, model.var(n.name).element_type);
                    count_expr(*n.index, true);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    if (!in_index) add(kind_of(n.op), expr_type(e, model));
                    count_expr(*n.lhs, in_index);
                    count_expr(*n.rhs, in_index);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    add(OpKind::Call,
                        n.args.empty() ? ScalarType::Float64 : expr_type(n.args[0], model));
                    for (const auto& a : n.args) count_expr(a, false);
                }
            },
            e.node);
    }

    void count_stmt(const Stmt& s) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, AssignStmt>) {
                    count_expr(n.value, false);
                    ScalarType lhs_type = model.var(n.lhs.name).element_type;
                    if (n.lhs.index) {
                        count_expr(*n.lhs.index, true);
                        add(OpKind::Store, lhs_type);
                        if (n.op != AssignOp::Set) {
                            add(OpKind::Load, lhs_type);  // read-modify-write
                            add(kind_of(n.op), promote(lhs_type, expr_type(n.value, model)));
                        }
                    } else if (n.op != AssignOp::Set) {
                        add(kind_of(n.op), promote(lhs_type, expr_type(n.value, model)));
                    }
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    for (const auto& b : n.body) count_stmt(b);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    for (const auto& b : n.body) count_stmt(b);
                } else if constexpr (std::is_same_v<T, PrintStmt>) {
                    count_expr(n.value, false);
                } else if constexpr (std::is_same_v<T, CallStmt>) {
                    add(OpKind::Call, n.call.args.empty() ? ScalarType::Float64
                                                          : expr_type(n.call.args[0], model));
                    for (const auto& a : n.call.args) count_expr(a, false);
                }
            },
            s.node);
    }
};

}  // namespace

std::vector<StaticOp> enumerate_static_ops(const KernelSpec& kernel, const ProgramModel& model) {
    OpCounter counter{model, {}};
    for (const auto& s : kernel.body) counter.count_stmt(s);
    if (kernel.epilogue)
        for (const auto& s : kernel.epilogue->body) counter.count_stmt(s);

    std::vector<StaticOp> out;
    for (const auto& [key, count] : counter.counts)
        out.push_back({static_cast<OpKind>(key.first), static_cast<ScalarType>(key.second), count});
    return out;
}

// ---------------------------------------------------------------------------
// OpenCL-style rendering
// ---------------------------------------------------------------------------

namespace {

// Scalars lowered to single-element buffers read/write element 0 in the text.
void buffer_scalar_refs(Expr& e, const std::string& name) {
    std::visit(
        [&](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarRef>) {
                if (n.name == name) {
                    Expr zero;
                    zero.pos = e.pos;
                    zero.node = IntLit{0, false};
                    e.node = ArrayRef{name, std::make_unique<Expr>(std::move(zero))};
                }
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                buffer_scalar_refs(*n.index, name);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                buffer_scalar_refs(*n.lhs, name);
                buffer_scalar_refs(*n.rhs, name);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                for (auto& a : n.args) buffer_scalar_refs(a, name);
            }
        },
        e.node);
}

void buffer_scalar_refs(Stmt& s, const std::string& name) {
    std::visit(
        [&](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AssignStmt>) {
                if (n.lhs.index) buffer_scalar_refs(*n.lhs.index, name);
                else if (n.lhs.name == name) {
                    Expr zero;
                    zero.pos = s.pos;
                    zero.node = IntLit{0, false};
                    n.lhs.index = std::make_unique<Expr>(std::move(zero));
                }
                buffer_scalar_refs(n.value, name);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                buffer_scalar_refs(n.init, name);
                buffer_scalar_refs(n.bound, name);
                for (auto& b : n.body) buffer_scalar_refs(b, name);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                buffer_scalar_refs(n.lhs, name);
                buffer_scalar_refs(n.rhs, name);
                for (auto& b : n.body) buffer_scalar_refs(b, name);
            } else if constexpr (std::is_same_v<T, PrintStmt>) {
                buffer_scalar_refs(n.value, name);
            } else if constexpr (std::is_same_v<T, CallStmt>) {
                for (auto& a : n.call.args) buffer_scalar_refs(a, name);
            }
        },
        s.node);
}

}  // namespace

std::string render_kernel(const KernelSpec& kernel) {
    std::ostringstream os;
    os << "// " << kernel.name << ": loop " << kernel.loop_id << ", unroll x"
       << kernel.unroll_factor << "\n";
    os << "__kernel void " << kernel.name << "(";
    for (size_t i = 0; i < kernel.params.size(); ++i) {
        const auto& p = kernel.params[i];
        if (i) os << ", ";
        if (p.is_buffer) {
            os << "__global ";
            if (p.direction == ParamDirection::In) os << "const ";
            os << type_keyword(p.type) << "* " << p.var;
        } else {
            os << "const " << type_keyword(p.type) << " " << p.var;
        }
    }
    os << ") {\n";

    for (const auto& l : kernel.locals)
        os << "    " << type_keyword(l.type) << " " << l.name << ";\n";

    auto scalar_buffers = [&] {
        std::vector<std::string> names;
        for (const auto& p : kernel.params)
            if (p.is_buffer && p.length == 1) names.push_back(p.var);
        return names;
    }();

    auto emit_loop = [&](long long init, long long count, long long step,
                         const std::vector<Stmt>& body) {
        long long limit = init + count * step;
        os << "    for (" << type_keyword(kernel.ivar_type) << " " << kernel.ivar << " = " << init
           << "; " << kernel.ivar << " < " << limit << "; " << kernel.ivar << " += " << step
           << ") {\n";
        for (const auto& s : body) {
            Stmt copy = clone(s);
            for (const auto& name : scalar_buffers) buffer_scalar_refs(copy, name);
            os << stmt_to_source(copy, 2);
        }
        os << "    }\n";
    };

    long long main_step = static_cast<long long>(kernel.unroll_factor) * kernel.stride;
    emit_loop(kernel.init_value, kernel.main_trip, main_step, kernel.body);
    if (kernel.epilogue)
        emit_loop(kernel.epilogue->start_value, kernel.epilogue->trip, kernel.stride,
                  kernel.epilogue->body);

    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string host_plan_to_json(const HostPlan& plan) {
    ojson j;
    ojson phases = ojson::array();
    for (const auto& p : plan.phases) {
        ojson pj;
        pj["phase"] = host_phase_name(p.phase);
        pj["vars"] = p.vars;
        phases.push_back(std::move(pj));
    }
    j["phases"] = std::move(phases);
    return j.dump(2);
}

std::string unit_to_json(const OffloadUnit& unit) {
    ojson j;
    j["loop_id"] = unit.loop_id;
    ojson k;
    k["name"] = unit.kernel.name;
    k["ivar"] = unit.kernel.ivar;
    k["ivar_type"] = type_name(unit.kernel.ivar_type);
    k["init"] = unit.kernel.init_value;
    k["stride"] = unit.kernel.stride;
    k["trip"] = unit.kernel.trip;
    k["unroll_factor"] = unit.kernel.unroll_factor;
    k["main_trip"] = unit.kernel.main_trip;
    ojson params = ojson::array();
    for (const auto& p : unit.kernel.params) {
        ojson pj;
        pj["var"] = p.var;
        pj["type"] = type_name(p.type);
        pj["buffer"] = p.is_buffer;
        pj["length"] = p.length;
        pj["direction"] = direction_name(p.direction);
        pj["transfer_bytes"] = p.transfer_bytes;
        params.push_back(std::move(pj));
    }
    k["params"] = std::move(params);
    ojson locals = ojson::array();
    for (const auto& l : unit.kernel.locals) {
        ojson lj;
        lj["name"] = l.name;
        lj["type"] = type_name(l.type);
        locals.push_back(std::move(lj));
    }
    k["locals"] = std::move(locals);
    ojson body = ojson::array();
    for (const auto& s : unit.kernel.body) body.push_back(stmt_to_ojson(s));
    k["body"] = std::move(body);
    if (unit.kernel.epilogue) {
        ojson e;
        e["start"] = unit.kernel.epilogue->start_value;
        e["trip"] = unit.kernel.epilogue->trip;
        ojson ebody = ojson::array();
        for (const auto& s : unit.kernel.epilogue->body) ebody.push_back(stmt_to_ojson(s));
        e["body"] = std::move(ebody);
        k["epilogue"] = std::move(e);
    }
    j["kernel"] = std::move(k);
    j["host"] = ojson::parse(host_plan_to_json(unit.host));
    return j.dump();
}

}  // namespace floop

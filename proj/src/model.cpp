#include "floop/model.hpp"

#include <algorithm>
#include <set>

#include "floop/errors.hpp"
#include "floop/frontend.hpp"

namespace floop {

const char* access_mode_name(AccessMode m) {
    switch (m) {
        case AccessMode::Read: return "read";
        case AccessMode::Write: return "write";
        case AccessMode::ReadWrite: return "readwrite";
    }
    return "?";
}

AccessMode merge(AccessMode a, AccessMode b) {
    if (a == b) return a;
    return AccessMode::ReadWrite;
}

const char* disqualifier_code(Disqualifier d) {
    switch (d) {
        case Disqualifier::UnknownTripCount: return "UNKNOWN_TRIP_COUNT";
        case Disqualifier::HasIo: return "HAS_IO";
        case Disqualifier::OpaqueCall: return "OPAQUE_CALL";
        case Disqualifier::NonAffineIndex: return "NON_AFFINE_INDEX";
        case Disqualifier::LoopCarriedScalarDep: return "LOOP_CARRIED_SCALAR_DEP_UNSUPPORTED";
    }
    return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Declarations and references
// ---------------------------------------------------------------------------

void collect_decls(const std::vector<Stmt>& body, bool in_loop,
                   std::map<std::string, VarInfo>& vars) {
    for (const auto& s : body) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, DeclStmt>) {
                    if (n.is_array && in_loop)
                        throw UnsupportedConstructError(s.pos, "array declaration inside a loop");
                    if (vars.count(n.name))
                        throw UnsupportedConstructError(s.pos,
                                                        "duplicate declaration of '" + n.name + "'");
                    VarInfo v;
                    v.name = n.name;
                    v.is_array = n.is_array;
                    v.element_type = n.type;
                    v.array_length = n.is_array ? n.array_length : 1;
                    v.byte_size = type_byte_size(n.type) * v.array_length;
                    v.has_initializer = n.init.has_value();
                    vars.emplace(n.name, std::move(v));
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    if (n.declares_ivar) {
                        if (vars.count(n.ivar))
                            throw UnsupportedConstructError(
                                s.pos, "duplicate declaration of '" + n.ivar + "'");
                        VarInfo v;
                        v.name = n.ivar;
                        v.element_type = n.ivar_type;
                        v.array_length = 1;
                        v.byte_size = type_byte_size(n.ivar_type);
                        v.has_initializer = true;  // the loop header always assigns it
                        vars.emplace(n.ivar, std::move(v));
                    }
                    collect_decls(n.body, true, vars);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    collect_decls(n.body, true, vars);
                }
            },
            s.node);
    }
}

void check_expr_refs(const Expr& e, const std::map<std::string, VarInfo>& vars) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarRef>) {
                auto it = vars.find(n.name);
                if (it == vars.end())
                    throw UnsupportedConstructError(e.pos, "use of undeclared name '" + n.name + "'");
                if (it->second.is_array)
                    throw UnsupportedConstructError(e.pos, "array '" + n.name + "' used as a scalar");
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                auto it = vars.find(n.name);
                if (it == vars.end())
                    throw UnsupportedConstructError(e.pos, "use of undeclared name '" + n.name + "'");
                if (!it->second.is_array)
                    throw UnsupportedConstructError(e.pos, "subscript on scalar '" + n.name + "'");
                check_expr_refs(*n.index, vars);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                check_expr_refs(*n.lhs, vars);
                check_expr_refs(*n.rhs, vars);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                for (const auto& a : n.args) check_expr_refs(a, vars);
            }
        },
        e.node);
}

void check_refs(const std::vector<Stmt>& body, const std::map<std::string, VarInfo>& vars) {
    for (const auto& s : body) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, DeclStmt>) {
                    // literal initializers carry no references
                } else if constexpr (std::is_same_v<T, AssignStmt>) {
                    auto it = vars.find(n.lhs.name);
                    if (it == vars.end())
                        throw UnsupportedConstructError(
                            s.pos, "use of undeclared name '" + n.lhs.name + "'");
                    if (n.lhs.is_array_element() != it->second.is_array)
                        throw UnsupportedConstructError(
                            s.pos, it->second.is_array
                                       ? "array '" + n.lhs.name + "' assigned without subscript"
                                       : "subscript on scalar '" + n.lhs.name + "'");
                    if (n.lhs.index) check_expr_refs(*n.lhs.index, vars);
                    check_expr_refs(n.value, vars);
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    if (!vars.count(n.ivar))
                        throw UnsupportedConstructError(s.pos,
                                                        "use of undeclared name '" + n.ivar + "'");
                    check_expr_refs(n.init, vars);
                    check_expr_refs(n.bound, vars);
                    check_refs(n.body, vars);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    check_expr_refs(n.lhs, vars);
                    check_expr_refs(n.rhs, vars);
                    check_refs(n.body, vars);
                } else if constexpr (std::is_same_v<T, PrintStmt>) {
                    check_expr_refs(n.value, vars);
                } else if constexpr (std::is_same_v<T, CallStmt>) {
                    for (const auto& a : n.call.args) check_expr_refs(a, vars);
                }
            },
            s.node);
    }
}

// ---------------------------------------------------------------------------
// Constant propagation: scalars with a literal initializer that are never
// reassigned act as compile-time constants for trip counts and indices.
// ---------------------------------------------------------------------------

void collect_writes(const std::vector<Stmt>& body, std::set<std::string>& written) {
    for (const auto& s : body) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, AssignStmt>) {
                    written.insert(n.lhs.name);
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    written.insert(n.ivar);
                    collect_writes(n.body, written);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    collect_writes(n.body, written);
                }
            },
            s.node);
    }
}

std::map<std::string, long long> compute_constants(const std::vector<FunctionDef>& functions,
                                                   const std::map<std::string, VarInfo>& vars) {
    std::set<std::string> written;
    for (const auto& f : functions) collect_writes(f.body, written);

    std::map<std::string, long long> consts;
    for (const auto& f : functions) {
        // only statement-level declarations can carry initializers
        std::vector<const std::vector<Stmt>*> stack{&f.body};
        while (!stack.empty()) {
            const auto* body = stack.back();
            stack.pop_back();
            for (const auto& s : *body) {
                if (const auto* d = std::get_if<DeclStmt>(&s.node)) {
                    if (d->init && !d->is_array && is_integer_type(d->type) &&
                        !written.count(d->name)) {
                        if (const auto* lit = std::get_if<IntLit>(&d->init->node))
                            consts[d->name] = lit->value;
                    }
                } else if (const auto* fo = std::get_if<ForStmt>(&s.node)) {
                    stack.push_back(&fo->body);
                } else if (const auto* wh = std::get_if<WhileStmt>(&s.node)) {
                    stack.push_back(&wh->body);
                }
            }
        }
    }
    (void)vars;
    return consts;
}

std::optional<long long> eval_const_int(const Expr& e,
                                        const std::map<std::string, long long>& consts) {
    if (const auto* i = std::get_if<IntLit>(&e.node)) return i->value;
    if (const auto* v = std::get_if<VarRef>(&e.node)) {
        auto it = consts.find(v->name);
        if (it != consts.end()) return it->second;
        return std::nullopt;
    }
    if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
        auto l = eval_const_int(*b->lhs, consts);
        auto r = eval_const_int(*b->rhs, consts);
        if (!l || !r) return std::nullopt;
        switch (b->op) {
            case BinOp::Add: return *l + *r;
            case BinOp::Sub: return *l - *r;
            case BinOp::Mul: return *l * *r;
            case BinOp::Div:
                if (*r == 0) return std::nullopt;
                return *l / *r;
        }
    }
    return std::nullopt;
}

std::optional<long long> static_trip_count(const ForStmt& f,
                                           const std::map<std::string, long long>& consts) {
    auto init = eval_const_int(f.init, consts);
    auto bound = eval_const_int(f.bound, consts);
    if (!init || !bound) return std::nullopt;
    long long span = *bound - *init;
    if (f.cmp == CmpOp::Lt) {
        if (span <= 0) return 0;
        return (span + f.stride - 1) / f.stride;
    }
    if (span < 0) return 0;
    return span / f.stride + 1;
}

// ---------------------------------------------------------------------------
// Immediate-body operation profile. Nested loops are opaque here.
// ---------------------------------------------------------------------------

void profile_expr(const Expr& e, bool in_index, OpProfile& p) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ArrayRef>) {
                p.mem_accesses += 1;
                profile_expr(*n.index, true, p);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                if (!in_index) p.arith_ops += 1;  // index arithmetic is addressing
                profile_expr(*n.lhs, in_index, p);
                profile_expr(*n.rhs, in_index, p);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                p.calls += 1;
                for (const auto& a : n.args) profile_expr(a, false, p);
            }
        },
        e.node);
}

}  // namespace

OpProfile profile_statements(const std::vector<Stmt>& body) {
    OpProfile p;
    for (const auto& s : body) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, AssignStmt>) {
                    if (n.lhs.index) {
                        p.mem_accesses += 1;
                        profile_expr(*n.lhs.index, true, p);
                    }
                    if (n.op != AssignOp::Set) p.arith_ops += 1;
                    profile_expr(n.value, false, p);
                } else if constexpr (std::is_same_v<T, PrintStmt>) {
                    p.has_io = true;
                    profile_expr(n.value, false, p);
                } else if constexpr (std::is_same_v<T, CallStmt>) {
                    p.calls += 1;
                    for (const auto& a : n.call.args) profile_expr(a, false, p);
                }
                // DeclStmt: literal init only; For/While: excluded
            },
            s.node);
    }
    return p;
}

namespace {

// ---------------------------------------------------------------------------
// Subtree analysis for offloadability and kernel parameter inference.
// ---------------------------------------------------------------------------

enum class EvKind { Read, PlainWrite, CompoundWrite };

struct ScalarEvent {
    EvKind kind;
    bool rhs_reads_self = false;
    int depth = 0;
};

struct SubtreeInfo {
    std::set<std::string> ivars;  // induction vars of the candidate and nested loops
    std::map<std::string, AccessMode> access;
    std::map<std::string, std::vector<ScalarEvent>> scalar_events;
    bool has_io = false;
    bool has_opaque_call = false;
    bool has_while = false;
    bool unknown_nested_trip = false;
    bool wrote_control_var = false;
    bool all_indices_affine = true;
};

void collect_subtree_ivars(const ForStmt& loop, std::set<std::string>& ivars) {
    ivars.insert(loop.ivar);
    for (const auto& s : loop.body) {
        if (const auto* f = std::get_if<ForStmt>(&s.node)) collect_subtree_ivars(*f, ivars);
        if (const auto* w = std::get_if<WhileStmt>(&s.node))
            for (const auto& ws : w->body)
                if (const auto* wf = std::get_if<ForStmt>(&ws.node))
                    collect_subtree_ivars(*wf, ivars);
    }
}

void collect_written_names(const std::vector<Stmt>& body, std::set<std::string>& written) {
    collect_writes(body, written);
}

bool expr_reads(const Expr& e, const std::string& name) {
    bool found = false;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarRef>) {
                found = n.name == name;
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                found = n.name == name || expr_reads(*n.index, name);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                found = expr_reads(*n.lhs, name) || expr_reads(*n.rhs, name);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                for (const auto& a : n.args) found = found || expr_reads(a, name);
            }
        },
        e.node);
    return found;
}

struct AffineContext {
    const std::set<std::string>* allowed_ivars;
    const std::map<std::string, long long>* consts;
    const std::set<std::string>* written_in_subtree;
    const std::map<std::string, VarInfo>* vars;
};

bool is_affine_index(const Expr& e, const AffineContext& ctx) {
    if (std::holds_alternative<IntLit>(e.node)) return true;
    if (const auto* v = std::get_if<VarRef>(&e.node)) {
        if (ctx.allowed_ivars->count(v->name)) return true;
        auto it = ctx.vars->find(v->name);
        if (it == ctx.vars->end() || !is_integer_type(it->second.element_type)) return false;
        if (ctx.consts->count(v->name)) return true;
        return !ctx.written_in_subtree->count(v->name);  // loop-invariant symbol
    }
    if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
        switch (b->op) {
            case BinOp::Add:
            case BinOp::Sub:
                return is_affine_index(*b->lhs, ctx) && is_affine_index(*b->rhs, ctx);
            case BinOp::Mul: {
                bool lc = eval_const_int(*b->lhs, *ctx.consts).has_value();
                bool rc = eval_const_int(*b->rhs, *ctx.consts).has_value();
                return (lc && is_affine_index(*b->rhs, ctx)) ||
                       (rc && is_affine_index(*b->lhs, ctx));
            }
            case BinOp::Div:
                return false;
        }
    }
    return false;  // float literals, array reads, calls
}

class SubtreeWalker {
  public:
    SubtreeWalker(SubtreeInfo& info, const AffineContext& affine,
                  const std::set<std::string>& control_vars,
                  const std::map<std::string, long long>& consts)
        : info_(info), affine_(affine), control_vars_(control_vars), consts_(consts) {}

    void walk_body(const std::vector<Stmt>& body, int depth) {
        for (const auto& s : body) walk_stmt(s, depth);
    }

  private:
    SubtreeInfo& info_;
    const AffineContext& affine_;
    const std::set<std::string>& control_vars_;  // subtree + ancestor ivars
    const std::map<std::string, long long>& consts_;

    void note_read(const std::string& name, bool is_array, int depth) {
        if (!is_array && info_.ivars.count(name)) return;
        auto [it, inserted] = info_.access.emplace(name, AccessMode::Read);
        if (!inserted) it->second = merge(it->second, AccessMode::Read);
        if (!is_array) info_.scalar_events[name].push_back({EvKind::Read, false, depth});
    }

    void note_write(const std::string& name, bool is_array, EvKind kind, bool reads_self,
                    int depth) {
        if (!is_array && control_vars_.count(name)) {
            info_.wrote_control_var = true;
            return;
        }
        AccessMode mode = kind == EvKind::CompoundWrite ? AccessMode::ReadWrite : AccessMode::Write;
        auto [it, inserted] = info_.access.emplace(name, mode);
        if (!inserted) it->second = merge(it->second, mode);
        if (!is_array) info_.scalar_events[name].push_back({kind, reads_self, depth});
    }

    void walk_expr(const Expr& e, int depth) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, VarRef>) {
                    note_read(n.name, false, depth);
                } else if constexpr (std::is_same_v<T, ArrayRef>) {
                    note_read(n.name, true, depth);
                    if (!is_affine_index(*n.index, affine_)) info_.all_indices_affine = false;
                    walk_expr(*n.index, depth);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    walk_expr(*n.lhs, depth);
                    walk_expr(*n.rhs, depth);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    if (!is_math_builtin(n.callee)) info_.has_opaque_call = true;
                    for (const auto& a : n.args) walk_expr(a, depth);
                }
            },
            e.node);
    }

    void walk_stmt(const Stmt& s, int depth) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, AssignStmt>) {
                    // value first: in `a = expr`, expr's reads happen before the write
                    walk_expr(n.value, depth);
                    if (n.lhs.index) {
                        if (!is_affine_index(*n.lhs.index, affine_)) info_.all_indices_affine = false;
                        walk_expr(*n.lhs.index, depth);
                        AccessMode mode = n.op == AssignOp::Set ? AccessMode::Write
                                                                : AccessMode::ReadWrite;
                        auto [it, inserted] = info_.access.emplace(n.lhs.name, mode);
                        if (!inserted) it->second = merge(it->second, mode);
                    } else {
                        EvKind kind =
                            n.op == AssignOp::Set ? EvKind::PlainWrite : EvKind::CompoundWrite;
                        note_write(n.lhs.name, false, kind, expr_reads(n.value, n.lhs.name), depth);
                    }
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    walk_expr(n.init, depth);
                    walk_expr(n.bound, depth);
                    if (!static_trip_count(n, consts_)) info_.unknown_nested_trip = true;
                    walk_body(n.body, depth + 1);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    info_.has_while = true;
                    walk_expr(n.lhs, depth);
                    walk_expr(n.rhs, depth);
                    walk_body(n.body, depth + 1);
                } else if constexpr (std::is_same_v<T, PrintStmt>) {
                    info_.has_io = true;
                    walk_expr(n.value, depth);
                } else if constexpr (std::is_same_v<T, CallStmt>) {
                    if (!is_math_builtin(n.call.callee)) info_.has_opaque_call = true;
                    for (const auto& a : n.call.args) walk_expr(a, depth);
                } else if constexpr (std::is_same_v<T, DeclStmt>) {
                    // a scalar declared with an initializer writes it each iteration
                    if (!n.is_array && n.init)
                        note_write(n.name, false, EvKind::PlainWrite, false, depth);
                }
            },
            s.node);
    }
};

ScalarRole classify_scalar(const std::vector<ScalarEvent>& evs) {
    bool any_read = false, any_plain = false, any_compound = false, compound_reads_self = false;
    for (const auto& e : evs) {
        any_read |= e.kind == EvKind::Read;
        any_plain |= e.kind == EvKind::PlainWrite;
        any_compound |= e.kind == EvKind::CompoundWrite;
        if (e.kind == EvKind::CompoundWrite) compound_reads_self |= e.rhs_reads_self;
    }
    if (!any_plain && !any_compound) return ScalarRole::LoopInput;
    if (!any_read && !any_plain && any_compound && !compound_reads_self)
        return ScalarRole::Reduction;
    if (!any_read && !any_compound) return ScalarRole::Output;
    const auto& first = evs.front();
    if (first.kind == EvKind::PlainWrite && first.depth == 0 && !first.rhs_reads_self)
        return ScalarRole::PrivateTemp;
    return ScalarRole::Carried;
}

// ---------------------------------------------------------------------------
// Loop tree construction
// ---------------------------------------------------------------------------

struct LoopTreeBuilder {
    ProgramModel& model;
    int next_id = 1;

    void walk(std::vector<Stmt>& body, int function_index, std::optional<int> parent, int depth) {
        for (auto& s : body) {
            if (auto* f = std::get_if<ForStmt>(&s.node)) {
                int id = next_id++;
                f->loop_id = id;
                LoopCandidate cand;
                cand.id = id;
                cand.parent_id = parent;
                cand.function_index = function_index;
                cand.function_name = model.functions[function_index].name;
                cand.depth = depth;
                cand.stmt = f;
                if (parent) model.loops[*parent - 1].children.push_back(id);
                model.loops.push_back(std::move(cand));
                walk(f->body, function_index, id, depth + 1);
            } else if (auto* w = std::get_if<WhileStmt>(&s.node)) {
                // while loops are structural only; nested fors keep the nearest
                // enclosing for as their parent
                walk(w->body, function_index, parent, depth + 1);
            }
        }
    }
};

std::set<std::string> ancestor_ivars(const ProgramModel& model, const LoopCandidate& loop) {
    std::set<std::string> out;
    std::optional<int> p = loop.parent_id;
    while (p) {
        const auto& anc = model.loops[*p - 1];
        out.insert(anc.stmt->ivar);
        p = anc.parent_id;
    }
    return out;
}

bool stmt_references(const Stmt& s, const std::string& name, const ForStmt* skip);

bool expr_references(const Expr& e, const std::string& name) { return expr_reads(e, name); }

bool body_references(const std::vector<Stmt>& body, const std::string& name,
                     const ForStmt* skip) {
    for (const auto& s : body)
        if (stmt_references(s, name, skip)) return true;
    return false;
}

bool stmt_references(const Stmt& s, const std::string& name, const ForStmt* skip) {
    bool found = false;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AssignStmt>) {
                found = n.lhs.name == name || (n.lhs.index && expr_references(*n.lhs.index, name)) ||
                        expr_references(n.value, name);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                if (&n == skip) return;
                found = n.ivar == name || expr_references(n.init, name) ||
                        expr_references(n.bound, name) || body_references(n.body, name, skip);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                found = expr_references(n.lhs, name) || expr_references(n.rhs, name) ||
                        body_references(n.body, name, skip);
            } else if constexpr (std::is_same_v<T, PrintStmt>) {
                found = expr_references(n.value, name);
            } else if constexpr (std::is_same_v<T, CallStmt>) {
                for (const auto& a : n.call.args) found = found || expr_references(a, name);
            }
        },
        s.node);
    return found;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProgramModel
// ---------------------------------------------------------------------------

const LoopCandidate& ProgramModel::loop(int id) const {
    if (id < 1 || id > static_cast<int>(loops.size())) throw UnknownLoopIdError(id);
    return loops[id - 1];
}

const VarInfo& ProgramModel::var(const std::string& name) const {
    auto it = variables.find(name);
    if (it == variables.end()) throw Error("unknown variable '" + name + "'");
    return it->second;
}

std::optional<long long> ProgramModel::total_arith_ops(int id) const {
    const auto& l = loop(id);
    if (!l.trip_count) return std::nullopt;
    long long total = l.body_profile.arith_ops * *l.trip_count;
    for (int c : l.children) {
        auto sub = total_arith_ops(c);
        if (!sub) return std::nullopt;
        total += *sub;
    }
    return total;
}

long long ProgramModel::execution_count(int id) const {
    long long count = 1;
    std::optional<int> p = loop(id).parent_id;
    while (p) {
        const auto& anc = loops[*p - 1];
        count *= anc.trip_count.value_or(1);
        p = anc.parent_id;
    }
    return count;
}

bool ProgramModel::referenced_outside_loop(const std::string& name, int id) const {
    const ForStmt* skip = loop(id).stmt;
    for (const auto& f : functions)
        if (body_references(f.body, name, skip)) return true;
    return false;
}

OffloadabilityVerdict check_offloadable(const LoopCandidate& loop, const ProgramModel& model) {
    OffloadabilityVerdict v;

    SubtreeInfo info;
    collect_subtree_ivars(*loop.stmt, info.ivars);

    std::set<std::string> written;
    collect_written_names(loop.stmt->body, written);

    std::set<std::string> allowed = info.ivars;
    std::set<std::string> control = info.ivars;
    for (const auto& iv : ancestor_ivars(model, loop)) {
        allowed.insert(iv);
        control.insert(iv);
    }

    AffineContext affine{&allowed, &model.constants, &written, &model.variables};
    SubtreeWalker walker(info, affine, control, model.constants);
    walker.walk_body(loop.stmt->body, 0);

    bool carried = info.wrote_control_var;
    for (const auto& [name, evs] : info.scalar_events)
        if (classify_scalar(evs) == ScalarRole::Carried) carried = true;

    if (!loop.trip_count || info.unknown_nested_trip || info.has_while)
        v.reasons.push_back(Disqualifier::UnknownTripCount);
    if (info.has_io) v.reasons.push_back(Disqualifier::HasIo);
    if (info.has_opaque_call) v.reasons.push_back(Disqualifier::OpaqueCall);
    if (!info.all_indices_affine) v.reasons.push_back(Disqualifier::NonAffineIndex);
    if (carried) v.reasons.push_back(Disqualifier::LoopCarriedScalarDep);

    v.offloadable = v.reasons.empty();
    return v;
}

ProgramModel build_model(std::vector<FunctionDef> functions) {
    ProgramModel model;
    model.functions = std::move(functions);

    for (const auto& f : model.functions) collect_decls(f.body, false, model.variables);
    for (const auto& f : model.functions) check_refs(f.body, model.variables);
    model.constants = compute_constants(model.functions, model.variables);

    LoopTreeBuilder builder{model};
    for (size_t fi = 0; fi < model.functions.size(); ++fi)
        builder.walk(model.functions[fi].body, static_cast<int>(fi), std::nullopt, 0);

    for (auto& cand : model.loops) {
        cand.trip_count = static_trip_count(*cand.stmt, model.constants);
        cand.body_profile = profile_statements(cand.stmt->body);
    }

    // separate pass: verdicts and accessed variables need the whole loop table
    for (auto& cand : model.loops) {
        SubtreeInfo info;
        collect_subtree_ivars(*cand.stmt, info.ivars);
        std::set<std::string> written;
        collect_written_names(cand.stmt->body, written);
        std::set<std::string> allowed = info.ivars;
        std::set<std::string> control = info.ivars;
        for (const auto& iv : ancestor_ivars(model, cand)) {
            allowed.insert(iv);
            control.insert(iv);
        }
        AffineContext affine{&allowed, &model.constants, &written, &model.variables};
        SubtreeWalker walker(info, affine, control, model.constants);
        walker.walk_body(cand.stmt->body, 0);

        cand.accessed_vars.clear();
        for (const auto& [name, mode] : info.access)
            cand.accessed_vars.push_back({name, mode});

        cand.scalar_roles.clear();
        for (const auto& [name, evs] : info.scalar_events) {
            ScalarRole role = classify_scalar(evs);
            if (role != ScalarRole::LoopInput) cand.scalar_roles[name] = role;
        }

        cand.verdict = check_offloadable(cand, model);
    }

    return model;
}

}  // namespace floop

#include "floop/interpreter.hpp"

#include <cmath>

#include "floop/errors.hpp"

namespace floop {

RuntimeValue RuntimeValue::make_int(long long v, ScalarType t) {
    RuntimeValue r;
    r.type = t;
    r.i = v;
    return r;
}

RuntimeValue RuntimeValue::make_float(double v, ScalarType t) {
    RuntimeValue r;
    r.type = t;
    r.f = t == ScalarType::Float32 ? static_cast<double>(static_cast<float>(v)) : v;
    return r;
}

double RuntimeValue::as_double() const {
    return is_integer_type(type) ? static_cast<double>(i) : f;
}

long long RuntimeValue::as_int() const {
    return is_integer_type(type) ? i : static_cast<long long>(f);
}

RuntimeValue convert(const RuntimeValue& v, ScalarType target) {
    if (is_integer_type(target)) {
        long long x = v.as_int();
        if (target == ScalarType::Int32) x = static_cast<int>(x);
        return RuntimeValue::make_int(x, target);
    }
    return RuntimeValue::make_float(v.as_double(), target);
}

namespace {

RuntimeValue apply_binop(BinOp op, const RuntimeValue& a, const RuntimeValue& b, SourcePos pos) {
    ScalarType t = promote(a.type, b.type);
    if (is_integer_type(t)) {
        long long x = a.as_int(), y = b.as_int();
        long long r = 0;
        switch (op) {
            case BinOp::Add: r = x + y; break;
            case BinOp::Sub: r = x - y; break;
            case BinOp::Mul: r = x * y; break;
            case BinOp::Div:
                if (y == 0) throw DivisionByZeroError(pos);
                r = x / y;
                break;
        }
        return convert(RuntimeValue::make_int(r), t);
    }
    double x = a.as_double(), y = b.as_double();
    double r = 0;
    switch (op) {
        case BinOp::Add: r = x + y; break;
        case BinOp::Sub: r = x - y; break;
        case BinOp::Mul: r = x * y; break;
        case BinOp::Div:
            if (y == 0.0) throw DivisionByZeroError(pos);
            r = x / y;
            break;
    }
    return RuntimeValue::make_float(r, t);
}

bool apply_cmp(CmpOp op, const RuntimeValue& a, const RuntimeValue& b) {
    ScalarType t = promote(a.type, b.type);
    if (is_integer_type(t)) {
        long long x = a.as_int(), y = b.as_int();
        switch (op) {
            case CmpOp::Lt: return x < y;
            case CmpOp::Le: return x <= y;
            case CmpOp::Gt: return x > y;
            case CmpOp::Ge: return x >= y;
            case CmpOp::Eq: return x == y;
            case CmpOp::Ne: return x != y;
        }
    }
    double x = a.as_double(), y = b.as_double();
    switch (op) {
        case CmpOp::Lt: return x < y;
        case CmpOp::Le: return x <= y;
        case CmpOp::Gt: return x > y;
        case CmpOp::Ge: return x >= y;
        case CmpOp::Eq: return x == y;
        case CmpOp::Ne: return x != y;
    }
    return false;
}

RuntimeValue call_builtin(const std::string& name, const RuntimeValue& arg) {
    double x = arg.as_double();
    double r = 0;
    if (name == "sqrt") r = std::sqrt(x);
    else if (name == "sin") r = std::sin(x);
    else if (name == "cos") r = std::cos(x);
    else if (name == "exp") r = std::exp(x);
    else if (name == "fabs") r = std::fabs(x);
    ScalarType t = is_integer_type(arg.type) ? ScalarType::Float64 : arg.type;
    return RuntimeValue::make_float(r, t);
}

class Interpreter {
  public:
    Interpreter(const ProgramModel& model, ProgramState& state, std::vector<RuntimeValue>& printed,
                const InterpOptions& opts,
                const std::map<int, const OffloadUnit*>* offloaded = nullptr)
        : model_(model), state_(state), printed_(printed), opts_(opts), offloaded_(offloaded) {}

    void run() {
        const FunctionDef* entry = nullptr;
        for (const auto& f : model_.functions) {
            if (f.name == "__globals") exec_body(f.body, state_);
            else if (f.name == "main") entry = &f;
        }
        if (!entry)
            for (const auto& f : model_.functions)
                if (f.name != "__globals") {
                    entry = &f;
                    break;
                }
        if (entry) exec_body(entry->body, state_);
    }

    void exec_body(const std::vector<Stmt>& body, ProgramState& env) {
        for (const auto& s : body) exec_stmt(s, env);
    }

    void exec_stmt(const Stmt& s, ProgramState& env) {
        step(s.pos);
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, DeclStmt>) {
                    if (n.init) {
                        Cell& c = cell(env, n.name, 0, s.pos);
                        c.value = convert(eval(*n.init, env), n.type);
                        c.defined = true;
                    }
                } else if constexpr (std::is_same_v<T, AssignStmt>) {
                    exec_assign(n, s.pos, env);
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    exec_for(n, s.pos, env);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    while (apply_cmp(n.cmp, eval(n.lhs, env), eval(n.rhs, env))) {
                        step(s.pos);
                        exec_body(n.body, env);
                    }
                } else if constexpr (std::is_same_v<T, PrintStmt>) {
                    printed_.push_back(eval(n.value, env));
                } else if constexpr (std::is_same_v<T, CallStmt>) {
                    exec_call_stmt(n, s.pos, env);
                }
            },
            s.node);
    }

    RuntimeValue eval(const Expr& e, ProgramState& env) {
        RuntimeValue out;
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, IntLit>) {
                    out = RuntimeValue::make_int(n.value,
                                                 n.is_long ? ScalarType::Int64 : ScalarType::Int32);
                } else if constexpr (std::is_same_v<T, FloatLit>) {
                    out = RuntimeValue::make_float(
                        n.value, n.is_single ? ScalarType::Float32 : ScalarType::Float64);
                } else if constexpr (std::is_same_v<T, VarRef>) {
                    out = read(env, n.name, 0, e.pos);
                } else if constexpr (std::is_same_v<T, ArrayRef>) {
                    long long idx = eval(*n.index, env).as_int();
                    out = read(env, n.name, idx, e.pos);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    out = apply_binop(n.op, eval(*n.lhs, env), eval(*n.rhs, env), e.pos);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    if (!is_math_builtin(n.callee) || n.args.size() != 1)
                        throw InterpError("call to '" + n.callee +
                                          "' cannot be evaluated in an expression");
                    out = call_builtin(n.callee, eval(n.args[0], env));
                }
            },
            e.node);
        return out;
    }

  private:
    const ProgramModel& model_;
    ProgramState& state_;
    std::vector<RuntimeValue>& printed_;
    const InterpOptions& opts_;
    const std::map<int, const OffloadUnit*>* offloaded_;
    long long steps_ = 0;
    int call_depth_ = 0;

    void step(SourcePos pos) {
        if (++steps_ > opts_.max_steps)
            throw InterpError(std::to_string(pos.line) + ":" + std::to_string(pos.col) +
                              ": execution step limit exceeded");
    }

    Cell& cell(ProgramState& env, const std::string& name, long long idx, SourcePos pos) {
        auto it = env.find(name);
        if (it == env.end()) throw InterpError("no storage for variable '" + name + "'");
        if (idx < 0 || idx >= static_cast<long long>(it->second.cells.size()))
            throw InterpError(std::to_string(pos.line) + ":" + std::to_string(pos.col) +
                              ": index " + std::to_string(idx) + " out of bounds for '" + name +
                              "' (length " + std::to_string(it->second.cells.size()) + ")");
        return it->second.cells[static_cast<size_t>(idx)];
    }

    RuntimeValue read(ProgramState& env, const std::string& name, long long idx, SourcePos pos) {
        Cell& c = cell(env, name, idx, pos);
        if (!c.defined) throw UnboundInputError(name);
        return c.value;
    }

    void exec_assign(const AssignStmt& a, SourcePos pos, ProgramState& env) {
        long long idx = a.lhs.index ? eval(*a.lhs.index, env).as_int() : 0;
        RuntimeValue rhs = eval(a.value, env);
        Cell& c = cell(env, a.lhs.name, idx, pos);
        ScalarType target = env.at(a.lhs.name).info.element_type;
        if (a.op == AssignOp::Set) {
            c.value = convert(rhs, target);
        } else {
            if (!c.defined) throw UnboundInputError(a.lhs.name);
            BinOp op = a.op == AssignOp::AddAssign  ? BinOp::Add
                       : a.op == AssignOp::SubAssign ? BinOp::Sub
                                                     : BinOp::Mul;
            c.value = convert(apply_binop(op, c.value, rhs, pos), target);
        }
        c.defined = true;
    }

    void exec_for(const ForStmt& f, SourcePos pos, ProgramState& env) {
        if (offloaded_) {
            auto it = offloaded_->find(f.loop_id);
            if (it != offloaded_->end()) {
                interpret_offload_unit(*it->second, model_, env, opts_);
                return;
            }
        }
        Cell& iv = cell(env, f.ivar, 0, pos);
        ScalarType it = env.at(f.ivar).info.element_type;
        iv.value = convert(eval(f.init, env), it);
        iv.defined = true;
        while (apply_cmp(f.cmp, iv.value, eval(f.bound, env))) {
            step(pos);
            exec_body(f.body, env);
            iv.value = convert(
                RuntimeValue::make_int(iv.value.as_int() + f.stride, ScalarType::Int64), it);
        }
    }

    void exec_call_stmt(const CallStmt& c, SourcePos pos, ProgramState& env) {
        if (is_math_builtin(c.call.callee)) {
            for (const auto& a : c.call.args) eval(a, env);  // evaluated, result discarded
            return;
        }
        for (const auto& f : model_.functions) {
            if (f.name == c.call.callee) {
                if (!c.call.args.empty())
                    throw InterpError("function '" + f.name + "' takes no arguments");
                if (++call_depth_ > opts_.max_call_depth)
                    throw InterpError("call depth limit exceeded at '" + f.name + "'");
                exec_body(f.body, env);
                --call_depth_;
                return;
            }
        }
        throw InterpError(std::to_string(pos.line) + ":" + std::to_string(pos.col) +
                          ": call to unknown function '" + c.call.callee + "'");
    }
};

ProgramState initial_state(const ProgramModel& model, const InterpreterInputs& inputs) {
    ProgramState state;
    for (const auto& [name, info] : model.variables) {
        Binding b;
        b.info = info;
        b.cells.resize(static_cast<size_t>(info.array_length));
        for (auto& c : b.cells) c.value.type = info.element_type;
        state.emplace(name, std::move(b));
    }
    for (const auto& [name, vals] : inputs.values) {
        auto it = state.find(name);
        if (it == state.end()) throw InterpError("input for unknown variable '" + name + "'");
        Binding& b = it->second;
        if (vals.size() != b.cells.size())
            throw InterpError("input for '" + name + "' has " + std::to_string(vals.size()) +
                              " values, expected " + std::to_string(b.cells.size()));
        for (size_t i = 0; i < vals.size(); ++i) {
            b.cells[i].value = convert(vals[i], b.info.element_type);
            b.cells[i].defined = true;
        }
    }
    return state;
}

// ivar bindings for nested loops that declare inline
void declare_kernel_ivars(const std::vector<Stmt>& body, ProgramState& env) {
    for (const auto& s : body) {
        if (const auto* f = std::get_if<ForStmt>(&s.node)) {
            if (f->declares_ivar && !env.count(f->ivar)) {
                Binding b;
                b.info.name = f->ivar;
                b.info.element_type = f->ivar_type;
                b.info.array_length = 1;
                b.cells.resize(1);
                b.cells[0].value.type = f->ivar_type;
                env.emplace(f->ivar, std::move(b));
            }
            declare_kernel_ivars(f->body, env);
        } else if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
            declare_kernel_ivars(w->body, env);
        }
    }
}

}  // namespace

ExecutionResult interpret_program(const ProgramModel& model, const InterpreterInputs& inputs,
                                  const InterpOptions& opts) {
    ExecutionResult result;
    result.state = initial_state(model, inputs);
    Interpreter interp(model, result.state, result.printed, opts);
    interp.run();
    return result;
}

ExecutionResult interpret_with_offload(const ProgramModel& model, const InterpreterInputs& inputs,
                                       const std::vector<OffloadUnit>& units,
                                       const InterpOptions& opts) {
    std::map<int, const OffloadUnit*> by_loop;
    for (const auto& u : units) by_loop[u.loop_id] = &u;
    ExecutionResult result;
    result.state = initial_state(model, inputs);
    Interpreter interp(model, result.state, result.printed, opts, &by_loop);
    interp.run();
    return result;
}

void interpret_offload_unit(const OffloadUnit& unit, const ProgramModel& model,
                            ProgramState& state, const InterpOptions& opts) {
    const KernelSpec& k = unit.kernel;

    // AllocDeviceMemory + TransferHostToDevice + SetKernelArgs
    ProgramState device;
    for (const auto& p : k.params) {
        auto hit = state.find(p.var);
        if (hit == state.end()) throw InterpError("no storage for kernel param '" + p.var + "'");
        Binding dev;
        dev.info = hit->second.info;
        if (p.direction == ParamDirection::Out) {
            dev.cells.assign(hit->second.cells.size(), Cell{});
            for (auto& c : dev.cells) c.value.type = dev.info.element_type;
        } else {
            dev.cells = hit->second.cells;
        }
        device.emplace(p.var, std::move(dev));
    }
    for (const auto& l : k.locals) {
        Binding b;
        b.info.name = l.name;
        b.info.element_type = l.type;
        b.info.array_length = 1;
        b.cells.resize(1);
        b.cells[0].value.type = l.type;
        device.emplace(l.name, std::move(b));
    }
    {
        Binding b;
        b.info.name = k.ivar;
        b.info.element_type = k.ivar_type;
        b.info.array_length = 1;
        b.cells.resize(1);
        b.cells[0].value.type = k.ivar_type;
        device.emplace(k.ivar, std::move(b));
    }
    declare_kernel_ivars(k.body, device);
    if (k.epilogue) declare_kernel_ivars(k.epilogue->body, device);

    // ExecuteKernel
    std::vector<RuntimeValue> printed;  // kernels cannot print; placeholder sink
    Interpreter interp(model, device, printed, opts);
    auto run_loop = [&](long long init, long long count, long long step,
                        const std::vector<Stmt>& body) {
        Cell& iv = device.at(k.ivar).cells[0];
        iv.value = convert(RuntimeValue::make_int(init, ScalarType::Int64), k.ivar_type);
        iv.defined = true;
        for (long long t = 0; t < count; ++t) {
            interp.exec_body(body, device);
            iv.value = convert(RuntimeValue::make_int(iv.value.as_int() + step, ScalarType::Int64),
                               k.ivar_type);
        }
    };
    run_loop(k.init_value, k.main_trip, static_cast<long long>(k.unroll_factor) * k.stride, k.body);
    if (k.epilogue) run_loop(k.epilogue->start_value, k.epilogue->trip, k.stride, k.epilogue->body);

    // TransferDeviceToHost
    for (const auto& p : k.params)
        if (p.is_buffer && p.direction != ParamDirection::In)
            state.at(p.var).cells = device.at(p.var).cells;
}

}  // namespace floop

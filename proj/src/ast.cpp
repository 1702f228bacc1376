#include "floop/ast.hpp"

#include <algorithm>

namespace floop {

const char* type_name(ScalarType t) {
    switch (t) {
        case ScalarType::Int32: return "int32";
        case ScalarType::Int64: return "int64";
        case ScalarType::Float32: return "float32";
        case ScalarType::Float64: return "float64";
    }
    return "?";
}

const char* type_keyword(ScalarType t) {
    switch (t) {
        case ScalarType::Int32: return "int";
        case ScalarType::Int64: return "long";
        case ScalarType::Float32: return "float";
        case ScalarType::Float64: return "double";
    }
    return "?";
}

int type_byte_size(ScalarType t) {
    switch (t) {
        case ScalarType::Int32: return 4;
        case ScalarType::Int64: return 8;
        case ScalarType::Float32: return 4;
        case ScalarType::Float64: return 8;
    }
    return 0;
}

bool is_integer_type(ScalarType t) {
    return t == ScalarType::Int32 || t == ScalarType::Int64;
}

ScalarType promote(ScalarType a, ScalarType b) {
    auto rank = [](ScalarType t) {
        switch (t) {
            case ScalarType::Int32: return 0;
            case ScalarType::Int64: return 1;
            case ScalarType::Float32: return 2;
            case ScalarType::Float64: return 3;
        }
        return 0;
    };
    return rank(a) >= rank(b) ? a : b;
}

const char* token_of(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
    }
    return "?";
}

const char* token_of(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
        case CmpOp::Eq: return "==";
        case CmpOp::Ne: return "!=";
    }
    return "?";
}

const char* token_of(AssignOp op) {
    switch (op) {
        case AssignOp::Set: return "=";
        case AssignOp::AddAssign: return "+=";
        case AssignOp::SubAssign: return "-=";
        case AssignOp::MulAssign: return "*=";
    }
    return "?";
}

bool is_math_builtin(const std::string& name) {
    return name == "sqrt" || name == "sin" || name == "cos" || name == "exp" || name == "fabs";
}

Expr clone(const Expr& e) {
    Expr out;
    out.pos = e.pos;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, FloatLit> ||
                          std::is_same_v<T, VarRef>) {
                out.node = n;
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                out.node = ArrayRef{n.name, clone_ptr(*n.index)};
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                out.node = BinaryExpr{n.op, clone_ptr(*n.lhs), clone_ptr(*n.rhs)};
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                CallExpr c;
                c.callee = n.callee;
                c.args.reserve(n.args.size());
                for (const auto& a : n.args) c.args.push_back(clone(a));
                out.node = std::move(c);
            }
        },
        e.node);
    return out;
}

ExprPtr clone_ptr(const Expr& e) { return std::make_unique<Expr>(clone(e)); }

Stmt clone(const Stmt& s) {
    Stmt out;
    out.pos = s.pos;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, DeclStmt>) {
                DeclStmt d;
                d.type = n.type;
                d.name = n.name;
                d.is_array = n.is_array;
                d.array_length = n.array_length;
                if (n.init) d.init = clone(*n.init);
                out.node = std::move(d);
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                AssignStmt a;
                a.lhs.name = n.lhs.name;
                if (n.lhs.index) a.lhs.index = clone_ptr(*n.lhs.index);
                a.op = n.op;
                a.value = clone(n.value);
                out.node = std::move(a);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                ForStmt f;
                f.declares_ivar = n.declares_ivar;
                f.ivar_type = n.ivar_type;
                f.ivar = n.ivar;
                f.init = clone(n.init);
                f.cmp = n.cmp;
                f.bound = clone(n.bound);
                f.stride = n.stride;
                f.body = clone(n.body);
                f.loop_id = n.loop_id;
                out.node = std::move(f);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                WhileStmt w;
                w.lhs = clone(n.lhs);
                w.cmp = n.cmp;
                w.rhs = clone(n.rhs);
                w.body = clone(n.body);
                out.node = std::move(w);
            } else if constexpr (std::is_same_v<T, PrintStmt>) {
                out.node = PrintStmt{clone(n.value)};
            } else if constexpr (std::is_same_v<T, CallStmt>) {
                CallExpr c;
                c.callee = n.call.callee;
                for (const auto& a : n.call.args) c.args.push_back(clone(a));
                out.node = CallStmt{std::move(c)};
            }
        },
        s.node);
    return out;
}

std::vector<Stmt> clone(const std::vector<Stmt>& body) {
    std::vector<Stmt> out;
    out.reserve(body.size());
    for (const auto& s : body) out.push_back(clone(s));
    return out;
}

void offset_var_reads(Expr& e, const std::string& var, long long offset) {
    std::visit(
        [&](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarRef>) {
                if (n.name == var && offset != 0) {
                    Expr lhs;
                    lhs.pos = e.pos;
                    lhs.node = VarRef{var};
                    Expr rhs;
                    rhs.pos = e.pos;
                    rhs.node = IntLit{offset, false};
                    BinaryExpr sum{BinOp::Add, std::make_unique<Expr>(std::move(lhs)),
                                   std::make_unique<Expr>(std::move(rhs))};
                    e.node = std::move(sum);
                }
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                offset_var_reads(*n.index, var, offset);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                offset_var_reads(*n.lhs, var, offset);
                offset_var_reads(*n.rhs, var, offset);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                for (auto& a : n.args) offset_var_reads(a, var, offset);
            }
        },
        e.node);
}

void offset_var_reads(Stmt& s, const std::string& var, long long offset) {
    std::visit(
        [&](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, DeclStmt>) {
                if (n.init) offset_var_reads(*n.init, var, offset);
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                if (n.lhs.index) offset_var_reads(*n.lhs.index, var, offset);
                offset_var_reads(n.value, var, offset);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                offset_var_reads(n.init, var, offset);
                offset_var_reads(n.bound, var, offset);
                for (auto& b : n.body) offset_var_reads(b, var, offset);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                offset_var_reads(n.lhs, var, offset);
                offset_var_reads(n.rhs, var, offset);
                for (auto& b : n.body) offset_var_reads(b, var, offset);
            } else if constexpr (std::is_same_v<T, PrintStmt>) {
                offset_var_reads(n.value, var, offset);
            } else if constexpr (std::is_same_v<T, CallStmt>) {
                for (auto& a : n.call.args) offset_var_reads(a, var, offset);
            }
        },
        s.node);
}

}  // namespace floop

#include <charconv>
#include <sstream>

#include "floop/frontend.hpp"

namespace floop {

namespace {

// Shortest form that round-trips through the lexer as a float literal.
std::string float_literal(double v, bool is_single) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    if (is_single) s += "f";
    return s;
}

int precedence(const Expr& e) {
    if (const auto* b = std::get_if<BinaryExpr>(&e.node))
        return (b->op == BinOp::Mul || b->op == BinOp::Div) ? 2 : 1;
    return 3;  // atoms
}

void print_expr(std::ostream& os, const Expr& e);

void print_child(std::ostream& os, const Expr& child, int parent_prec, bool right_side) {
    int prec = precedence(child);
    bool parens = prec < parent_prec || (right_side && prec == parent_prec);
    if (parens) os << "(";
    print_expr(os, child);
    if (parens) os << ")";
}

void print_expr(std::ostream& os, const Expr& e) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                os << n.value;
                if (n.is_long) os << "L";
            } else if constexpr (std::is_same_v<T, FloatLit>) {
                os << float_literal(n.value, n.is_single);
            } else if constexpr (std::is_same_v<T, VarRef>) {
                os << n.name;
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                os << n.name << "[";
                print_expr(os, *n.index);
                os << "]";
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                int prec = (n.op == BinOp::Mul || n.op == BinOp::Div) ? 2 : 1;
                print_child(os, *n.lhs, prec, false);
                os << " " << token_of(n.op) << " ";
                print_child(os, *n.rhs, prec, true);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                os << n.callee << "(";
                for (size_t i = 0; i < n.args.size(); ++i) {
                    if (i) os << ", ";
                    print_expr(os, n.args[i]);
                }
                os << ")";
            }
        },
        e.node);
}

void print_stmt(std::ostream& os, const Stmt& s, int indent);

void print_body(std::ostream& os, const std::vector<Stmt>& body, int indent) {
    os << "{\n";
    for (const auto& st : body) print_stmt(os, st, indent + 1);
    for (int i = 0; i < indent; ++i) os << "    ";
    os << "}\n";
}

void print_stmt(std::ostream& os, const Stmt& s, int indent) {
    for (int i = 0; i < indent; ++i) os << "    ";
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, DeclStmt>) {
                os << type_keyword(n.type) << " " << n.name;
                if (n.is_array) os << "[" << n.array_length << "]";
                if (n.init) {
                    os << " = ";
                    print_expr(os, *n.init);
                }
                os << ";\n";
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                os << n.lhs.name;
                if (n.lhs.index) {
                    os << "[";
                    print_expr(os, *n.lhs.index);
                    os << "]";
                }
                os << " " << token_of(n.op) << " ";
                print_expr(os, n.value);
                os << ";\n";
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                os << "for (";
                if (n.declares_ivar) os << type_keyword(n.ivar_type) << " ";
                os << n.ivar << " = ";
                print_expr(os, n.init);
                os << "; " << n.ivar << " " << token_of(n.cmp) << " ";
                print_expr(os, n.bound);
                os << "; " << n.ivar;
                if (n.stride == 1) os << "++";
                else os << " += " << n.stride;
                os << ") ";
                print_body(os, n.body, indent);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                os << "while (";
                print_expr(os, n.lhs);
                os << " " << token_of(n.cmp) << " ";
                print_expr(os, n.rhs);
                os << ") ";
                print_body(os, n.body, indent);
            } else if constexpr (std::is_same_v<T, PrintStmt>) {
                os << "print(";
                print_expr(os, n.value);
                os << ");\n";
            } else if constexpr (std::is_same_v<T, CallStmt>) {
                os << n.call.callee << "(";
                for (size_t i = 0; i < n.call.args.size(); ++i) {
                    if (i) os << ", ";
                    print_expr(os, n.call.args[i]);
                }
                os << ");\n";
            }
        },
        s.node);
}

}  // namespace

std::string expr_to_source(const Expr& e) {
    std::ostringstream os;
    print_expr(os, e);
    return os.str();
}

std::string stmt_to_source(const Stmt& s, int indent) {
    std::ostringstream os;
    print_stmt(os, s, indent);
    return os.str();
}

std::string pretty_print(const ProgramModel& model) {
    std::ostringstream os;
    bool first = true;
    for (const auto& f : model.functions) {
        if (f.name == "__globals") {
            for (const auto& s : f.body) print_stmt(os, s, 0);
            os << "\n";
            continue;
        }
        if (!first) os << "\n";
        first = false;
        os << "void " << f.name << "() ";
        print_body(os, f.body, 0);
    }
    return os.str();
}

}  // namespace floop

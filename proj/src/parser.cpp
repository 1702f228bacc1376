#include <set>

#include "floop/errors.hpp"
#include "floop/frontend.hpp"
#include "floop/lexer.hpp"

namespace floop {

namespace {

const std::set<std::string> kRejectedKeywords = {
    "if",     "else",  "do",       "switch",  "case",   "default", "return",
    "break",  "continue", "goto",  "struct",  "union",  "enum",    "typedef",
    "char",   "short", "unsigned", "signed",  "static", "extern",  "const",
    "sizeof", "auto",  "register", "volatile",
};

bool is_type_keyword(const std::string& s) {
    return s == "int" || s == "long" || s == "float" || s == "double";
}

ScalarType type_from_keyword(const std::string& s) {
    if (s == "int") return ScalarType::Int32;
    if (s == "long") return ScalarType::Int64;
    if (s == "float") return ScalarType::Float32;
    return ScalarType::Float64;
}

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    std::vector<FunctionDef> parse_translation_unit() {
        std::vector<FunctionDef> functions;
        std::vector<Stmt> globals;
        while (!at_end()) {
            if (peek().kind == TokKind::Ident && peek().text == "void") {
                functions.push_back(parse_function());
            } else if (peek().kind == TokKind::Ident && is_type_keyword(peek().text)) {
                globals.push_back(parse_decl());
            } else {
                reject_or_fail("function definition or declaration");
            }
        }
        if (!globals.empty()) {
            // Globals execute before everything else, as an implicit prelude.
            FunctionDef prelude;
            prelude.name = "__globals";
            prelude.pos = globals.front().pos;
            prelude.body = std::move(globals);
            functions.insert(functions.begin(), std::move(prelude));
        }
        return functions;
    }

  private:
    std::vector<Token> toks_;
    size_t idx_ = 0;

    const Token& peek(size_t off = 0) const {
        size_t i = idx_ + off;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at_end() const { return peek().kind == TokKind::End; }
    const Token& advance() { return toks_[idx_ < toks_.size() - 1 ? idx_++ : idx_]; }

    bool check(TokKind k, const char* text) const {
        return peek().kind == k && peek().text == text;
    }
    bool accept(TokKind k, const char* text) {
        if (check(k, text)) {
            advance();
            return true;
        }
        return false;
    }
    void expect(TokKind k, const char* text, const char* what) {
        if (!accept(k, text))
            throw SyntaxError(peek().pos, std::string("expected ") + what + " but found '" +
                                              (peek().kind == TokKind::End ? "end of input" : peek().text) + "'",
                              text);
    }

    [[noreturn]] void reject_or_fail(const char* expected) {
        const Token& t = peek();
        if (t.kind == TokKind::Ident && kRejectedKeywords.count(t.text))
            throw UnsupportedConstructError(t.pos, t.text);
        throw SyntaxError(t.pos, std::string("expected ") + expected + " but found '" +
                                     (t.kind == TokKind::End ? "end of input" : t.text) + "'");
    }

    FunctionDef parse_function() {
        FunctionDef fn;
        fn.pos = peek().pos;
        expect(TokKind::Ident, "void", "'void'");
        if (peek().kind != TokKind::Ident) reject_or_fail("function name");
        fn.name = advance().text;
        expect(TokKind::Punct, "(", "'('");
        if (!check(TokKind::Punct, ")"))
            throw UnsupportedConstructError(peek().pos, "function parameters");
        advance();
        expect(TokKind::Punct, "{", "'{'");
        while (!check(TokKind::Punct, "}")) {
            if (at_end()) throw SyntaxError(peek().pos, "unterminated function body");
            parse_stmt_into(fn.body);
        }
        advance();
        return fn;
    }

    // Compound statements are flattened into the enclosing list; the subset
    // has no block scoping.
    void parse_stmt_into(std::vector<Stmt>& out) {
        if (accept(TokKind::Punct, ";")) return;
        if (check(TokKind::Punct, "{")) {
            advance();
            while (!check(TokKind::Punct, "}")) {
                if (at_end()) throw SyntaxError(peek().pos, "unterminated block");
                parse_stmt_into(out);
            }
            advance();
            return;
        }
        out.push_back(parse_stmt());
    }

    Stmt parse_stmt() {
        const Token& t = peek();
        if (t.kind != TokKind::Ident) reject_or_fail("statement");
        if (kRejectedKeywords.count(t.text)) throw UnsupportedConstructError(t.pos, t.text);
        if (t.text == "for") return parse_for();
        if (t.text == "while") return parse_while();
        if (t.text == "print") return parse_print();
        if (is_type_keyword(t.text)) return parse_decl();
        return parse_assign_or_call();
    }

    Stmt parse_decl() {
        Stmt s;
        s.pos = peek().pos;
        DeclStmt d;
        d.type = type_from_keyword(advance().text);
        if (peek().kind != TokKind::Ident || kRejectedKeywords.count(peek().text))
            reject_or_fail("variable name");
        d.name = advance().text;
        if (accept(TokKind::Punct, "[")) {
            d.is_array = true;
            if (peek().kind != TokKind::IntLiteral)
                throw SyntaxError(peek().pos, "array length must be an integer literal");
            d.array_length = advance().int_value;
            if (d.array_length < 1)
                throw SyntaxError(s.pos, "array length must be at least 1");
            expect(TokKind::Punct, "]", "']'");
            if (check(TokKind::Op, "="))
                throw UnsupportedConstructError(peek().pos, "array initializer");
        } else if (accept(TokKind::Op, "=")) {
            d.init = parse_literal();
        }
        expect(TokKind::Punct, ";", "';'");
        s.node = std::move(d);
        return s;
    }

    Expr parse_literal() {
        bool neg = false;
        SourcePos pos = peek().pos;
        if (accept(TokKind::Op, "-")) neg = true;
        Expr e;
        e.pos = pos;
        if (peek().kind == TokKind::IntLiteral) {
            const Token& t = advance();
            e.node = IntLit{neg ? -t.int_value : t.int_value, t.is_long};
        } else if (peek().kind == TokKind::FloatLiteral) {
            const Token& t = advance();
            e.node = FloatLit{neg ? -t.float_value : t.float_value, t.is_single};
        } else {
            throw SyntaxError(peek().pos, "initializer must be a numeric literal");
        }
        return e;
    }

    Stmt parse_assign_or_call() {
        Stmt s;
        s.pos = peek().pos;
        std::string name = advance().text;
        if (check(TokKind::Punct, "(")) {
            CallExpr call = parse_call_args(name);
            expect(TokKind::Punct, ";", "';'");
            s.node = CallStmt{std::move(call)};
            return s;
        }
        AssignStmt a;
        a.lhs.name = name;
        if (accept(TokKind::Punct, "[")) {
            a.lhs.index = std::make_unique<Expr>(parse_expr());
            expect(TokKind::Punct, "]", "']'");
        }
        if (accept(TokKind::Op, "=")) a.op = AssignOp::Set;
        else if (accept(TokKind::Op, "+=")) a.op = AssignOp::AddAssign;
        else if (accept(TokKind::Op, "-=")) a.op = AssignOp::SubAssign;
        else if (accept(TokKind::Op, "*=")) a.op = AssignOp::MulAssign;
        else reject_or_fail("assignment operator");
        a.value = parse_expr();
        expect(TokKind::Punct, ";", "';'");
        s.node = std::move(a);
        return s;
    }

    Stmt parse_print() {
        Stmt s;
        s.pos = peek().pos;
        advance();  // print
        expect(TokKind::Punct, "(", "'('");
        PrintStmt p{parse_expr()};
        expect(TokKind::Punct, ")", "')'");
        expect(TokKind::Punct, ";", "';'");
        s.node = std::move(p);
        return s;
    }

    Stmt parse_while() {
        Stmt s;
        s.pos = peek().pos;
        advance();  // while
        expect(TokKind::Punct, "(", "'('");
        WhileStmt w;
        w.lhs = parse_expr();
        w.cmp = parse_cmp_op();
        w.rhs = parse_expr();
        expect(TokKind::Punct, ")", "')'");
        parse_stmt_into(w.body);
        s.node = std::move(w);
        return s;
    }

    CmpOp parse_cmp_op() {
        if (accept(TokKind::Op, "<=")) return CmpOp::Le;
        if (accept(TokKind::Op, "<")) return CmpOp::Lt;
        if (accept(TokKind::Op, ">=")) return CmpOp::Ge;
        if (accept(TokKind::Op, ">")) return CmpOp::Gt;
        if (accept(TokKind::Op, "==")) return CmpOp::Eq;
        if (accept(TokKind::Op, "!=")) return CmpOp::Ne;
        reject_or_fail("comparison operator");
    }

    Stmt parse_for() {
        Stmt s;
        s.pos = peek().pos;
        advance();  // for
        expect(TokKind::Punct, "(", "'('");

        ForStmt f;
        if (peek().kind == TokKind::Ident && is_type_keyword(peek().text)) {
            f.declares_ivar = true;
            f.ivar_type = type_from_keyword(advance().text);
            if (!is_integer_type(f.ivar_type))
                throw UnsupportedConstructError(s.pos, "non-integer induction variable");
        }
        if (peek().kind != TokKind::Ident || kRejectedKeywords.count(peek().text))
            reject_or_fail("induction variable");
        f.ivar = advance().text;
        expect(TokKind::Op, "=", "'='");
        f.init = parse_expr();
        expect(TokKind::Punct, ";", "';'");

        if (peek().kind != TokKind::Ident || peek().text != f.ivar)
            throw SyntaxError(peek().pos, "loop condition must test the induction variable");
        advance();
        if (accept(TokKind::Op, "<=")) f.cmp = CmpOp::Le;
        else if (accept(TokKind::Op, "<")) f.cmp = CmpOp::Lt;
        else throw UnsupportedConstructError(peek().pos, "loop bound comparison other than < or <=");
        f.bound = parse_expr();
        expect(TokKind::Punct, ";", "';'");

        // step: i++ | i += k | i = i + k
        if (peek().kind != TokKind::Ident || peek().text != f.ivar)
            throw SyntaxError(peek().pos, "loop step must update the induction variable");
        advance();
        if (accept(TokKind::Op, "++")) {
            f.stride = 1;
        } else if (accept(TokKind::Op, "+=")) {
            f.stride = parse_stride_literal();
        } else if (accept(TokKind::Op, "=")) {
            if (peek().kind != TokKind::Ident || peek().text != f.ivar)
                throw SyntaxError(peek().pos, "loop step must have the form i = i + constant");
            advance();
            expect(TokKind::Op, "+", "'+'");
            f.stride = parse_stride_literal();
        } else {
            throw UnsupportedConstructError(peek().pos, "loop step form");
        }
        expect(TokKind::Punct, ")", "')'");
        parse_stmt_into(f.body);
        s.node = std::move(f);
        return s;
    }

    long long parse_stride_literal() {
        if (peek().kind != TokKind::IntLiteral)
            throw UnsupportedConstructError(peek().pos, "non-constant loop stride");
        long long v = advance().int_value;
        if (v < 1) throw UnsupportedConstructError(peek().pos, "non-positive loop stride");
        return v;
    }

    CallExpr parse_call_args(std::string callee) {
        CallExpr call;
        call.callee = std::move(callee);
        expect(TokKind::Punct, "(", "'('");
        if (!check(TokKind::Punct, ")")) {
            call.args.push_back(parse_expr());
            while (accept(TokKind::Punct, ",")) call.args.push_back(parse_expr());
        }
        expect(TokKind::Punct, ")", "')'");
        return call;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        while (check(TokKind::Op, "+") || check(TokKind::Op, "-")) {
            BinOp op = advance().text == "+" ? BinOp::Add : BinOp::Sub;
            Expr rhs = parse_term();
            Expr parent;
            parent.pos = lhs.pos;
            parent.node = BinaryExpr{op, std::make_unique<Expr>(std::move(lhs)),
                                     std::make_unique<Expr>(std::move(rhs))};
            lhs = std::move(parent);
        }
        return lhs;
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        while (check(TokKind::Op, "*") || check(TokKind::Op, "/")) {
            BinOp op = advance().text == "*" ? BinOp::Mul : BinOp::Div;
            Expr rhs = parse_factor();
            Expr parent;
            parent.pos = lhs.pos;
            parent.node = BinaryExpr{op, std::make_unique<Expr>(std::move(lhs)),
                                     std::make_unique<Expr>(std::move(rhs))};
            lhs = std::move(parent);
        }
        return lhs;
    }

    Expr parse_factor() {
        const Token& t = peek();
        Expr e;
        e.pos = t.pos;
        switch (t.kind) {
            case TokKind::IntLiteral:
                advance();
                e.node = IntLit{t.int_value, t.is_long};
                return e;
            case TokKind::FloatLiteral:
                advance();
                e.node = FloatLit{t.float_value, t.is_single};
                return e;
            case TokKind::Punct:
                if (t.text == "(") {
                    advance();
                    Expr inner = parse_expr();
                    expect(TokKind::Punct, ")", "')'");
                    return inner;
                }
                break;
            case TokKind::Op:
                if (t.text == "-") {
                    // unary minus folds into numeric literals only
                    if (peek(1).kind == TokKind::IntLiteral || peek(1).kind == TokKind::FloatLiteral)
                        return parse_literal();
                    throw UnsupportedConstructError(t.pos, "unary minus on a non-literal");
                }
                break;
            case TokKind::Ident: {
                if (kRejectedKeywords.count(t.text)) throw UnsupportedConstructError(t.pos, t.text);
                std::string name = advance().text;
                if (check(TokKind::Punct, "(")) {
                    e.node = parse_call_args(std::move(name));
                    return e;
                }
                if (accept(TokKind::Punct, "[")) {
                    ArrayRef a{std::move(name), std::make_unique<Expr>(parse_expr())};
                    expect(TokKind::Punct, "]", "']'");
                    e.node = std::move(a);
                    return e;
                }
                e.node = VarRef{std::move(name)};
                return e;
            }
            default:
                break;
        }
        reject_or_fail("expression");
    }
};

}  // namespace

ProgramModel parse_program(std::string_view source) {
    Parser parser(tokenize(source));
    return build_model(parser.parse_translation_unit());
}

}  // namespace floop

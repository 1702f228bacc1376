#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace floop {

// ---------------------------------------------------------------------------
// Scalar types of the C subset.
// ---------------------------------------------------------------------------
enum class ScalarType { Int32, Int64, Float32, Float64 };

const char* type_name(ScalarType t);     // "int32", "int64", "float32", "float64"
const char* type_keyword(ScalarType t);  // "int", "long", "float", "double"
int type_byte_size(ScalarType t);
bool is_integer_type(ScalarType t);

// Usual arithmetic conversion: f64 > f32 > i64 > i32.
ScalarType promote(ScalarType a, ScalarType b);

struct SourcePos {
    int line = 1;
    int col = 1;
};

enum class BinOp { Add, Sub, Mul, Div };
enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };
enum class AssignOp { Set, AddAssign, SubAssign, MulAssign };

const char* token_of(BinOp op);
const char* token_of(CmpOp op);
const char* token_of(AssignOp op);

// ---------------------------------------------------------------------------
// Expressions. Recursive nodes go through ExprPtr; Expr itself is move-only.
// ---------------------------------------------------------------------------
struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct IntLit {
    long long value = 0;
    bool is_long = false;  // int64 literal
};

struct FloatLit {
    double value = 0.0;
    bool is_single = false;  // 'f' suffix
};

struct VarRef {
    std::string name;
};

struct ArrayRef {
    std::string name;
    ExprPtr index;
};

struct BinaryExpr {
    BinOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct CallExpr {
    std::string callee;
    std::vector<Expr> args;
};

struct Expr {
    SourcePos pos;
    std::variant<IntLit, FloatLit, VarRef, ArrayRef, BinaryExpr, CallExpr> node;
};

Expr clone(const Expr& e);
ExprPtr clone_ptr(const Expr& e);

// ---------------------------------------------------------------------------
// Statements.
// ---------------------------------------------------------------------------
struct Stmt;

struct LValue {
    std::string name;
    ExprPtr index;  // null for scalars

    bool is_array_element() const { return index != nullptr; }
};

struct DeclStmt {
    ScalarType type;
    std::string name;
    bool is_array = false;
    long long array_length = 1;
    std::optional<Expr> init;  // literal initializer, scalars only
};

struct AssignStmt {
    LValue lhs;
    AssignOp op;
    Expr value;
};

struct ForStmt {
    bool declares_ivar = false;
    ScalarType ivar_type = ScalarType::Int32;
    std::string ivar;
    Expr init;
    CmpOp cmp;  // Lt or Le
    Expr bound;
    long long stride = 1;
    std::vector<Stmt> body;
    int loop_id = 0;  // assigned when the model is built
};

struct WhileStmt {
    Expr lhs;
    CmpOp cmp;
    Expr rhs;
    std::vector<Stmt> body;
};

struct PrintStmt {
    Expr value;
};

struct CallStmt {
    CallExpr call;
};

struct Stmt {
    SourcePos pos;
    std::variant<DeclStmt, AssignStmt, ForStmt, WhileStmt, PrintStmt, CallStmt> node;
};

Stmt clone(const Stmt& s);
std::vector<Stmt> clone(const std::vector<Stmt>& body);

struct FunctionDef {
    std::string name;
    std::vector<Stmt> body;
    SourcePos pos;
};

// Built-in math functions callable inside expressions.
bool is_math_builtin(const std::string& name);

// Replaces every read of `var` with (var + offset). Used by loop unrolling.
void offset_var_reads(Stmt& s, const std::string& var, long long offset);
void offset_var_reads(Expr& e, const std::string& var, long long offset);

}  // namespace floop

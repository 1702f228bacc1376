#include "floop/errors.hpp"
#include "floop/frontend.hpp"
#include "floop/json_io.hpp"

namespace floop {

namespace {

const char* cmp_from_enum(CmpOp c) { return token_of(c); }

CmpOp cmp_from_string(const std::string& s) {
    if (s == "<") return CmpOp::Lt;
    if (s == "<=") return CmpOp::Le;
    if (s == ">") return CmpOp::Gt;
    if (s == ">=") return CmpOp::Ge;
    if (s == "==") return CmpOp::Eq;
    if (s == "!=") return CmpOp::Ne;
    throw ConfigError("bad comparison operator '" + s + "' in model document");
}

BinOp bin_from_string(const std::string& s) {
    if (s == "+") return BinOp::Add;
    if (s == "-") return BinOp::Sub;
    if (s == "*") return BinOp::Mul;
    if (s == "/") return BinOp::Div;
    throw ConfigError("bad binary operator '" + s + "' in model document");
}

AssignOp assign_from_string(const std::string& s) {
    if (s == "=") return AssignOp::Set;
    if (s == "+=") return AssignOp::AddAssign;
    if (s == "-=") return AssignOp::SubAssign;
    if (s == "*=") return AssignOp::MulAssign;
    throw ConfigError("bad assignment operator '" + s + "' in model document");
}

}  // namespace

ScalarType scalar_type_from_name(const std::string& name) {
    if (name == "int32") return ScalarType::Int32;
    if (name == "int64") return ScalarType::Int64;
    if (name == "float32") return ScalarType::Float32;
    if (name == "float64") return ScalarType::Float64;
    throw ConfigError("bad scalar type '" + name + "' in model document");
}

ojson expr_to_ojson(const Expr& e) {
    ojson j;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                j["expr"] = "int";
                j["value"] = n.value;
                if (n.is_long) j["long"] = true;
            } else if constexpr (std::is_same_v<T, FloatLit>) {
                j["expr"] = "float";
                j["value"] = n.value;
                if (n.is_single) j["single"] = true;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                j["expr"] = "var";
                j["name"] = n.name;
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                j["expr"] = "index";
                j["name"] = n.name;
                j["index"] = expr_to_ojson(*n.index);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                j["expr"] = "bin";
                j["op"] = token_of(n.op);
                j["lhs"] = expr_to_ojson(*n.lhs);
                j["rhs"] = expr_to_ojson(*n.rhs);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                j["expr"] = "call";
                j["callee"] = n.callee;
                ojson args = ojson::array();
                for (const auto& a : n.args) args.push_back(expr_to_ojson(a));
                j["args"] = std::move(args);
            }
        },
        e.node);
    return j;
}

Expr expr_from_ojson(const ojson& j) {
    Expr e;
    const std::string kind = j.at("expr").get<std::string>();
    if (kind == "int") {
        e.node = IntLit{j.at("value").get<long long>(), j.value("long", false)};
    } else if (kind == "float") {
        e.node = FloatLit{j.at("value").get<double>(), j.value("single", false)};
    } else if (kind == "var") {
        e.node = VarRef{j.at("name").get<std::string>()};
    } else if (kind == "index") {
        e.node = ArrayRef{j.at("name").get<std::string>(),
                          std::make_unique<Expr>(expr_from_ojson(j.at("index")))};
    } else if (kind == "bin") {
        e.node = BinaryExpr{bin_from_string(j.at("op").get<std::string>()),
                            std::make_unique<Expr>(expr_from_ojson(j.at("lhs"))),
                            std::make_unique<Expr>(expr_from_ojson(j.at("rhs")))};
    } else if (kind == "call") {
        CallExpr c;
        c.callee = j.at("callee").get<std::string>();
        for (const auto& a : j.at("args")) c.args.push_back(expr_from_ojson(a));
        e.node = std::move(c);
    } else {
        throw ConfigError("bad expression kind '" + kind + "' in model document");
    }
    return e;
}

ojson stmt_to_ojson(const Stmt& s) {
    ojson j;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, DeclStmt>) {
                j["stmt"] = "decl";
                j["type"] = type_name(n.type);
                j["name"] = n.name;
                if (n.is_array) j["array_length"] = n.array_length;
                if (n.init) j["init"] = expr_to_ojson(*n.init);
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                j["stmt"] = "assign";
                j["name"] = n.lhs.name;
                if (n.lhs.index) j["index"] = expr_to_ojson(*n.lhs.index);
                j["op"] = token_of(n.op);
                j["value"] = expr_to_ojson(n.value);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                j["stmt"] = "for";
                j["ivar"] = n.ivar;
                j["declares_ivar"] = n.declares_ivar;
                j["ivar_type"] = type_name(n.ivar_type);
                j["init"] = expr_to_ojson(n.init);
                j["cmp"] = cmp_from_enum(n.cmp);
                j["bound"] = expr_to_ojson(n.bound);
                j["stride"] = n.stride;
                ojson body = ojson::array();
                for (const auto& b : n.body) body.push_back(stmt_to_ojson(b));
                j["body"] = std::move(body);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                j["stmt"] = "while";
                j["lhs"] = expr_to_ojson(n.lhs);
                j["cmp"] = cmp_from_enum(n.cmp);
                j["rhs"] = expr_to_ojson(n.rhs);
                ojson body = ojson::array();
                for (const auto& b : n.body) body.push_back(stmt_to_ojson(b));
                j["body"] = std::move(body);
            } else if constexpr (std::is_same_v<T, PrintStmt>) {
                j["stmt"] = "print";
                j["value"] = expr_to_ojson(n.value);
            } else if constexpr (std::is_same_v<T, CallStmt>) {
                j["stmt"] = "call";
                j["callee"] = n.call.callee;
                ojson args = ojson::array();
                for (const auto& a : n.call.args) args.push_back(expr_to_ojson(a));
                j["args"] = std::move(args);
            }
        },
        s.node);
    return j;
}

Stmt stmt_from_ojson(const ojson& j) {
    Stmt s;
    const std::string kind = j.at("stmt").get<std::string>();
    if (kind == "decl") {
        DeclStmt d;
        d.type = scalar_type_from_name(j.at("type").get<std::string>());
        d.name = j.at("name").get<std::string>();
        if (j.contains("array_length")) {
            d.is_array = true;
            d.array_length = j.at("array_length").get<long long>();
        }
        if (j.contains("init")) d.init = expr_from_ojson(j.at("init"));
        s.node = std::move(d);
    } else if (kind == "assign") {
        AssignStmt a;
        a.lhs.name = j.at("name").get<std::string>();
        if (j.contains("index"))
            a.lhs.index = std::make_unique<Expr>(expr_from_ojson(j.at("index")));
        a.op = assign_from_string(j.at("op").get<std::string>());
        a.value = expr_from_ojson(j.at("value"));
        s.node = std::move(a);
    } else if (kind == "for") {
        ForStmt f;
        f.ivar = j.at("ivar").get<std::string>();
        f.declares_ivar = j.value("declares_ivar", false);
        f.ivar_type = scalar_type_from_name(j.value("ivar_type", std::string("int32")));
        f.init = expr_from_ojson(j.at("init"));
        f.cmp = cmp_from_string(j.at("cmp").get<std::string>());
        f.bound = expr_from_ojson(j.at("bound"));
        f.stride = j.at("stride").get<long long>();
        for (const auto& b : j.at("body")) f.body.push_back(stmt_from_ojson(b));
        s.node = std::move(f);
    } else if (kind == "while") {
        WhileStmt w;
        w.lhs = expr_from_ojson(j.at("lhs"));
        w.cmp = cmp_from_string(j.at("cmp").get<std::string>());
        w.rhs = expr_from_ojson(j.at("rhs"));
        for (const auto& b : j.at("body")) w.body.push_back(stmt_from_ojson(b));
        s.node = std::move(w);
    } else if (kind == "print") {
        s.node = PrintStmt{expr_from_ojson(j.at("value"))};
    } else if (kind == "call") {
        CallExpr c;
        c.callee = j.at("callee").get<std::string>();
        for (const auto& a : j.at("args")) c.args.push_back(expr_from_ojson(a));
        s.node = CallStmt{std::move(c)};
    } else {
        throw ConfigError("bad statement kind '" + kind + "' in model document");
    }
    return s;
}

ojson model_to_ojson(const ProgramModel& model) {
    ojson j;
    j["format"] = "floop-model";
    j["version"] = 1;

    ojson functions = ojson::array();
    for (const auto& f : model.functions) {
        ojson fn;
        fn["name"] = f.name;
        ojson body = ojson::array();
        for (const auto& s : f.body) body.push_back(stmt_to_ojson(s));
        fn["body"] = std::move(body);
        functions.push_back(std::move(fn));
    }
    j["functions"] = std::move(functions);

    ojson loops = ojson::array();
    for (const auto& l : model.loops) {
        ojson lo;
        lo["id"] = l.id;
        lo["parent_id"] = l.parent_id ? ojson(*l.parent_id) : ojson(nullptr);
        lo["function"] = l.function_name;
        lo["trip_count"] = l.trip_count ? ojson(*l.trip_count) : ojson(nullptr);
        ojson prof;
        prof["arith_ops"] = l.body_profile.arith_ops;
        prof["mem_accesses"] = l.body_profile.mem_accesses;
        prof["calls"] = l.body_profile.calls;
        prof["has_io"] = l.body_profile.has_io;
        lo["profile"] = std::move(prof);
        ojson accessed = ojson::array();
        for (const auto& a : l.accessed_vars) {
            ojson acc;
            acc["var"] = a.var;
            acc["mode"] = access_mode_name(a.mode);
            accessed.push_back(std::move(acc));
        }
        lo["accessed_vars"] = std::move(accessed);
        ojson verdict;
        verdict["offloadable"] = l.verdict.offloadable;
        ojson reasons = ojson::array();
        for (auto d : l.verdict.reasons) reasons.push_back(disqualifier_code(d));
        verdict["reasons"] = std::move(reasons);
        lo["verdict"] = std::move(verdict);
        loops.push_back(std::move(lo));
    }
    j["loops"] = std::move(loops);

    ojson vars = ojson::array();
    for (const auto& [name, v] : model.variables) {
        ojson vj;
        vj["name"] = name;
        vj["kind"] = v.is_array ? "array" : "scalar";
        vj["element_type"] = type_name(v.element_type);
        if (v.is_array) vj["array_length"] = v.array_length;
        vj["byte_size"] = v.byte_size;
        vj["initialized"] = v.has_initializer;
        vars.push_back(std::move(vj));
    }
    j["variables"] = std::move(vars);
    return j;
}

std::string model_to_json(const ProgramModel& model) { return model_to_ojson(model).dump(2); }

ProgramModel model_from_json(const std::string& text) {
    ojson j = ojson::parse(text, nullptr, true, true);
    if (j.value("format", std::string()) != "floop-model")
        throw ConfigError("not a floop-model document");
    std::vector<FunctionDef> functions;
    for (const auto& fj : j.at("functions")) {
        FunctionDef f;
        f.name = fj.at("name").get<std::string>();
        for (const auto& sj : fj.at("body")) f.body.push_back(stmt_from_ojson(sj));
        functions.push_back(std::move(f));
    }
    // loop/variable tables are derived, not trusted from the document
    return build_model(std::move(functions));
}

}  // namespace floop

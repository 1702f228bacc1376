#pragma once

#include <json.hpp>

#include "floop/model.hpp"

namespace floop {

// ordered_json keeps insertion order, which gives every serialized document a
// stable key order.
using ojson = nlohmann::ordered_json;

ojson expr_to_ojson(const Expr& e);
Expr expr_from_ojson(const ojson& j);

ojson stmt_to_ojson(const Stmt& s);
Stmt stmt_from_ojson(const ojson& j);

ojson model_to_ojson(const ProgramModel& model);

ScalarType scalar_type_from_name(const std::string& name);

}  // namespace floop

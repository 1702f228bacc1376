#pragma once

#include <string>
#include <string_view>

#include "floop/model.hpp"

namespace floop {

// Parses C-subset source text and derives the loop candidate and variable
// tables. Throws SyntaxError / UnsupportedConstructError.
ProgramModel parse_program(std::string_view source);

// Rebuilds the model tables for an already-parsed translation unit. Used by
// parse_program and by the external-parser adapter (model_from_json).
ProgramModel build_model(std::vector<FunctionDef> functions);

// Re-evaluates offloadability for one loop of the model. parse_program stores
// the same verdict on every candidate.
OffloadabilityVerdict check_offloadable(const LoopCandidate& loop, const ProgramModel& model);

// AST back to C-subset source text. Reparsing the result yields a
// structurally identical model.
std::string pretty_print(const ProgramModel& model);

// Stable structured-text serialization of the model (external-parser adapter
// wire format and snapshot format).
std::string model_to_json(const ProgramModel& model);
ProgramModel model_from_json(const std::string& text);

std::string expr_to_source(const Expr& e);
std::string stmt_to_source(const Stmt& s, int indent);

}  // namespace floop

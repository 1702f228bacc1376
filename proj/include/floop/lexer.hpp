#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "floop/ast.hpp"

namespace floop {

enum class TokKind {
    Ident,
    IntLiteral,
    FloatLiteral,
    Punct,  // one of ( ) [ ] { } ; ,
    Op,     // + - * / = += -= *= ++ < <= > >= == !=
    End,
};

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    long long int_value = 0;
    double float_value = 0.0;
    bool is_long = false;
    bool is_single = false;
    SourcePos pos;
};

// Tokenizes the whole input; throws SyntaxError on malformed literals or
// stray characters. Line/block comments are skipped.
std::vector<Token> tokenize(std::string_view source);

}  // namespace floop

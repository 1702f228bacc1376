#include "floop/lexer.hpp"

#include <cctype>
#include <cstdlib>

#include "floop/errors.hpp"

namespace floop {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto peek = [&](size_t off = 0) -> char { return i + off < src.size() ? src[i + off] : '\0'; };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && peek(1) == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (c == '/' && peek(1) == '*') {
            SourcePos open{line, col};
            advance(2);
            while (i < src.size() && !(src[i] == '*' && peek(1) == '/')) advance(1);
            if (i >= src.size()) throw SyntaxError(open, "unterminated block comment");
            advance(2);
            continue;
        }

        Token t;
        t.pos = {line, col};

        if (ident_start(c)) {
            size_t start = i;
            while (i < src.size() && ident_char(src[i])) advance(1);
            t.kind = TokKind::Ident;
            t.text = std::string(src.substr(start, i - start));
            out.push_back(std::move(t));
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            size_t start = i;
            bool is_float = false;
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance(1);
            if (peek() == '.') {
                is_float = true;
                advance(1);
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance(1);
            }
            if (peek() == 'e' || peek() == 'E') {
                is_float = true;
                advance(1);
                if (peek() == '+' || peek() == '-') advance(1);
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    throw SyntaxError(t.pos, "malformed exponent in numeric literal");
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance(1);
            }
            std::string text(src.substr(start, i - start));
            if (is_float) {
                t.kind = TokKind::FloatLiteral;
                t.float_value = std::strtod(text.c_str(), nullptr);
                if (peek() == 'f' || peek() == 'F') {
                    t.is_single = true;
                    advance(1);
                }
            } else {
                t.kind = TokKind::IntLiteral;
                t.int_value = std::strtoll(text.c_str(), nullptr, 10);
                if (peek() == 'L' || peek() == 'l') {
                    t.is_long = true;
                    advance(1);
                }
                if (t.int_value > 2147483647LL) t.is_long = true;
            }
            if (ident_start(peek()))
                throw SyntaxError({line, col}, "identifier character directly after number");
            t.text = std::move(text);
            out.push_back(std::move(t));
            continue;
        }

        switch (c) {
            case '(': case ')': case '[': case ']': case '{': case '}': case ';': case ',':
                t.kind = TokKind::Punct;
                t.text = std::string(1, c);
                advance(1);
                out.push_back(std::move(t));
                continue;
            case '+':
                t.kind = TokKind::Op;
                if (peek(1) == '=') { t.text = "+="; advance(2); }
                else if (peek(1) == '+') { t.text = "++"; advance(2); }
                else { t.text = "+"; advance(1); }
                out.push_back(std::move(t));
                continue;
            case '-':
                t.kind = TokKind::Op;
                if (peek(1) == '=') { t.text = "-="; advance(2); }
                else { t.text = "-"; advance(1); }
                out.push_back(std::move(t));
                continue;
            case '*':
                t.kind = TokKind::Op;
                if (peek(1) == '=') { t.text = "*="; advance(2); }
                else { t.text = "*"; advance(1); }
                out.push_back(std::move(t));
                continue;
            case '/':
                t.kind = TokKind::Op;
                t.text = "/";
                advance(1);
                out.push_back(std::move(t));
                continue;
            case '<':
                t.kind = TokKind::Op;
                if (peek(1) == '=') { t.text = "<="; advance(2); }
                else { t.text = "<"; advance(1); }
                out.push_back(std::move(t));
                continue;
            case '>':
                t.kind = TokKind::Op;
                if (peek(1) == '=') { t.text = ">="; advance(2); }
                else { t.text = ">"; advance(1); }
                out.push_back(std::move(t));
                continue;
            case '=':
                t.kind = TokKind::Op;
                if (peek(1) == '=') { t.text = "=="; advance(2); }
                else { t.text = "="; advance(1); }
                out.push_back(std::move(t));
                continue;
            case '!':
                if (peek(1) == '=') {
                    t.kind = TokKind::Op;
                    t.text = "!=";
                    advance(2);
                    out.push_back(std::move(t));
                    continue;
                }
                throw SyntaxError(t.pos, "stray '!'");
            default:
                throw SyntaxError(t.pos, std::string("stray character '") + c + "'");
        }
    }

    Token end;
    end.kind = TokKind::End;
    end.pos = {line, col};
    out.push_back(std::move(end));
    return out;
}

}  // namespace floop

#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "ucc/errors.hpp"
#include "ucc/frontend/ast.hpp"

namespace ucc::frontend {

struct Token {
    enum class Kind { name, keyword, number, code, op, newline, indent, dedent, end };
    Kind kind;
    std::string text;
    ast::Span span;
};

inline bool is_keyword(const std::string& w) {
    return w == "if" || w == "else" || w == "for" || w == "in" || w == "def" || w == "return";
}

/// Splits MiniScript text into tokens. Indentation becomes indent/dedent
/// tokens; newlines inside brackets are ignored. With `metavars` set,
/// identifiers may start with '?' (rewrite patterns).
inline std::vector<Token> tokenize(const std::string& src, bool metavars = false) {
    std::vector<Token> out;
    std::vector<std::string> indents{""};
    int depth = 0;
    int line = 1;
    std::size_t i = 0;
    bool at_line_start = true;

    auto fail = [&](const std::string& msg, int col) { throw LexError(located(msg, line, col), line, col); };
    std::size_t line_start = 0;
    auto col_of = [&](std::size_t p) { return static_cast<int>(p - line_start) + 1; };

    while (i <= src.size()) {
        if (at_line_start && depth == 0) {
            std::size_t j = i;
            while (j < src.size() && (src[j] == ' ' || src[j] == '\t')) ++j;
            // blank and comment-only lines do not affect indentation
            if (j >= src.size() || src[j] == '\n' || src[j] == '#' || src[j] == '\r') {
                while (j < src.size() && src[j] != '\n') ++j;
                if (j >= src.size()) {
                    i = src.size();
                    break;
                }
                i = j + 1;
                ++line;
                line_start = i;
                continue;
            }
            const std::string ind = src.substr(i, j - i);
            if (ind.find(' ') != std::string::npos && ind.find('\t') != std::string::npos)
                fail("tabs and spaces mixed in indentation", 1);
            if (ind != indents.back()) {
                if (ind.size() > indents.back().size() && ind.compare(0, indents.back().size(), indents.back()) == 0) {
                    indents.push_back(ind);
                    out.push_back({Token::Kind::indent, "", {line, 1}});
                } else {
                    while (indents.size() > 1 && indents.back().size() > ind.size()) {
                        indents.pop_back();
                        out.push_back({Token::Kind::dedent, "", {line, 1}});
                    }
                    if (indents.back() != ind) fail("inconsistent indentation", col_of(j));
                }
            }
            i = j;
            at_line_start = false;
        }
        if (i >= src.size()) break;
        const char c = src[i];
        const int col = col_of(i);
        if (c == '\n') {
            if (depth == 0 && !out.empty() && out.back().kind != Token::Kind::newline) out.push_back({Token::Kind::newline, "", {line, col}});
            ++i;
            ++line;
            line_start = i;
            at_line_start = true;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                    j = k;
                }
            }
            if (j < src.size() && (std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                fail("malformed number", col);
            out.push_back({Token::Kind::number, src.substr(i, j - i), {line, col}});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || (metavars && c == '?')) {
            std::size_t j = i + 1;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            const std::string w = src.substr(i, j - i);
            if (w == "?") fail("metavariable needs a name", col);
            out.push_back({is_keyword(w) ? Token::Kind::keyword : Token::Kind::name, w, {line, col}});
            i = j;
            continue;
        }
        if (c == '\'') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '\'' && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != '\'') fail("unterminated quote", col);
            out.push_back({Token::Kind::code, src.substr(i + 1, j - i - 1), {line, col}});
            i = j + 1;
            continue;
        }
        static const char* const ops[] = {"===", "**", "<=", ">=", "==", "+", "-", "*", "/", "<", ">", "=",
                                          "(",   ")",  "[",  "]",  ",",  ":"};
        bool matched = false;
        for (const char* op : ops) {
            const std::string s(op);
            if (src.compare(i, s.size(), s) == 0) {
                if (s == "(" || s == "[") ++depth;
                if ((s == ")" || s == "]") && depth > 0) --depth;
                out.push_back({Token::Kind::op, s, {line, col}});
                i += s.size();
                matched = true;
                break;
            }
        }
        if (!matched) fail(std::string("unexpected character '") + c + "'", col);
    }
    if (!out.empty() && out.back().kind != Token::Kind::newline) out.push_back({Token::Kind::newline, "", {line, 1}});
    while (indents.size() > 1) {
        indents.pop_back();
        out.push_back({Token::Kind::dedent, "", {line, 1}});
    }
    out.push_back({Token::Kind::end, "", {line, 1}});
    return out;
}

} // namespace ucc::frontend

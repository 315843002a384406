#pragma once

#include <string>

#include "ucc/frontend/ast.hpp"

namespace ucc::frontend {

namespace detail {

enum Prec { p_cmp = 1, p_add, p_mul, p_unary, p_pow, p_atom };

inline int prec(const ast::Expr& e) {
    using K = ast::Expr::Kind;
    switch (e.kind) {
    case K::compare: return p_cmp;
    case K::binop:
        if (e.text == "+" || e.text == "-") return p_add;
        if (e.text == "*" || e.text == "/") return p_mul;
        return p_pow;
    case K::neg: return p_unary;
    default: return p_atom;
    }
}

inline std::string emit_expr(const ast::Expr& e);

inline std::string wrap(const ast::Expr& e, bool parens) { return parens ? "(" + emit_expr(e) + ")" : emit_expr(e); }

inline std::string emit_list(const std::vector<ast::Expr>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + emit_expr(xs[i]);
    return out;
}

inline std::string emit_expr(const ast::Expr& e) {
    using K = ast::Expr::Kind;
    switch (e.kind) {
    case K::num:
    case K::name: return e.text;
    case K::depcode: return "'" + e.text + "'";
    case K::call: return e.text + "(" + emit_list(e.args) + ")";
    case K::list: return "[" + emit_list(e.args) + "]";
    case K::neg: return "-" + wrap(e.args[0], prec(e.args[0]) < p_unary);
    case K::compare: return wrap(e.args[0], prec(e.args[0]) <= p_cmp) + " " + e.text + " " + wrap(e.args[1], prec(e.args[1]) <= p_cmp);
    case K::binop: {
        const int p = prec(e);
        if (p == p_pow) return wrap(e.args[0], prec(e.args[0]) <= p_pow) + "**" + wrap(e.args[1], prec(e.args[1]) < p_unary);
        const std::string sep = p == p_add ? " " + e.text + " " : e.text;
        return wrap(e.args[0], prec(e.args[0]) < p) + sep + wrap(e.args[1], prec(e.args[1]) <= p);
    }
    }
    return "";
}

inline void emit_block(const std::vector<ast::Stmt>& body, int depth, std::string& out);

inline void emit_stmt(const ast::Stmt& s, int depth, std::string& out) {
    using K = ast::Stmt::Kind;
    const std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
    switch (s.kind) {
    case K::assign: out += pad + s.name + " = " + emit_expr(s.exprs[0]) + "\n"; break;
    case K::expr: out += pad + emit_expr(s.exprs[0]) + "\n"; break;
    case K::return_: out += pad + "return " + emit_expr(s.exprs[0]) + "\n"; break;
    case K::if_:
        out += pad + "if " + emit_expr(s.exprs[0]) + ":\n";
        emit_block(s.body, depth + 1, out);
        if (!s.orelse.empty()) {
            out += pad + "else:\n";
            emit_block(s.orelse, depth + 1, out);
        }
        break;
    case K::for_range:
        out += pad + "for " + s.name + " in range(" + emit_list(s.exprs) + "):\n";
        emit_block(s.body, depth + 1, out);
        break;
    case K::for_each:
        out += pad + "for " + s.name + " in " + emit_expr(s.exprs[0]) + ":\n";
        emit_block(s.body, depth + 1, out);
        break;
    case K::def: {
        out += pad + "def " + s.name + "(";
        for (std::size_t i = 0; i < s.params.size(); ++i) out += (i ? ", " : "") + s.params[i];
        out += "):\n";
        emit_block(s.body, depth + 1, out);
        break;
    }
    }
}

inline void emit_block(const std::vector<ast::Stmt>& body, int depth, std::string& out) {
    for (const auto& s : body) emit_stmt(s, depth, out);
}

} // namespace detail

inline std::string emit_expression(const ast::Expr& e) { return detail::emit_expr(e); }

/// Deterministic MiniScript text; parsing it gives back the same tree.
inline std::string emit_source(const ast::Program& p) {
    std::string out;
    detail::emit_block(p, 0, out);
    return out;
}

} // namespace ucc::frontend

#pragma once

#include <string>
#include <vector>

#include "ucc/frontend/ast.hpp"

namespace ucc::frontend {

struct AssignmentSite {
    enum class Kind { literal, copy, expression, call, element };

    std::string name;  // dotted inside functions: calculateVelocity.g; list elements: xs[1]
    std::string scope; // "" for globals, else the enclosing function path
    Kind kind;
    int id;
    int line;
    const ast::Expr* expr = nullptr; // right-hand side, or the list element
};

inline const char* name(AssignmentSite::Kind k) {
    switch (k) {
    case AssignmentSite::Kind::literal: return "literal";
    case AssignmentSite::Kind::copy: return "copy";
    case AssignmentSite::Kind::expression: return "expression";
    case AssignmentSite::Kind::call: return "call";
    case AssignmentSite::Kind::element: return "element";
    }
    return "?";
}

inline bool is_literal(const ast::Expr& e) {
    if (e.kind == ast::Expr::Kind::neg) return e.args[0].kind == ast::Expr::Kind::num;
    return e.kind == ast::Expr::Kind::num;
}

inline std::string qualify(const std::string& scope, const std::string& n) { return scope.empty() ? n : scope + "." + n; }

namespace detail {

inline void collect(const std::vector<ast::Stmt>& body, const std::string& scope, std::vector<AssignmentSite>& out) {
    using K = ast::Stmt::Kind;
    for (const auto& s : body) {
        switch (s.kind) {
        case K::assign: {
            const ast::Expr& rhs = s.exprs[0];
            AssignmentSite::Kind kind = AssignmentSite::Kind::expression;
            if (is_literal(rhs)) kind = AssignmentSite::Kind::literal;
            else if (rhs.kind == ast::Expr::Kind::name) kind = AssignmentSite::Kind::copy;
            else if (rhs.kind == ast::Expr::Kind::call) kind = AssignmentSite::Kind::call;
            const std::string q = qualify(scope, s.name);
            out.push_back({q, scope, kind, static_cast<int>(out.size()), s.span.line, &rhs});
            if (rhs.kind == ast::Expr::Kind::list)
                for (std::size_t i = 0; i < rhs.args.size(); ++i)
                    if (is_literal(rhs.args[i]))
                        out.push_back({q + "[" + std::to_string(i) + "]", scope, AssignmentSite::Kind::element,
                                       static_cast<int>(out.size()), s.span.line, &rhs.args[i]});
            break;
        }
        case K::def: collect(s.body, qualify(scope, s.name), out); break;
        default:
            collect(s.body, scope, out);
            collect(s.orelse, scope, out);
            break;
        }
    }
}

} // namespace detail

/// Every assignment in source order, including those inside function bodies.
inline std::vector<AssignmentSite> find_assignments(const ast::Program& p) {
    std::vector<AssignmentSite> out;
    detail::collect(p, "", out);
    return out;
}

} // namespace ucc::frontend

#pragma once

#include <map>
#include <string>

#include "ucc/compiler/analysis.hpp"
#include "ucc/spec/spec.hpp"

namespace ucc::compiler {

namespace detail {

inline const char* call_name(const ast::Expr& e) {
    static const std::map<std::string, const char*> names{{"+", "add"}, {"-", "sub"}, {"*", "mul"}, {"/", "div"}, {"**", "pow"},
                                                          {"<", "lt"},  {">", "gt"},  {"<=", "le"}, {">=", "ge"}, {"==", "eq"},
                                                          {"===", "eqv"}};
    return names.at(e.text);
}

inline ast::Expr annotate(const ast::Expr& e, const std::string& scope, const Analysis& a) {
    using K = ast::Expr::Kind;
    ast::Expr out = e;
    for (auto& x : out.args) x = annotate(x, scope, a);
    if (e.kind != K::binop && e.kind != K::compare) return out;
    if (!a.info(e, scope).uncertain) return out;
    // the code is worked out on the original operands
    const std::string code = a.code(e.args[0], e.args[1], scope);
    return ast::call(call_name(e), {std::move(out.args[0]), std::move(out.args[1]), ast::depcode(code)}, e.span);
}

inline void annotate_block(std::vector<ast::Stmt>& body, const std::string& scope, const Analysis& a, spec::DunnoPolicy dunno,
                           const std::map<int, spec::DunnoPolicy>& per_line) {
    using K = ast::Stmt::Kind;
    for (auto& s : body) {
        if (s.kind == K::def) {
            annotate_block(s.body, frontend::qualify(scope, s.name), a, dunno, per_line);
            continue;
        }
        const bool uncertain_condition = s.kind == K::if_ && a.info(s.exprs[0], scope).uncertain;
        for (auto& e : s.exprs) e = annotate(e, scope, a);
        if (uncertain_condition) {
            const auto it = per_line.find(s.span.line);
            const spec::DunnoPolicy p = it == per_line.end() ? dunno : it->second;
            if (p != spec::DunnoPolicy::error) s.exprs[0] = ast::call(spec::name(p), {s.exprs[0]}, s.exprs[0].span);
        }
        annotate_block(s.body, scope, a, dunno, per_line);
        annotate_block(s.orelse, scope, a, dunno, per_line);
    }
}

} // namespace detail

/// Turns every operator touching an uncertain value into a library call with
/// an explicit dependence code, and wraps uncertain conditions.
inline void rewrite_operators(ast::Program& p, const Analysis& a, spec::DunnoPolicy dunno = spec::DunnoPolicy::always,
                              const std::map<int, spec::DunnoPolicy>& per_line = {}) {
    detail::annotate_block(p, "", a, dunno, per_line);
}

} // namespace ucc::compiler

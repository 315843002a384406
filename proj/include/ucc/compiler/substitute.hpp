#pragma once

#include <string>
#include <vector>

#include "ucc/compiler/analysis.hpp"
#include "ucc/frontend/assignments.hpp"
#include "ucc/runtime/evaluator.hpp"
#include "ucc/spec/spec.hpp"

namespace ucc::compiler {

/// Source text of a number; negative values become a negated literal.
inline ast::Expr number(const std::string& text, ast::Span at = {}) {
    if (!text.empty() && text[0] == '-') return ast::neg(number(text.substr(1), at), at);
    if (text == "inf") return ast::name("inf", at);
    return ast::num(text, std::strtod(text.c_str(), nullptr), at);
}

inline ast::Expr number(const Decimal& d, ast::Span at = {}) { return number(d.to_string(), at); }

inline ast::Expr bound(double v, const std::optional<Decimal>& exact, ast::Span at) {
    if (exact) return number(*exact, at);
    return number(runtime::format_number(v), at);
}

/// Constructor call for a spec expression.
inline ast::Expr constructor(const spec::UncertainExpr& u, ast::Span at = {}) {
    using K = spec::UncertainExpr::Kind;
    switch (u.kind) {
    case K::scalar: return number(u.args[0].lo, at);
    case K::distribution: {
        std::vector<ast::Expr> args;
        for (const auto& a : u.args)
            args.push_back(a.range ? ast::call("interval", {number(a.lo, at), number(a.hi, at)}, at) : number(a.lo, at));
        return ast::call(dist::name(u.family), std::move(args), at);
    }
    case K::out_of: return ast::call("kn", {number(u.args[0].lo, at), number(u.args[1].lo, at)}, at);
    default: {
        const auto b = spec::interval_bounds(u);
        return ast::call("interval", {bound(b->value.lo(), b->lo_exact, at), bound(b->value.hi(), b->hi_exact, at)}, at);
    }
    }
}

struct SubstituteResult {
    std::vector<std::string> notes;
};

namespace detail {

inline ast::Expr* find_site(ast::Program&, const frontend::AssignmentSite& site) {
    // the sites were found on this very tree, so the pointer is one of its nodes
    return const_cast<ast::Expr*>(site.expr);
}

} // namespace detail

/// Replaces the assignments named in the spec with constructor calls and
/// applies copy policies.
inline SubstituteResult substitute_assignments(ast::Program& p, const spec::SpecFile& sf) {
    SubstituteResult res;
    const auto sites = frontend::find_assignments(p);
    for (const auto& e : sf.entries) {
        if (sf.constants.count(e.name)) {
            res.notes.push_back(e.name + " is declared constant; left unchanged");
            continue;
        }
        bool found = false;
        for (const auto& s : sites) {
            if (s.name != e.name) continue;
            found = true;
            ast::Expr* rhs = detail::find_site(p, s);
            if (s.kind != frontend::AssignmentSite::Kind::literal && s.kind != frontend::AssignmentSite::Kind::element)
                res.notes.push_back("warning: line " + std::to_string(s.line) + ": " + e.name + " is not assigned a literal (" +
                                    frontend::name(s.kind) + "); the whole right-hand side is replaced");
            const ast::Span at = rhs->span.line ? rhs->span : ast::Span{s.line, 1};
            *rhs = constructor(e.expr, at);
        }
        if (!found) throw UnknownVariable(located("'" + e.name + "' is not assigned in the program", e.line, 1), e.line, 1);
    }
    for (const auto& [n, policy] : sf.copy_policy) {
        bool found = false;
        for (const auto& s : sites) {
            if (s.name != n) continue;
            found = true;
            if (s.kind != frontend::AssignmentSite::Kind::copy) {
                res.notes.push_back("warning: copy policy for " + n + " ignored: line " + std::to_string(s.line) + " is not a plain copy");
                continue;
            }
            if (policy == spec::CopyPolicy::alias) continue;
            ast::Expr* rhs = detail::find_site(p, s);
            *rhs = ast::call("copy", {*rhs}, rhs->span);
        }
        if (!found) throw UnknownVariable("'" + n + "' named in a copy policy is not assigned in the program");
    }
    return res;
}

/// A float literal read from its significant figures.
struct AutoSite {
    const ast::Expr* literal;
    Decimal lo, hi;
    bool in_formula; // not the whole right-hand side of an assignment
};

namespace detail {

inline bool float_text(const std::string& t) { return t.find_first_of(".eE") != std::string::npos; }

template <class F>
void auto_visit(ast::Expr& e, bool whole_rhs, F&& f) {
    using K = ast::Expr::Kind;
    if (e.kind == K::num) {
        if (float_text(e.text)) f(e, whole_rhs);
        return;
    }
    if (e.kind == K::call && (is_constructor(e.text) || e.text == "range")) return;
    if (e.kind == K::list) {
        for (auto& a : e.args) auto_visit(a, whole_rhs, f);
        return;
    }
    if (e.kind == K::neg) {
        auto_visit(e.args[0], whole_rhs, f);
        return;
    }
    for (auto& a : e.args) auto_visit(a, false, f);
}

template <class F>
void auto_walk(std::vector<ast::Stmt>& body, const std::set<std::string>& constants, const std::string& scope, F&& f) {
    using K = ast::Stmt::Kind;
    for (auto& s : body) {
        if (s.kind == K::def) {
            auto_walk(s.body, constants, frontend::qualify(scope, s.name), f);
            continue;
        }
        if (s.kind == K::for_range) {
            auto_walk(s.body, constants, scope, f);
            continue;
        }
        if (s.kind == K::assign && (constants.count(s.name) || constants.count(frontend::qualify(scope, s.name)))) continue;
        for (auto& e : s.exprs) auto_visit(e, s.kind == K::assign, f);
        auto_walk(s.body, constants, scope, f);
        auto_walk(s.orelse, constants, scope, f);
    }
}

inline std::pair<Decimal, Decimal> half_unit(const Decimal& d) {
    const Decimal x = d.rescaled(d.exponent() - 1);
    return {x.plus_units(-5), x.plus_units(5)};
}

} // namespace detail

/// The literals auto mode turns into intervals, in source order.
inline std::vector<AutoSite> auto_sites(const ast::Program& p, const std::set<std::string>& constants = {}) {
    std::vector<AutoSite> out;
    auto& tree = const_cast<ast::Program&>(p); // visited read-only
    detail::auto_walk(tree, constants, "", [&](ast::Expr& lit, bool whole) {
        const auto d = Decimal::parse(lit.text);
        if (!d) return;
        const auto [lo, hi] = detail::half_unit(*d);
        out.push_back({&lit, lo, hi, !whole});
    });
    return out;
}

/// Every float literal becomes interval(v - u/2, v + u/2) with u one unit
/// in its last written decimal place. Integers and constants stay.
inline std::vector<std::string> auto_intervalize(ast::Program& p, const std::set<std::string>& constants = {}) {
    std::vector<std::string> notes;
    detail::auto_walk(p, constants, "", [&](ast::Expr& lit, bool whole) {
        const auto d = Decimal::parse(lit.text);
        if (!d) return;
        const auto [lo, hi] = detail::half_unit(*d);
        const ast::Span at = lit.span;
        if (!whole)
            notes.push_back("line " + std::to_string(at.line) + ": " + lit.text +
                            " inside a formula was intervalized; if it is an exact coefficient, assign it to a name declared constant");
        lit = ast::call("interval", {number(lo, at), number(hi, at)}, at);
    });
    return notes;
}

} // namespace ucc::compiler

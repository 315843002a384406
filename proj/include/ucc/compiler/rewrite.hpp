#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ucc/compiler/analysis.hpp"
#include "ucc/frontend/emit.hpp"
#include "ucc/frontend/parser.hpp"

namespace ucc::compiler {

using Bindings = std::map<std::string, ast::Expr>;

namespace detail {

inline bool commutative(const ast::Expr& p) { return p.kind == ast::Expr::Kind::binop && (p.text == "+" || p.text == "*"); }

inline bool match(const ast::Expr& pat, const ast::Expr& e, Bindings& b) {
    using K = ast::Expr::Kind;
    if (pat.kind == K::name && !pat.text.empty() && pat.text[0] == '?') {
        const auto it = b.find(pat.text);
        if (it != b.end()) return it->second == e;
        b.emplace(pat.text, e);
        return true;
    }
    if (pat.kind == K::num) return e.kind == K::num && e.value == pat.value;
    if (pat.kind != e.kind || pat.text != e.text || pat.args.size() != e.args.size()) return false;
    Bindings saved = b;
    bool ok = true;
    for (std::size_t i = 0; ok && i < pat.args.size(); ++i) ok = match(pat.args[i], e.args[i], b);
    if (ok) return true;
    b = saved;
    if (commutative(pat)) {
        if (match(pat.args[0], e.args[1], b) && match(pat.args[1], e.args[0], b)) return true;
        b = saved;
    }
    return false;
}

inline ast::Expr instantiate(const ast::Expr& tpl, const Bindings& b, ast::Span at) {
    if (tpl.kind == ast::Expr::Kind::name && !tpl.text.empty() && tpl.text[0] == '?') return b.at(tpl.text);
    ast::Expr out = tpl;
    out.span = at;
    for (auto& a : out.args) a = instantiate(a, b, at);
    return out;
}

} // namespace detail

/// How a rule may be used on a particular match.
enum class Verdict { skip, replace, intersect };

struct RewriteRule {
    std::string name;
    ast::Expr pattern;
    ast::Expr replacement;
    // decides from the bindings; `uncertain` and `bounds` answer for bound subtrees
    std::function<Verdict(const Bindings&, const std::function<bool(const ast::Expr&)>& uncertain,
                          const std::function<std::optional<Interval>(const ast::Expr&)>& bounds)>
        guard;
};

/// The shipped directory of single-use rearrangements.
inline const std::vector<RewriteRule>& rewrite_directory() {
    static const std::vector<RewriteRule> rules = [] {
        auto p = [](const char* s) { return frontend::parse_expression(s, true); };
        auto when_x = [](const Bindings& b, const auto& unc, const auto&) { return unc(b.at("?x")) ? Verdict::replace : Verdict::skip; };
        std::vector<RewriteRule> r;
        r.push_back({"factor-sum", p("?x*?y + ?x*?z"), p("?x*(?y + ?z)"), when_x});
        r.push_back({"factor-difference", p("?x*?y - ?x*?z"), p("?x*(?y - ?z)"), when_x});
        r.push_back({"double", p("?x + ?x"), p("2*?x"), when_x});
        r.push_back({"square", p("?x*?x"), p("square(?x)"), when_x});
        r.push_back({"tan-sum", p("(?x + ?y)/(1 - ?x*?y)"), p("tan(arctan(?x) + arctan(?y))"),
                     [](const Bindings& b, const auto& unc, const auto& bounds) {
                         if (!unc(b.at("?x")) && !unc(b.at("?y"))) return Verdict::skip;
                         const auto x = bounds(b.at("?x")), y = bounds(b.at("?y"));
                         if (!x || !y) return Verdict::skip;
                         return ((*x) * (*y)).hi() < 1.0 ? Verdict::replace : Verdict::skip;
                     }});
        r.push_back({"complete-square", p("?u*?t + 0.5*?a*?t**2"), p("(sqrt(?a/2)*?t + ?u/sqrt(2*?a))**2 - ?u**2/(2*?a)"),
                     [](const Bindings& b, const auto& unc, const auto& bounds) {
                         const bool ut = unc(b.at("?t")), uu = unc(b.at("?u")), ua = unc(b.at("?a"));
                         if (!ut && !uu && !ua) return Verdict::skip;
                         const auto a = bounds(b.at("?a"));
                         if (!a || !(a->lo() > 0.0)) return Verdict::skip;
                         return ut && !uu && !ua ? Verdict::replace : Verdict::intersect;
                     }});
        return r;
    }();
    return rules;
}

struct RepeatEntry {
    int line;
    std::string target;                        // assigned name, or the statement kind
    std::vector<std::pair<std::string, int>> repeated; // uncertain variable and occurrences
    bool across_lines = false;                  // only visible after inlining earlier lines
};

struct RepeatReport {
    std::vector<RepeatEntry> entries;
};

inline std::string to_string(const RepeatReport& r) {
    if (r.entries.empty()) return "no repeated uncertain variables\n";
    std::string out;
    for (const auto& e : r.entries) {
        out += "line " + std::to_string(e.line) + ": " + e.target + ":";
        for (std::size_t i = 0; i < e.repeated.size(); ++i)
            out += (i ? ", " : " ") + e.repeated[i].first + " (" + std::to_string(e.repeated[i].second) + " times)";
        if (e.across_lines) out += " [across lines]";
        out += "\n";
    }
    return out;
}

class Rewriter {
public:
    explicit Rewriter(const Analysis& a) : a_(a) {}

    /// Replaces stable uncertain intermediate names defined on earlier lines
    /// by their right-hand sides.
    ast::Expr inline_expr(const ast::Expr& e, const std::string& scope, int before_line, int depth = 0) const {
        if (e.kind == ast::Expr::Kind::name && depth < 30) {
            const VarInfo* v = a_.var(a_.resolve(scope, e.text));
            if (v && inlinable(*v, before_line)) return inline_expr(*v->rhs, v->scope, v->line, depth + 1);
            return e;
        }
        ast::Expr out = e;
        for (auto& x : out.args) x = inline_expr(x, scope, before_line, depth);
        return out;
    }

    /// Uncertain leaves occurring more than once in an expression.
    std::vector<std::pair<std::string, int>> repeats(const ast::Expr& e, const std::string& scope) const {
        std::map<std::string, int> counts;
        ast::walk(e, [&](const ast::Expr& x) {
            if (x.kind != ast::Expr::Kind::name) return;
            const std::string q = a_.resolve(scope, x.text);
            const VarInfo* v = a_.var(q);
            if (v && v->info.uncertain) ++counts[q];
        });
        std::vector<std::pair<std::string, int>> out;
        for (const auto& [n, c] : counts)
            if (c > 1) out.emplace_back(n, c);
        return out;
    }

    RepeatReport detect(const ast::Program& p) const {
        RepeatReport r;
        visit(p, "", [&](const ast::Stmt& s, const ast::Expr& e, const std::string& scope) {
            const auto direct = repeats(e, scope);
            const auto full = repeats(inline_expr(e, scope, s.span.line), scope);
            if (full.empty()) return;
            r.entries.push_back({s.span.line, target(s, scope), full, direct != full});
        });
        return r;
    }

    /// Applies the directory to every statement; returns notes of what changed.
    std::vector<std::string> apply(ast::Program& p) const {
        std::vector<std::string> notes;
        visit_mut(p, "", [&](ast::Stmt& s, ast::Expr& e, const std::string& scope) {
            ast::Expr work = inline_expr(e, scope, s.span.line);
            std::vector<std::string> applied;
            bool changed = false;
            for (int round = 0; round < 8; ++round) {
                bool any = false;
                work = rewrite(work, scope, applied, any);
                if (!any) break;
                changed = true;
            }
            if (!changed) return;
            e = work;
            for (const auto& a : applied) notes.push_back("line " + std::to_string(s.span.line) + ": " + target(s, scope) + ": rewrote with " + a);
        });
        return notes;
    }

private:
    bool inlinable(const VarInfo& v, int before_line) const {
        if (!v.stable() || v.param || !v.rhs || !v.info.uncertain || v.line >= before_line) return false;
        if (v.rhs->kind == ast::Expr::Kind::call && is_constructor(v.rhs->text)) return false;
        if (v.rhs->kind == ast::Expr::Kind::list) return false;
        // every name it mentions must be stable too
        bool ok = true;
        ast::walk(*v.rhs, [&](const ast::Expr& x) {
            if (x.kind == ast::Expr::Kind::call && a_.function(v.scope, x.text)) ok = false;
            if (x.kind != ast::Expr::Kind::name) return;
            const VarInfo* w = a_.var(a_.resolve(v.scope, x.text));
            if (w && !w->stable()) ok = false;
        });
        return ok;
    }

    static std::string target(const ast::Stmt& s, const std::string& scope) {
        switch (s.kind) {
        case ast::Stmt::Kind::assign: return frontend::qualify(scope, s.name);
        case ast::Stmt::Kind::return_: return scope.empty() ? "return" : scope + " return";
        case ast::Stmt::Kind::if_: return "condition";
        default: return "expression";
        }
    }

    ast::Expr rewrite(const ast::Expr& e, const std::string& scope, std::vector<std::string>& applied, bool& any) const {
        if (e.kind == ast::Expr::Kind::call && e.text == "intersect") return e;
        ast::Expr out = e;
        for (auto& x : out.args) x = rewrite(x, scope, applied, any);
        auto uncertain = [&](const ast::Expr& x) { return a_.info(x, scope).uncertain; };
        auto bounds = [&](const ast::Expr& x) { return a_.bounds(x, scope); };
        for (const auto& rule : rewrite_directory()) {
            Bindings b;
            if (!detail::match(rule.pattern, out, b)) continue;
            const Verdict v = rule.guard(b, uncertain, bounds);
            if (v == Verdict::skip) continue;
            ast::Expr rep = detail::instantiate(rule.replacement, b, out.span);
            any = true;
            if (v == Verdict::replace) {
                applied.push_back(rule.name);
                return rep;
            }
            applied.push_back(rule.name + " (both forms intersected)");
            return ast::call("intersect", {out, rep}, out.span);
        }
        return out;
    }

    template <class F>
    static void visit(const std::vector<ast::Stmt>& body, const std::string& scope, F&& f) {
        using K = ast::Stmt::Kind;
        for (const auto& s : body) {
            if (s.kind == K::def) {
                visit(s.body, frontend::qualify(scope, s.name), f);
                continue;
            }
            if (s.kind == K::assign || s.kind == K::return_ || s.kind == K::expr) f(s, s.exprs[0], scope);
            visit(s.body, scope, f);
            visit(s.orelse, scope, f);
        }
    }

    template <class F>
    static void visit_mut(std::vector<ast::Stmt>& body, const std::string& scope, F&& f) {
        using K = ast::Stmt::Kind;
        for (auto& s : body) {
            if (s.kind == K::def) {
                visit_mut(s.body, frontend::qualify(scope, s.name), f);
                continue;
            }
            if (s.kind == K::assign || s.kind == K::return_) f(s, s.exprs[0], scope);
            visit_mut(s.body, scope, f);
            visit_mut(s.orelse, scope, f);
        }
    }

    const Analysis& a_;
};

} // namespace ucc::compiler

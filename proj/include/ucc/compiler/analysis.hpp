#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ucc/core/interval_ops.hpp"
#include "ucc/frontend/assignments.hpp"
#include "ucc/spec/spec.hpp"

namespace ucc::compiler {

inline bool is_distribution(const std::string& f) { return f == "normal" || f == "uniform" || f == "beta" || f == "binomial"; }

/// Calls that create a fresh uncertain object.
inline bool is_constructor(const std::string& f) { return f == "interval" || f == "kn" || f == "copy" || is_distribution(f); }

/// What an expression depends on: the uncertain inputs reaching it.
struct Info {
    bool uncertain = false;
    std::set<std::string> inputs;

    void merge(const Info& o) {
        uncertain = uncertain || o.uncertain;
        inputs.insert(o.inputs.begin(), o.inputs.end());
    }
    bool operator==(const Info&) const = default;
};

struct VarInfo {
    Info info;
    int assignments = 0;
    bool top_level = true; // never assigned inside a loop or branch
    bool param = false;
    bool loop = false;
    const ast::Expr* rhs = nullptr; // of the last assignment seen
    int line = 0;
    std::string scope;
    std::optional<std::string> direct; // the input this variable is, itself or through aliases

    // a name whose value never changes once set
    bool stable() const { return !loop && (param ? assignments == 0 : assignments == 1 && top_level); }
};

class Analysis {
public:
    Analysis(const ast::Program& p, spec::DependenceMatrix deps) : program_(p), deps_(std::move(deps)) {
        collect_scopes(p, "");
        count(p, "", true, false);
        for (int round = 0; round < 100; ++round) {
            changed_ = false;
            flow(p, "");
            if (!changed_) break;
        }
        for (auto& [n, v] : vars_) v.direct = direct_of(n, 0);
    }

    std::string resolve(const std::string& scope, const std::string& n) const {
        if (!scope.empty()) {
            const auto it = locals_.find(scope);
            if (it != locals_.end() && it->second.count(n)) return scope + "." + n;
        }
        return n;
    }

    const VarInfo* var(const std::string& q) const {
        const auto it = vars_.find(q);
        return it == vars_.end() ? nullptr : &it->second;
    }
    const std::map<std::string, VarInfo>& vars() const { return vars_; }

    const ast::Stmt* function(const std::string& scope, const std::string& n) const {
        const auto it = functions_.find(resolve(scope, n));
        return it == functions_.end() ? nullptr : it->second;
    }

    Info info(const ast::Expr& e, const std::string& scope) const {
        using K = ast::Expr::Kind;
        Info out;
        switch (e.kind) {
        case K::num:
        case K::depcode: return out;
        case K::name: {
            if (const VarInfo* v = var(resolve(scope, e.text))) return v->info;
            return out;
        }
        case K::call:
            if (is_constructor(e.text)) return source(e, scope, anonymous(e));
            if (function(scope, e.text)) {
                const auto it = returns_.find(resolve(scope, e.text));
                if (it != returns_.end()) out = it->second;
            }
            break;
        default: break;
        }
        for (const auto& a : e.args) out.merge(info(a, scope));
        return out;
    }

    /// The dependence between two named inputs, including copy pairs.
    DepKind pair(const std::string& x, const std::string& y) const {
        if (x == y) return DepKind::equal();
        return deps_.get(x, y);
    }
    void add_pair(const std::string& x, const std::string& y, DepKind d) { deps_.set(x, y, d); }

    /// Dependence code for a binary operation between l and r.
    std::string code(const ast::Expr& l, const ast::Expr& r, const std::string& scope) const {
        const Info li = info(l, scope), ri = info(r, scope);
        if (!li.uncertain || !ri.uncertain) return "f";
        if (l.kind == ast::Expr::Kind::name && r.kind == ast::Expr::Kind::name) {
            const VarInfo* lv = var(resolve(scope, l.text));
            const VarInfo* rv = var(resolve(scope, r.text));
            if (lv && rv && lv->direct && rv->direct) return pair(*lv->direct, *rv->direct).code();
        }
        for (const auto& x : li.inputs)
            for (const auto& y : ri.inputs)
                if (x == y || pair(x, y).canonical().tag() != DepKind::Tag::independent) return "f";
        return "i";
    }

    /// Static enclosure of an expression when it can be read off the source.
    std::optional<Interval> bounds(const ast::Expr& e, const std::string& scope, int depth = 0) const {
        using K = ast::Expr::Kind;
        if (depth > 50) return std::nullopt;
        switch (e.kind) {
        case K::num: return Interval(e.value);
        case K::neg: {
            const auto b = bounds(e.args[0], scope, depth + 1);
            if (!b) return std::nullopt;
            return -*b;
        }
        case K::name: {
            const std::string q = resolve(scope, e.text);
            const VarInfo* v = var(q);
            if (!v || !v->stable() || !v->rhs) return std::nullopt;
            return bounds(*v->rhs, v->scope, depth + 1);
        }
        case K::call:
            if (e.text == "interval" && e.args.size() == 2) {
                const auto lo = literal(e.args[0], false), hi = literal(e.args[1], true);
                if (lo && hi) return Interval(*lo, *hi);
            }
            return std::nullopt;
        case K::binop: {
            const auto a = bounds(e.args[0], scope, depth + 1), b = bounds(e.args[1], scope, depth + 1);
            if (!a || !b || e.text == "**") return std::nullopt;
            if (e.text == "/" && b->contains(0.0)) return std::nullopt;
            static const std::map<std::string, BinOp> ops{{"+", BinOp::add}, {"-", BinOp::sub}, {"*", BinOp::mul}, {"/", BinOp::div}};
            return apply(ops.at(e.text), *a, *b);
        }
        default: return std::nullopt;
        }
    }

    // source id for a constructor that is not the whole right-hand side of an assignment
    static std::string anonymous(const ast::Expr& e) {
        return e.text + "@" + std::to_string(e.span.line) + ":" + std::to_string(e.span.column);
    }

private:
    static std::optional<double> literal(const ast::Expr& e, bool upper) {
        const bool negated = e.kind == ast::Expr::Kind::neg && e.args[0].kind == ast::Expr::Kind::num;
        const ast::Expr* lit = e.kind == ast::Expr::Kind::num ? &e : negated ? &e.args[0] : nullptr;
        if (!lit) return std::nullopt;
        if (auto d = Decimal::parse(lit->text)) {
            const Decimal v = negated ? -*d : *d;
            return upper ? v.up() : v.down();
        }
        return std::nullopt;
    }

    Info source(const ast::Expr& e, const std::string& scope, const std::string& id) const {
        Info out;
        if (e.text == "copy") {
            for (const auto& a : e.args) out.uncertain = out.uncertain || info(a, scope).uncertain;
        } else if (e.text == "interval") {
            out.uncertain = !(e.args.size() == 2 && e.args[0] == e.args[1]);
        } else {
            out.uncertain = true;
        }
        if (out.uncertain) out.inputs.insert(id);
        return out;
    }

    void collect_scopes(const std::vector<ast::Stmt>& body, const std::string& scope) {
        using K = ast::Stmt::Kind;
        for (const auto& s : body) {
            switch (s.kind) {
            case K::assign:
            case K::for_range:
            case K::for_each: locals_[scope].insert(s.name); break;
            case K::def: {
                locals_[scope].insert(s.name);
                const std::string path = frontend::qualify(scope, s.name);
                functions_[path] = &s;
                for (const auto& p : s.params) locals_[path].insert(p);
                collect_scopes(s.body, path);
                continue;
            }
            default: break;
            }
            collect_scopes(s.body, scope);
            collect_scopes(s.orelse, scope);
        }
    }

    VarInfo& slot(const std::string& scope, const std::string& n) {
        VarInfo& v = vars_[resolve(scope, n)];
        v.scope = scope;
        return v;
    }

    void count(const std::vector<ast::Stmt>& body, const std::string& scope, bool top, bool in_loop) {
        using K = ast::Stmt::Kind;
        for (const auto& s : body) {
            switch (s.kind) {
            case K::assign: {
                VarInfo& v = slot(scope, s.name);
                ++v.assignments;
                v.top_level = v.top_level && top;
                v.loop = v.loop || in_loop;
                v.rhs = &s.exprs[0];
                v.line = s.span.line;
                break;
            }
            case K::for_range:
            case K::for_each: {
                VarInfo& v = slot(scope, s.name);
                v.loop = true;
                v.line = s.span.line;
                count(s.body, scope, false, true);
                break;
            }
            case K::if_:
                count(s.body, scope, false, in_loop);
                count(s.orelse, scope, false, in_loop);
                break;
            case K::def: {
                const std::string path = frontend::qualify(scope, s.name);
                for (const auto& p : s.params) {
                    VarInfo& v = slot(path, p);
                    v.param = true;
                    v.line = s.span.line;
                }
                count(s.body, path, true, false);
                break;
            }
            default: break;
            }
        }
    }

    void merge_into(Info& dst, const Info& src) {
        Info before = dst;
        dst.merge(src);
        if (!(before == dst)) changed_ = true;
    }

    void flow_calls(const ast::Expr& e, const std::string& scope) {
        ast::walk(e, [&](const ast::Expr& x) {
            if (x.kind != ast::Expr::Kind::call) return;
            const ast::Stmt* def = function(scope, x.text);
            if (!def) return;
            const std::string path = resolve(scope, x.text);
            for (std::size_t i = 0; i < def->params.size() && i < x.args.size(); ++i)
                merge_into(vars_[path + "." + def->params[i]].info, info(x.args[i], scope));
        });
    }

    void flow(const std::vector<ast::Stmt>& body, const std::string& scope) {
        using K = ast::Stmt::Kind;
        for (const auto& s : body) {
            for (const auto& e : s.exprs) flow_calls(e, scope);
            switch (s.kind) {
            case K::assign: {
                const std::string q = resolve(scope, s.name);
                const ast::Expr& rhs = s.exprs[0];
                Info in;
                if (rhs.kind == ast::Expr::Kind::call && is_constructor(rhs.text)) {
                    in = source(rhs, scope, q);
                } else if (rhs.kind == ast::Expr::Kind::list) {
                    for (std::size_t i = 0; i < rhs.args.size(); ++i) {
                        const ast::Expr& a = rhs.args[i];
                        if (a.kind == ast::Expr::Kind::call && is_constructor(a.text))
                            in.merge(source(a, scope, q + "[" + std::to_string(i) + "]"));
                        else
                            in.merge(info(a, scope));
                    }
                } else {
                    in = info(rhs, scope);
                }
                merge_into(vars_[q].info, in);
                break;
            }
            case K::for_each: merge_into(vars_[resolve(scope, s.name)].info, info(s.exprs[0], scope)); break;
            case K::return_: merge_into(returns_[scope], info(s.exprs[0], scope)); break;
            case K::def: flow(s.body, frontend::qualify(scope, s.name)); continue;
            default: break;
            }
            flow(s.body, scope);
            flow(s.orelse, scope);
        }
    }

    std::optional<std::string> direct_of(const std::string& q, int depth) const {
        const VarInfo* v = var(q);
        if (!v || depth > 50 || !v->stable() || !v->rhs || !v->info.uncertain) return std::nullopt;
        const ast::Expr& rhs = *v->rhs;
        if (rhs.kind == ast::Expr::Kind::call && is_constructor(rhs.text)) return q;
        if (rhs.kind == ast::Expr::Kind::name) return direct_of(resolve(v->scope, rhs.text), depth + 1);
        return std::nullopt;
    }

    const ast::Program& program_;
    spec::DependenceMatrix deps_;
    std::map<std::string, std::set<std::string>> locals_;
    std::map<std::string, const ast::Stmt*> functions_;
    std::map<std::string, VarInfo> vars_;
    std::map<std::string, Info> returns_;
    bool changed_ = false;
};

} // namespace ucc::compiler

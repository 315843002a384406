#pragma once

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ucc/core/decimal.hpp"
#include "ucc/core/interval_ops.hpp"
#include "ucc/core/pbox_ops.hpp"
#include "ucc/dist/distributions.hpp"
#include "ucc/frontend/ast.hpp"
#include "ucc/runtime/value.hpp"

namespace ucc::runtime {

enum class RawDunno { error, always, sometimes };

struct Options {
    SqrtPolicy sqrt_policy = SqrtPolicy::clamp;
    std::size_t steps = kDefaultSteps;
    RawDunno raw_dunno = RawDunno::error;
    int max_depth = 200;
};

/// Input overrides used by the Monte Carlo harness: the listed literal nodes
/// evaluate to the given numbers instead of their text.
using Overrides = std::unordered_map<const ast::Expr*, double>;

inline std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string format(const Value& v) {
    if (v.is_scalar()) return format_number(v.scalar());
    if (v.is_interval()) return "[" + format_number(v.interval().lo()) + ", " + format_number(v.interval().hi()) + "]";
    if (v.is_pbox()) {
        const PBox& p = v.pbox();
        const Interval m = p.mean();
        return std::string(name(p.kind())) + " ~ support [" + format_number(p.support().lo()) + ", " +
               format_number(p.support().hi()) + "], mean [" + format_number(m.lo()) + ", " + format_number(m.hi()) + "]";
    }
    if (v.is_logical()) return v.logical().name();
    if (v.is_list()) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.list().size(); ++i) s += (i ? ", " : "") + format(v.list()[i]);
        return s + "]";
    }
    return "<function " + v.function().path + ">";
}

inline std::optional<BinOp> binop_from(const std::string& s) {
    if (s == "+" || s == "add") return BinOp::add;
    if (s == "-" || s == "sub") return BinOp::sub;
    if (s == "*" || s == "mul") return BinOp::mul;
    if (s == "/" || s == "div") return BinOp::div;
    return std::nullopt;
}

inline std::optional<CmpOp> cmpop_from(const std::string& s) {
    if (s == "<" || s == "lt") return CmpOp::lt;
    if (s == ">" || s == "gt") return CmpOp::gt;
    if (s == "<=" || s == "le") return CmpOp::le;
    if (s == ">=" || s == "ge") return CmpOp::ge;
    if (s == "==" || s == "eq") return CmpOp::eq;
    if (s == "===" || s == "eqv") return CmpOp::identical;
    return std::nullopt;
}

inline DepKind dep_from_code(const std::string& code) {
    if (auto d = DepKind::from_name(code)) return *d;
    char* end = nullptr;
    const double r = std::strtod(code.c_str(), &end);
    if (end == code.c_str() || *end != '\0') throw RuntimeError("unknown dependence code '" + code + "'");
    return DepKind::correlation(r);
}

class Evaluator {
public:
    explicit Evaluator(Options opt = {}) : opt_(opt) { ctx_ = FnContext{opt.sqrt_policy, &notes}; }

    void set_overrides(const Overrides* o) { overrides_ = o; }

    /// Runs a whole program against the global environment.
    void run(const ast::Program& p) {
        Frame f{nullptr, ""};
        exec_block(p, f);
    }

    /// Evaluates an expression against the current globals.
    Value evaluate(const ast::Expr& e) {
        Frame f{nullptr, ""};
        return eval(e, f);
    }

    const std::vector<std::string>& order() const { return order_; }
    const std::unordered_map<std::string, Value>& globals() const { return globals_; }
    const Value* global(const std::string& n) const {
        const auto it = globals_.find(n);
        return it == globals_.end() ? nullptr : &it->second;
    }

    // arithmetic with explicit dependence; `raw` marks an unannotated infix
    Value binary(BinOp op, const Value& x, const Value& y, std::optional<DepKind> dep, bool raw = false) {
        if (x.is_scalar() && y.is_scalar()) {
            const double a = x.scalar(), b = y.scalar();
            switch (op) {
            case BinOp::add: return a + b;
            case BinOp::sub: return a - b;
            case BinOp::mul: return a * b;
            case BinOp::div:
                if (b == 0.0) throw DivisionByUncertainZero("division by zero");
                return a / b;
            }
        }
        require_numeric(x);
        require_numeric(y);
        DepKind d = dep.value_or(DepKind::frechet());
        if (raw) ++raw_uncertain_ops;
        if (x.id() == y.id()) d = DepKind::equal();
        if (x.is_pbox() || y.is_pbox()) {
            const std::size_t n = steps_for(x, y);
            PBox r = pbox_binop(op, x.as_pbox(n), y.as_pbox(n), d, ctx_);
            return carry_ensemble(std::move(r), x, y);
        }
        return collapse(interval_binop(op, x.as_interval(), y.as_interval(), d));
    }

    Value compare(CmpOp op, const Value& x, const Value& y, std::optional<DepKind> dep, bool raw = false) {
        if (op == CmpOp::identical) return Logical::of(same_contents(x, y));
        if (x.is_scalar() && y.is_scalar()) {
            const double a = x.scalar(), b = y.scalar();
            switch (op) {
            case CmpOp::lt: return Logical::of(a < b);
            case CmpOp::gt: return Logical::of(a > b);
            case CmpOp::le: return Logical::of(a <= b);
            case CmpOp::ge: return Logical::of(a >= b);
            default: return Logical::of(a == b);
            }
        }
        require_numeric(x);
        require_numeric(y);
        if (raw) ++raw_uncertain_ops;
        if (x.id() == y.id()) return Logical::of(op != CmpOp::lt && op != CmpOp::gt);
        const DepKind d = dep.value_or(DepKind::frechet());
        if (x.is_pbox() || y.is_pbox()) {
            const std::size_t n = steps_for(x, y);
            return pbox_compare(op, x.as_pbox(n), y.as_pbox(n), d, ctx_);
        }
        return interval_compare(op, x.as_interval(), y.as_interval());
    }

    Value power(const Value& x, const Value& y, std::optional<DepKind> dep) {
        if (x.is_scalar() && y.is_scalar()) return std::pow(x.scalar(), y.scalar());
        require_numeric(x);
        require_numeric(y);
        if (y.is_scalar()) {
            const double k = y.scalar();
            const bool integral = k == std::floor(k) && std::abs(k) < 1e9;
            if (x.is_interval()) return collapse(integral ? pow(x.interval(), static_cast<int>(k)) : pow(x.interval(), k));
            if (integral && k >= 0) return carry_ensemble(pbox_pow(x.pbox(), static_cast<int>(k)), x, x);
            return levelwise(x.pbox(), [&](const Interval& f) { return pow(f, k); });
        }
        // uncertain exponent: exp(y * ln x)
        const Value lx = unary("ln", x);
        return unary("exp", binary(BinOp::mul, lx, y, dep));
    }

    Value unary(const std::string& f, const Value& x) {
        if (x.is_scalar()) {
            const double v = x.scalar();
            if (f == "exp") return std::exp(v);
            if (f == "ln") {
                if (v <= 0) throw DomainError("ln of a nonpositive number");
                return std::log(v);
            }
            if (f == "sqrt") {
                if (v < 0) throw DomainError("sqrt of a negative number");
                return std::sqrt(v);
            }
            if (f == "sin") return std::sin(v);
            if (f == "cos") return std::cos(v);
            if (f == "tan") return std::tan(v);
            if (f == "arctan") return std::atan(v);
            if (f == "abs") return std::abs(v);
            if (f == "square") return v * v;
            if (f == "neg") return -v;
        }
        require_numeric(x);
        const Fn fn = fn_from(f);
        if (x.is_interval()) return collapse(apply(fn, x.interval(), ctx_));
        return carry_ensemble(pbox_fn(fn, x.pbox(), ctx_), x, x);
    }

    std::vector<std::string> output;
    std::vector<std::string> notes;
    long raw_uncertain_ops = 0;

private:
    struct Frame {
        std::unordered_map<std::string, Value>* locals;
        std::string path;
    };

    static void require_numeric(const Value& v) {
        if (!v.is_numeric()) throw RuntimeError(std::string("arithmetic on a ") + v.kind_name());
    }

    std::size_t steps_for(const Value& x, const Value& y) const {
        std::size_t n = opt_.steps;
        if (x.is_pbox()) n = std::max(n, x.pbox().steps());
        if (y.is_pbox()) n = std::max(n, y.pbox().steps());
        return n;
    }

    static Value carry_ensemble(PBox r, const Value& x, const Value& y) {
        if (r.ensemble().empty()) {
            if (x.is_pbox() && !x.pbox().ensemble().empty()) r = r.with_ensemble(x.pbox().ensemble());
            else if (y.is_pbox() && !y.pbox().ensemble().empty()) r = r.with_ensemble(y.pbox().ensemble());
        }
        return r;
    }

    template <class F>
    Value levelwise(const PBox& p, F&& f) {
        std::vector<double> lo(p.steps()), hi(p.steps());
        for (std::size_t i = 0; i < p.steps(); ++i) {
            const Interval r = f(p.focal(i));
            lo[i] = r.lo();
            hi[i] = r.hi();
        }
        return detail::from_focal(std::move(lo), std::move(hi));
    }

    // degenerate intervals become plain numbers
    static Value collapse(const Interval& r) {
        if (r.degenerate()) return r.lo();
        return r;
    }

    static Fn fn_from(const std::string& f) {
        if (f == "exp") return Fn::exp;
        if (f == "ln") return Fn::ln;
        if (f == "sqrt") return Fn::sqrt;
        if (f == "sin") return Fn::sin;
        if (f == "cos") return Fn::cos;
        if (f == "tan") return Fn::tan;
        if (f == "arctan") return Fn::arctan;
        if (f == "abs") return Fn::abs;
        if (f == "square") return Fn::square;
        if (f == "neg") return Fn::neg;
        throw RuntimeError("unknown function '" + f + "'");
    }

    static bool is_unary_builtin(const std::string& f) {
        return f == "exp" || f == "ln" || f == "sqrt" || f == "sin" || f == "cos" || f == "tan" || f == "arctan" || f == "abs" ||
               f == "square";
    }

    void assign(Frame& f, const std::string& n, Value v) {
        if (f.locals) {
            (*f.locals)[n] = std::move(v);
            return;
        }
        auto it = globals_.find(n);
        if (it == globals_.end()) {
            order_.push_back(n);
            globals_.emplace(n, std::move(v));
        } else {
            it->second = std::move(v);
        }
    }

    const Value* lookup(const Frame& f, const std::string& n) const {
        if (f.locals) {
            const auto it = f.locals->find(n);
            if (it != f.locals->end()) return &it->second;
        }
        const auto it = globals_.find(n);
        return it == globals_.end() ? nullptr : &it->second;
    }

    static bool truth(const Value& v, RawDunno policy, const ast::Span& at) {
        if (v.is_scalar()) return v.scalar() != 0.0;
        if (!v.is_logical()) throw RuntimeError(located(std::string("condition is a ") + v.kind_name(), at.line, at.column), at.line, at.column);
        const Logical& l = v.logical();
        if (!l.is_dunno()) return l.is_true();
        switch (policy) {
        case RawDunno::always: return false;
        case RawDunno::sometimes: return true;
        case RawDunno::error: break;
        }
        throw DunnoBranch(located("condition is dunno; choose always(...) or sometimes(...)", at.line, at.column), at.line,
                          at.column);
    }

    // returns the value of a `return` if one ran
    std::optional<Value> exec_block(const std::vector<ast::Stmt>& body, Frame& f) {
        for (const auto& s : body)
            if (auto r = exec(s, f)) return r;
        return std::nullopt;
    }

    std::optional<Value> exec(const ast::Stmt& s, Frame& f) {
        using K = ast::Stmt::Kind;
        try {
            switch (s.kind) {
            case K::assign: assign(f, s.name, eval(s.exprs[0], f)); return std::nullopt;
            case K::expr: eval(s.exprs[0], f); return std::nullopt;
            case K::return_: return eval(s.exprs[0], f);
            case K::if_: {
                const bool t = truth(eval(s.exprs[0], f), opt_.raw_dunno, s.span);
                return exec_block(t ? s.body : s.orelse, f);
            }
            case K::for_range: {
                long lo = 0, hi = 0;
                auto bound = [&](const ast::Expr& e) {
                    const Value v = eval(e, f);
                    if (!v.is_scalar() || v.scalar() != std::floor(v.scalar()))
                        throw RuntimeError(located("range bounds must be whole numbers", e.span.line, e.span.column), e.span.line,
                                           e.span.column);
                    return static_cast<long>(v.scalar());
                };
                if (s.exprs.size() == 1) hi = bound(s.exprs[0]);
                else {
                    lo = bound(s.exprs[0]);
                    hi = bound(s.exprs[1]);
                }
                for (long i = lo; i < hi; ++i) {
                    assign(f, s.name, static_cast<double>(i));
                    if (auto r = exec_block(s.body, f)) return r;
                }
                return std::nullopt;
            }
            case K::for_each: {
                const Value seq = eval(s.exprs[0], f);
                if (!seq.is_list()) throw RuntimeError(std::string("cannot iterate over a ") + seq.kind_name());
                for (const Value& item : seq.list()) {
                    assign(f, s.name, item);
                    if (auto r = exec_block(s.body, f)) return r;
                }
                return std::nullopt;
            }
            case K::def:
                assign(f, s.name, Function{&s, f.path.empty() ? s.name : f.path + "." + s.name});
                return std::nullopt;
            }
        } catch (Error& e) {
            e.locate(s.span.line, s.span.column);
            throw;
        }
        return std::nullopt;
    }

    Value eval(const ast::Expr& e, Frame& f) {
        using K = ast::Expr::Kind;
        if (overrides_) {
            const auto it = overrides_->find(&e);
            if (it != overrides_->end()) return it->second;
        }
        switch (e.kind) {
        case K::num: return e.value;
        case K::name: {
            if (const Value* v = lookup(f, e.text)) return *v;
            if (e.text == "pi") return std::numbers::pi;
            if (e.text == "e") return std::numbers::e;
            if (e.text == "inf") return std::numeric_limits<double>::infinity();
            throw RuntimeError(located("name '" + e.text + "' is not defined", e.span.line, e.span.column), e.span.line,
                               e.span.column);
        }
        case K::neg: return unary("neg", eval(e.args[0], f));
        case K::binop: {
            const Value x = eval(e.args[0], f);
            const Value y = eval(e.args[1], f);
            if (e.text == "**") {
                if (!(x.is_scalar() && y.is_scalar())) ++raw_uncertain_ops;
                return power(x, y, std::nullopt);
            }
            return binary(*binop_from(e.text), x, y, std::nullopt, true);
        }
        case K::compare: {
            const Value x = eval(e.args[0], f);
            const Value y = eval(e.args[1], f);
            return compare(*cmpop_from(e.text), x, y, std::nullopt, true);
        }
        case K::list: {
            std::vector<Value> items;
            for (const auto& a : e.args) items.push_back(eval(a, f));
            return Value(std::move(items));
        }
        case K::depcode: throw RuntimeError("dependence code outside an operator call");
        case K::call: return call(e, f);
        }
        return 0.0;
    }

    std::optional<DepKind> code_arg(const ast::Expr& call, std::size_t i) {
        if (call.args.size() <= i) return std::nullopt;
        const ast::Expr& a = call.args[i];
        if (a.kind != ast::Expr::Kind::depcode) throw RuntimeError("'" + call.text + "' expects a quoted dependence code");
        return dep_from_code(a.text);
    }

    void arity(const ast::Expr& call, std::size_t lo, std::size_t hi) {
        if (call.args.size() < lo || call.args.size() > hi)
            throw RuntimeError(located("wrong number of arguments to '" + call.text + "'", call.span.line, call.span.column),
                               call.span.line, call.span.column);
    }

    // exact decimal reading of literal endpoints
    double endpoint(const ast::Expr& a, Frame& f, bool upper) {
        const bool negated = a.kind == ast::Expr::Kind::neg && a.args[0].kind == ast::Expr::Kind::num;
        const ast::Expr* lit = a.kind == ast::Expr::Kind::num ? &a : negated ? &a.args[0] : nullptr;
        if (lit && !(overrides_ && overrides_->count(lit))) {
            if (auto d = Decimal::parse(lit->text)) {
                const Decimal v = negated ? -*d : *d;
                return upper ? v.up() : v.down();
            }
        }
        const Value v = eval(a, f);
        if (!v.is_scalar()) return upper ? v.as_interval().hi() : v.as_interval().lo();
        return v.scalar();
    }

    Value call(const ast::Expr& e, Frame& f) {
        const std::string& n = e.text;
        auto arg = [&](std::size_t i) { return eval(e.args[i], f); };

        if (const Value* fv = lookup(f, n); fv && fv->is_function()) return call_user(fv->function(), e, f);

        if (auto op = binop_from(n)) {
            arity(e, 2, 3);
            return binary(*op, arg(0), arg(1), code_arg(e, 2));
        }
        if (auto op = cmpop_from(n)) {
            arity(e, 2, 3);
            return compare(*op, arg(0), arg(1), code_arg(e, 2));
        }
        if (n == "pow") {
            arity(e, 2, 3);
            return power(arg(0), arg(1), code_arg(e, 2));
        }
        if (is_unary_builtin(n)) {
            arity(e, 1, 1);
            return unary(n, arg(0));
        }
        if (n == "print") {
            std::string line;
            for (std::size_t i = 0; i < e.args.size(); ++i) line += (i ? " " : "") + format(arg(i));
            output.push_back(line);
            return 0.0;
        }
        if (n == "interval") {
            arity(e, 2, 2);
            const ast::Expr &a = e.args[0], &b = e.args[1];
            if (a == b && (a.kind == ast::Expr::Kind::num || a.kind == ast::Expr::Kind::neg)) {
                const Value v = eval(a, f); // same literal twice: the number itself
                if (v.is_scalar()) return v.scalar();
            }
            const double lo = endpoint(a, f, false), hi = endpoint(b, f, true);
            if (lo == hi) return lo;
            return Interval(lo, hi);
        }
        if (n == "always" || n == "sometimes") {
            arity(e, 1, 1);
            const Value v = arg(0);
            if (v.is_scalar()) return Logical::of(v.scalar() != 0.0);
            if (!v.is_logical()) throw RuntimeError("'" + n + "' expects a logical value");
            return n == "always" ? always(v.logical()) : sometimes(v.logical());
        }
        if (n == "intersect") {
            arity(e, 2, 2);
            const Value x = arg(0), y = arg(1);
            require_numeric(x);
            require_numeric(y);
            if (x.is_pbox() || y.is_pbox()) {
                const std::size_t k = steps_for(x, y);
                return intersect(x.as_pbox(k), y.as_pbox(k));
            }
            return collapse(intersect(x.as_interval(), y.as_interval()));
        }
        if (n == "copy") {
            arity(e, 1, 1);
            return arg(0).renewed();
        }
        if (n == "kn") {
            arity(e, 2, 2);
            const Value k = arg(0), m = arg(1);
            if (!k.is_scalar() || !m.is_scalar()) throw RuntimeError("kn expects two counts");
            return dist::kn_cbox(static_cast<long>(k.scalar()), static_cast<long>(m.scalar()), opt_.steps);
        }
        if (auto fam = dist::family_from_name(n)) {
            dist::DistSpec s{*fam, {}};
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                const Value v = arg(i);
                if (v.is_pbox()) throw RuntimeError("distribution parameters must be numbers or intervals");
                s.params.push_back(v.as_interval());
            }
            return dist::make_pbox(s, opt_.steps);
        }
        throw RuntimeError(located("unknown function '" + n + "'", e.span.line, e.span.column), e.span.line, e.span.column);
    }

    Value call_user(const Function& fn, const ast::Expr& e, Frame& f) {
        const ast::Stmt& def = *fn.def;
        if (def.params.size() != e.args.size())
            throw RuntimeError(located("'" + def.name + "' takes " + std::to_string(def.params.size()) + " arguments", e.span.line,
                                       e.span.column),
                               e.span.line, e.span.column);
        if (depth_ >= opt_.max_depth) throw RuntimeError("recursion too deep");
        std::unordered_map<std::string, Value> locals;
        for (std::size_t i = 0; i < def.params.size(); ++i) locals[def.params[i]] = eval(e.args[i], f);
        Frame inner{&locals, fn.path};
        ++depth_;
        std::optional<Value> r;
        try {
            r = exec_block(def.body, inner);
        } catch (...) {
            --depth_;
            throw;
        }
        --depth_;
        return r ? *r : Value(0.0);
    }

    Options opt_;
    FnContext ctx_;
    const Overrides* overrides_ = nullptr;
    std::unordered_map<std::string, Value> globals_;
    std::vector<std::string> order_;
    int depth_ = 0;
};

} // namespace ucc::runtime

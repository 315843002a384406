#pragma once

#include <string>
#include <vector>

namespace ucc::ast {

struct Span {
    int line = 0;
    int column = 0;
};

struct Expr {
    enum class Kind {
        num,     // text = literal as written, value = its double
        name,    // text = identifier
        binop,   // text = "+", "-", "*", "/" or "**"; args = {l, r}
        compare, // text = "<", ">", "<=", ">=", "==" or "==="; args = {l, r}
        call,    // text = callee; args = arguments
        list,    // args = elements
        neg,     // args = {operand}
        depcode, // text = code between quotes, e.g. f or 0.5
    };

    Kind kind = Kind::num;
    std::string text;
    double value = 0.0;
    std::vector<Expr> args;
    Span span;

    /// Structural equality; spans are ignored.
    friend bool operator==(const Expr& a, const Expr& b) {
        return a.kind == b.kind && a.text == b.text && (a.kind != Kind::num || a.value == b.value) && a.args == b.args;
    }

    bool is(Kind k, const char* t) const { return kind == k && text == t; }
};

struct Stmt {
    enum class Kind {
        assign,    // name = exprs[0]
        if_,       // if exprs[0]: body else: orelse
        for_range, // for name in range(exprs...): body, one or two bounds
        for_each,  // for name in exprs[0]: body
        def,       // def name(params): body
        return_,   // return exprs[0]
        expr,      // exprs[0]
    };

    Kind kind = Kind::expr;
    std::string name;
    std::vector<std::string> params;
    std::vector<Expr> exprs;
    std::vector<Stmt> body;
    std::vector<Stmt> orelse;
    Span span;

    friend bool operator==(const Stmt& a, const Stmt& b) {
        return a.kind == b.kind && a.name == b.name && a.params == b.params && a.exprs == b.exprs && a.body == b.body &&
               a.orelse == b.orelse;
    }
};

using Program = std::vector<Stmt>;

inline Expr num(const std::string& text, double value, Span s = {}) {
    Expr e;
    e.kind = Expr::Kind::num;
    e.text = text;
    e.value = value;
    e.span = s;
    return e;
}

inline Expr name(const std::string& n, Span s = {}) {
    Expr e;
    e.kind = Expr::Kind::name;
    e.text = n;
    e.span = s;
    return e;
}

inline Expr node(Expr::Kind k, const std::string& text, std::vector<Expr> args, Span s = {}) {
    Expr e;
    e.kind = k;
    e.text = text;
    e.args = std::move(args);
    e.span = s;
    return e;
}

inline Expr binop(const std::string& op, Expr l, Expr r, Span s = {}) {
    return node(Expr::Kind::binop, op, {std::move(l), std::move(r)}, s);
}

inline Expr call(const std::string& f, std::vector<Expr> args, Span s = {}) {
    return node(Expr::Kind::call, f, std::move(args), s);
}

inline Expr neg(Expr x, Span s = {}) { return node(Expr::Kind::neg, "-", {std::move(x)}, s); }

inline Expr depcode(const std::string& code) { return node(Expr::Kind::depcode, code, {}); }

/// Calls fn on e and every subexpression, parents first.
template <class F>
void walk(const Expr& e, F&& fn) {
    fn(e);
    for (const auto& a : e.args) walk(a, fn);
}

template <class F>
void walk(const std::vector<Stmt>& body, F&& fn) {
    for (const auto& s : body) {
        for (const auto& e : s.exprs) walk(e, fn);
        walk(s.body, fn);
        walk(s.orelse, fn);
    }
}

} // namespace ucc::ast

#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "ucc/frontend/lexer.hpp"

namespace ucc::frontend {

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

    ast::Program program() {
        ast::Program out;
        skip_newlines();
        while (!at(Token::Kind::end)) {
            out.push_back(statement());
            skip_newlines();
        }
        return out;
    }

    ast::Expr expression_only() {
        ast::Expr e = expression();
        skip_newlines();
        if (!at(Token::Kind::end)) fail("unexpected tokens after expression");
        return e;
    }

private:
    const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
    bool at(Token::Kind k) const { return peek().kind == k; }
    bool at_op(const char* s) const { return peek().kind == Token::Kind::op && peek().text == s; }
    bool at_kw(const char* s) const { return peek().kind == Token::Kind::keyword && peek().text == s; }
    const Token& next() { return t_[p_ < t_.size() - 1 ? p_++ : p_]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& tk = peek();
        std::string where = tk.kind == Token::Kind::end ? "end of input" : tk.kind == Token::Kind::newline ? "end of line" : "'" + tk.text + "'";
        throw ParseError(located(msg + " near " + where, tk.span.line, tk.span.column), tk.span.line, tk.span.column);
    }
    void expect_op(const char* s) {
        if (!at_op(s)) fail(std::string("expected '") + s + "'");
        next();
    }
    void expect_kw(const char* s) {
        if (!at_kw(s)) fail(std::string("expected '") + s + "'");
        next();
    }
    std::string expect_name() {
        if (!at(Token::Kind::name)) fail("expected a name");
        return next().text;
    }
    void skip_newlines() {
        while (at(Token::Kind::newline)) next();
    }
    void end_of_statement() {
        if (at(Token::Kind::end) || at(Token::Kind::dedent)) return;
        if (!at(Token::Kind::newline)) fail("expected end of line");
        next();
    }

    std::vector<ast::Stmt> block() {
        expect_op(":");
        if (!at(Token::Kind::newline)) fail("expected a new line after ':'");
        next();
        skip_newlines();
        if (!at(Token::Kind::indent)) fail("expected an indented block");
        next();
        std::vector<ast::Stmt> body;
        skip_newlines();
        while (!at(Token::Kind::dedent) && !at(Token::Kind::end)) {
            body.push_back(statement());
            skip_newlines();
        }
        if (at(Token::Kind::dedent)) next();
        return body;
    }

    ast::Stmt statement() {
        ast::Stmt s;
        s.span = peek().span;
        using K = ast::Stmt::Kind;
        if (at_kw("if")) {
            next();
            s.kind = K::if_;
            s.exprs.push_back(expression());
            s.body = block();
            skip_newlines();
            if (at_kw("else")) {
                next();
                s.orelse = block();
            }
            return s;
        }
        if (at_kw("for")) {
            next();
            s.name = expect_name();
            expect_kw("in");
            if (at(Token::Kind::name) && peek().text == "range" && peek(1).kind == Token::Kind::op && peek(1).text == "(") {
                next();
                next();
                s.kind = K::for_range;
                s.exprs.push_back(expression());
                if (at_op(",")) {
                    next();
                    s.exprs.push_back(expression());
                }
                expect_op(")");
            } else {
                s.kind = K::for_each;
                s.exprs.push_back(expression());
            }
            s.body = block();
            return s;
        }
        if (at_kw("def")) {
            next();
            s.kind = K::def;
            s.name = expect_name();
            expect_op("(");
            if (!at_op(")")) {
                s.params.push_back(expect_name());
                while (at_op(",")) {
                    next();
                    s.params.push_back(expect_name());
                }
            }
            expect_op(")");
            s.body = block();
            return s;
        }
        if (at_kw("return")) {
            next();
            s.kind = K::return_;
            s.exprs.push_back(expression());
            end_of_statement();
            return s;
        }
        if (at(Token::Kind::name) && peek(1).kind == Token::Kind::op && peek(1).text == "=") {
            s.kind = K::assign;
            s.name = next().text;
            next();
            s.exprs.push_back(expression());
            end_of_statement();
            return s;
        }
        if (at(Token::Kind::indent)) fail("unexpected indentation");
        s.kind = K::expr;
        s.exprs.push_back(expression());
        end_of_statement();
        return s;
    }

    ast::Expr expression() {
        ast::Expr l = additive();
        static const char* const cmps[] = {"<", ">", "<=", ">=", "==", "==="};
        for (const char* op : cmps)
            if (at_op(op)) {
                const ast::Span sp = next().span;
                ast::Expr r = additive();
                return ast::node(ast::Expr::Kind::compare, op, {std::move(l), std::move(r)}, sp);
            }
        return l;
    }

    ast::Expr additive() {
        ast::Expr l = multiplicative();
        while (at_op("+") || at_op("-")) {
            const Token& op = next();
            l = ast::binop(op.text, std::move(l), multiplicative(), op.span);
        }
        return l;
    }

    ast::Expr multiplicative() {
        ast::Expr l = unary();
        while (at_op("*") || at_op("/")) {
            const Token& op = next();
            l = ast::binop(op.text, std::move(l), unary(), op.span);
        }
        return l;
    }

    // '**' binds tighter than unary minus: -a**2 is -(a**2); a**-b is allowed.
    ast::Expr unary() {
        if (at_op("-")) {
            const ast::Span sp = next().span;
            return ast::neg(unary(), sp);
        }
        ast::Expr base = atom();
        if (at_op("**")) {
            const ast::Span sp = next().span;
            return ast::binop("**", std::move(base), unary(), sp);
        }
        return base;
    }

    std::vector<ast::Expr> arguments(const char* close) {
        std::vector<ast::Expr> args;
        if (!at_op(close)) {
            args.push_back(expression());
            while (at_op(",")) {
                next();
                args.push_back(expression());
            }
        }
        expect_op(close);
        return args;
    }

    ast::Expr atom() {
        const Token& tk = peek();
        switch (tk.kind) {
        case Token::Kind::number: {
            next();
            return ast::num(tk.text, std::strtod(tk.text.c_str(), nullptr), tk.span);
        }
        case Token::Kind::code: next(); return ast::depcode(tk.text);
        case Token::Kind::name: {
            next();
            if (at_op("(")) {
                next();
                return ast::call(tk.text, arguments(")"), tk.span);
            }
            return ast::name(tk.text, tk.span);
        }
        case Token::Kind::op:
            if (tk.text == "(") {
                next();
                ast::Expr e = expression();
                expect_op(")");
                return e;
            }
            if (tk.text == "[") {
                next();
                return ast::node(ast::Expr::Kind::list, "", arguments("]"), tk.span);
            }
            break;
        default: break;
        }
        fail("expected an expression");
    }

    std::vector<Token> t_;
    std::size_t p_ = 0;
};

inline ast::Program parse_program(const std::string& src) { return Parser(tokenize(src)).program(); }

/// Parses a single expression; `metavars` admits ?x pattern variables.
inline ast::Expr parse_expression(const std::string& src, bool metavars = false) {
    return Parser(tokenize(src, metavars)).expression_only();
}

} // namespace ucc::frontend

#pragma once

#include <stdexcept>
#include <string>

namespace ucc {

/// Base of every error raised by the library. Carries an optional source
/// position (1-based; zero when unknown).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, int line = 0, int column = 0)
        : std::runtime_error(what), message_(what), line_(line), column_(column) {}

    const char* what() const noexcept override { return message_.c_str(); }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

    /// Attaches a source position to an error raised without one.
    void locate(int line, int column) {
        if (line_ > 0 || line <= 0) return;
        line_ = line;
        column_ = column;
        message_ = std::to_string(line) + ":" + std::to_string(column) + ": " + message_;
    }

private:
    std::string message_;
    int line_;
    int column_;
};

#define UCC_DEFINE_ERROR(Name)                                                \
    class Name : public Error {                                               \
    public:                                                                   \
        using Error::Error;                                                   \
    }

// uq-core
UCC_DEFINE_ERROR(DivisionByUncertainZero);
UCC_DEFINE_ERROR(DomainError);
UCC_DEFINE_ERROR(EmptyIntersection);
UCC_DEFINE_ERROR(ArithmeticError);
UCC_DEFINE_ERROR(UnsupportedSupport);
UCC_DEFINE_ERROR(MalformedHedge);

// distributions
UCC_DEFINE_ERROR(InvalidParams);

// spec language
UCC_DEFINE_ERROR(SyntaxError);
UCC_DEFINE_ERROR(DuplicateEntry);
UCC_DEFINE_ERROR(UnknownHedge);
UCC_DEFINE_ERROR(MalformedInterval);

// frontend
UCC_DEFINE_ERROR(LexError);
UCC_DEFINE_ERROR(ParseError);

// compiler
UCC_DEFINE_ERROR(UnknownVariable);

// runtime
UCC_DEFINE_ERROR(RuntimeError);
UCC_DEFINE_ERROR(DunnoBranch);
UCC_DEFINE_ERROR(MissingSampler);

#undef UCC_DEFINE_ERROR

inline std::string located(const std::string& msg, int line, int column) {
    if (line <= 0) return msg;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
}

} // namespace ucc

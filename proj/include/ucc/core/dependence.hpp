#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "ucc/errors.hpp"

namespace ucc {

/// How two uncertain operands are coupled.
class DepKind {
public:
    enum class Tag { frechet, independent, perfect, opposite, equal, rho };

    constexpr DepKind() = default;
    constexpr DepKind(Tag tag) : tag_(tag) {} // NOLINT

    static DepKind correlation(double r) {
        if (!(r >= -1.0 && r <= 1.0)) throw InvalidParams("dependence coefficient outside [-1, 1]");
        DepKind d(Tag::rho);
        d.r_ = r;
        return d;
    }

    static constexpr DepKind frechet() { return Tag::frechet; }
    static constexpr DepKind independent() { return Tag::independent; }
    static constexpr DepKind perfect() { return Tag::perfect; }
    static constexpr DepKind opposite() { return Tag::opposite; }
    static constexpr DepKind equal() { return Tag::equal; }

    Tag tag() const { return tag_; }
    double r() const { return r_; }

    /// Collapses rho(1), rho(-1) and rho(0) onto the named copulas they coincide
    /// with for the implemented (Gaussian) family.
    DepKind canonical() const {
        if (tag_ != Tag::rho) return *this;
        if (r_ >= 1.0) return perfect();
        if (r_ <= -1.0) return opposite();
        if (r_ == 0.0) return independent();
        return *this;
    }

    /// Dependence seen by x and -y (or x and 1/y) when x and y have this one.
    DepKind mirrored() const {
        switch (tag_) {
        case Tag::perfect: return opposite();
        case Tag::opposite: return perfect();
        case Tag::rho: return correlation(-r_);
        default: return *this;
        }
    }

    /// Single-letter code used in compiled programs ('f', 'i', 'p', 'o', 'e');
    /// rho is spelled as its coefficient.
    std::string code() const {
        switch (tag_) {
        case Tag::frechet: return "f";
        case Tag::independent: return "i";
        case Tag::perfect: return "p";
        case Tag::opposite: return "o";
        case Tag::equal: return "e";
        case Tag::rho: break;
        }
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, r_);
        return std::string(buf, res.ptr);
    }

    std::string name() const {
        switch (tag_) {
        case Tag::frechet: return "frechet";
        case Tag::independent: return "independent";
        case Tag::perfect: return "perfect";
        case Tag::opposite: return "opposite";
        case Tag::equal: return "equal";
        case Tag::rho: return code();
        }
        return {};
    }

    /// Accepts long names and single-letter codes.
    static std::optional<DepKind> from_name(const std::string& s) {
        if (s == "f" || s == "frechet") return frechet();
        if (s == "i" || s == "independent") return independent();
        if (s == "p" || s == "perfect") return perfect();
        if (s == "o" || s == "opposite") return opposite();
        if (s == "e" || s == "equal") return equal();
        return std::nullopt;
    }

    friend bool operator==(const DepKind& a, const DepKind& b) {
        return a.tag_ == b.tag_ && (a.tag_ != Tag::rho || a.r_ == b.r_);
    }

private:
    Tag tag_ = Tag::frechet;
    double r_ = 0.0;
};

} // namespace ucc

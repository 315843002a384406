#pragma once

// Exact decimal literals. Numeric text such as "3.56" is kept as an integer
// mantissa and a power-of-ten exponent so that significant-figure intervals
// and hedge bounds can be formed without binary rounding, then converted to
// doubles with outward rounding only at the very end.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ucc/core/rounding.hpp"

namespace ucc {

class Decimal {
public:
    Decimal() = default;
    Decimal(std::int64_t mantissa, int exponent) : mantissa_(mantissa), exponent_(exponent) {}

    /// Parses "12", "-3.560", ".5", "1.5e-3". Returns nullopt for anything
    /// else or when the mantissa does not fit in 18 digits.
    static std::optional<Decimal> parse(std::string_view text) {
        std::size_t i = 0;
        bool negative = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            negative = text[i] == '-';
            ++i;
        }
        std::int64_t m = 0;
        int digits = 0;
        int frac = 0;
        bool seen_point = false;
        bool any = false;
        for (; i < text.size(); ++i) {
            const char c = text[i];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                any = true;
                if (m == 0 && c == '0') {
                    if (seen_point) ++frac;
                    continue;
                }
                if (++digits > 18) return std::nullopt;
                m = m * 10 + (c - '0');
                if (seen_point) ++frac;
            } else if (c == '.' && !seen_point) {
                seen_point = true;
            } else {
                break;
            }
        }
        if (!any) return std::nullopt;
        int exp10 = 0;
        if (i < text.size()) {
            if (text[i] != 'e' && text[i] != 'E') return std::nullopt;
            ++i;
            std::string rest(text.substr(i));
            if (rest.empty()) return std::nullopt;
            char* end = nullptr;
            const long e = std::strtol(rest.c_str(), &end, 10);
            if (*end != '\0' || e > 300 || e < -300) return std::nullopt;
            exp10 = static_cast<int>(e);
        }
        return Decimal(negative ? -m : m, exp10 - frac);
    }

    std::int64_t mantissa() const { return mantissa_; }
    int exponent() const { return exponent_; }

    /// Digits after the decimal point as written ("7.2" -> 1, "1.5e3" -> -2).
    int decimal_places() const { return -exponent_; }

    /// Same value with one more digit of scale (mantissa * 10).
    Decimal rescaled(int new_exponent) const {
        Decimal d = *this;
        while (d.exponent_ > new_exponent) {
            if (__builtin_mul_overflow(d.mantissa_, 10, &d.mantissa_)) throw std::overflow_error("decimal rescale overflows: " + to_string());
            --d.exponent_;
        }
        return d;
    }

    Decimal plus_units(std::int64_t units) const { return Decimal(mantissa_ + units, exponent_); }

    Decimal operator-() const { return Decimal(-mantissa_, exponent_); }

    friend Decimal operator+(const Decimal& a, const Decimal& b) {
        const int e = std::min(a.exponent_, b.exponent_);
        return Decimal(a.rescaled(e).mantissa_ + b.rescaled(e).mantissa_, e);
    }
    friend Decimal operator-(const Decimal& a, const Decimal& b) { return a + (-b); }

    /// Numeric comparison (3.5 and 3.50 compare equal); operator== is textual.
    friend int compare(const Decimal& a, const Decimal& b) {
        const int sa = (a.mantissa_ > 0) - (a.mantissa_ < 0), sb = (b.mantissa_ > 0) - (b.mantissa_ < 0);
        if (sa != sb) return sa < sb ? -1 : 1;
        if (sa == 0) return 0;
        // compare magnitudes by order of magnitude, then digit by digit
        auto digits = [](const Decimal& d, int& magnitude) {
            std::string s = std::to_string(d.mantissa_ < 0 ? -d.mantissa_ : d.mantissa_);
            magnitude = static_cast<int>(s.size()) + d.exponent_;
            while (s.size() > 1 && s.back() == '0') s.pop_back();
            return s;
        };
        int ma = 0, mb = 0;
        std::string da = digits(a, ma), db = digits(b, mb);
        int r = ma != mb ? (ma > mb ? 1 : -1) : 0;
        if (r == 0) {
            const std::size_t n = std::max(da.size(), db.size());
            da.resize(n, '0');
            db.resize(n, '0');
            r = da == db ? 0 : da > db ? 1 : -1;
        }
        return sa * r;
    }
    bool operator==(const Decimal&) const = default;

    bool fits_exactly() const {
        const std::int64_t limit = std::int64_t{1} << 53;
        return mantissa_ > -limit && mantissa_ < limit && exponent_ >= -22 && exponent_ <= 22;
    }

    rounding::Enclosure enclosure() const {
        const auto m = static_cast<double>(mantissa_);
        if (fits_exactly()) {
            if (exponent_ >= 0) return rounding::mul(m, pow10(exponent_));
            return rounding::div(m, pow10(-exponent_));
        }
        const double v = std::strtod(to_string().c_str(), nullptr);
        return {rounding::next_down(v), rounding::next_up(v)};
    }

    double nearest() const { return std::strtod(to_string().c_str(), nullptr); }
    double down() const { return enclosure().down; }
    double up() const { return enclosure().up; }

    /// Plain positional text, always containing a decimal point when the
    /// exponent is negative ("3.555", "70", "0.05").
    std::string to_string() const {
        std::string digits = std::to_string(mantissa_ < 0 ? -mantissa_ : mantissa_);
        std::string out = mantissa_ < 0 ? "-" : "";
        if (exponent_ >= 0) {
            out += digits;
            out.append(static_cast<std::size_t>(exponent_), '0');
            return out;
        }
        const auto frac = static_cast<std::size_t>(-exponent_);
        if (digits.size() <= frac) digits.insert(0, frac - digits.size() + 1, '0');
        out += digits.substr(0, digits.size() - frac);
        out += '.';
        out += digits.substr(digits.size() - frac);
        return out;
    }

private:
    static double pow10(int e) {
        double r = 1.0;
        for (int i = 0; i < e; ++i) r *= 10.0;
        return r;
    }

    std::int64_t mantissa_ = 0;
    int exponent_ = 0;
};

} // namespace ucc

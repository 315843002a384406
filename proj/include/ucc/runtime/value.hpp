#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ucc/core/logical.hpp"
#include "ucc/core/pbox.hpp"
#include "ucc/errors.hpp"
#include "ucc/frontend/ast.hpp"

namespace ucc::runtime {

class Value;

struct List {
    std::vector<Value> items;
};

struct Function {
    const ast::Stmt* def = nullptr;
    std::string path; // dotted name
};

/// A runtime value. Every value carries an identity; plain assignment keeps
/// it, so `c = a` leaves c and a the same object.
class Value {
public:
    using Data = std::variant<double, Interval, PBox, Logical, std::shared_ptr<const List>, Function>;

    Value() : data_(0.0) {}
    Value(double v) : data_(v), id_(fresh_id()) {}                       // NOLINT
    Value(Interval v) : data_(std::move(v)), id_(fresh_id()) {}           // NOLINT
    Value(PBox v) : data_(std::move(v)), id_(fresh_id()) {}               // NOLINT
    Value(Logical v) : data_(std::move(v)), id_(fresh_id()) {}            // NOLINT
    Value(std::vector<Value> items) : data_(std::make_shared<const List>(List{std::move(items)})), id_(fresh_id()) {} // NOLINT
    Value(Function f) : data_(std::move(f)), id_(fresh_id()) {}           // NOLINT

    const Data& data() const { return data_; }
    std::uint64_t id() const { return id_; }
    Value renewed() const {
        Value v = *this;
        v.id_ = fresh_id();
        return v;
    }

    bool is_scalar() const { return std::holds_alternative<double>(data_); }
    bool is_interval() const { return std::holds_alternative<Interval>(data_); }
    bool is_pbox() const { return std::holds_alternative<PBox>(data_); }
    bool is_logical() const { return std::holds_alternative<Logical>(data_); }
    bool is_list() const { return std::holds_alternative<std::shared_ptr<const List>>(data_); }
    bool is_function() const { return std::holds_alternative<Function>(data_); }
    bool is_numeric() const { return is_scalar() || is_interval() || is_pbox(); }
    bool is_uncertain() const { return is_interval() || is_pbox(); }

    double scalar() const { return std::get<double>(data_); }
    const Interval& interval() const { return std::get<Interval>(data_); }
    const PBox& pbox() const { return std::get<PBox>(data_); }
    const Logical& logical() const { return std::get<Logical>(data_); }
    const std::vector<Value>& list() const { return std::get<std::shared_ptr<const List>>(data_)->items; }
    const Function& function() const { return std::get<Function>(data_); }

    const char* kind_name() const {
        switch (data_.index()) {
        case 0: return "scalar";
        case 1: return "interval";
        case 2: return name(pbox().kind());
        case 3: return "logical";
        case 4: return "list";
        default: return "function";
        }
    }

    /// Numeric value widened to an interval (scalars become degenerate).
    Interval as_interval() const {
        if (is_scalar()) return Interval(scalar());
        if (is_interval()) return interval();
        if (is_pbox()) return pbox().support();
        throw RuntimeError(std::string("expected a number, got ") + kind_name());
    }

    PBox as_pbox(std::size_t steps) const {
        if (is_scalar()) return PBox::point(scalar(), steps);
        if (is_interval()) return PBox::from_interval(interval(), steps);
        if (is_pbox()) return pbox().steps() == steps ? pbox() : pbox().resampled(steps);
        throw RuntimeError(std::string("expected a number, got ") + kind_name());
    }

    /// Structural equality of contents (identity is not compared).
    friend bool same_contents(const Value& a, const Value& b) {
        if (a.data_.index() != b.data_.index()) return false;
        if (a.is_list()) {
            if (a.list().size() != b.list().size()) return false;
            for (std::size_t i = 0; i < a.list().size(); ++i)
                if (!same_contents(a.list()[i], b.list()[i])) return false;
            return true;
        }
        if (a.is_function()) return a.function().def == b.function().def;
        if (a.is_logical()) return a.logical() == b.logical() && a.logical().probability() == b.logical().probability();
        if (a.is_scalar()) return a.scalar() == b.scalar() || (a.scalar() != a.scalar() && b.scalar() != b.scalar());
        if (a.is_interval()) return a.interval() == b.interval();
        return a.pbox() == b.pbox();
    }

private:
    static std::uint64_t fresh_id() {
        static std::atomic<std::uint64_t> next{1};
        return next.fetch_add(1, std::memory_order_relaxed);
    }

    Data data_;
    std::uint64_t id_ = 0;
};

} // namespace ucc::runtime

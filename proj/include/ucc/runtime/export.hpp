#pragma once

#include <map>
#include <string>

#include "json.hpp"
#include "ucc/runtime/evaluator.hpp"

namespace ucc::runtime {

inline nlohmann::ordered_json number_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

inline nlohmann::ordered_json to_json(const Value& v) {
    nlohmann::ordered_json j;
    j["kind"] = v.kind_name();
    if (v.is_scalar()) {
        j["value"] = number_json(v.scalar());
        j["bounds"] = {number_json(v.scalar()), number_json(v.scalar())};
    } else if (v.is_interval()) {
        j["bounds"] = {number_json(v.interval().lo()), number_json(v.interval().hi())};
    } else if (v.is_pbox()) {
        const PBox& p = v.pbox();
        j["bounds"] = {number_json(p.support().lo()), number_json(p.support().hi())};
        j["mean"] = {number_json(p.mean().lo()), number_json(p.mean().hi())};
        j["steps"] = p.steps();
        if (!p.ensemble().empty()) j["ensemble"] = p.ensemble();
        auto arr = [](const std::vector<double>& xs) {
            nlohmann::ordered_json a = nlohmann::ordered_json::array();
            for (double x : xs) a.push_back(number_json(x));
            return a;
        };
        j["left"] = arr(p.left());
        j["right"] = arr(p.right());
    } else if (v.is_logical()) {
        j["value"] = v.logical().name();
        if (const auto& pr = v.logical().probability()) j["probability"] = {number_json(pr->lo()), number_json(pr->hi())};
    } else if (v.is_list()) {
        j["items"] = nlohmann::ordered_json::array();
        for (const Value& x : v.list()) j["items"].push_back(to_json(x));
    } else {
        j["name"] = v.function().path;
    }
    return j;
}

/// Result export for a finished run: globals in assignment order, printed
/// lines and diagnostics.
inline nlohmann::ordered_json export_run(const Evaluator& ev, const std::map<std::string, std::string>& ensembles = {},
                                         const std::vector<std::string>& extra_notes = {}) {
    nlohmann::ordered_json j;
    j["variables"] = nlohmann::ordered_json::object();
    for (const auto& n : ev.order()) {
        const Value& v = *ev.global(n);
        if (v.is_function()) continue;
        auto vj = to_json(v);
        if (const auto it = ensembles.find(n); it != ensembles.end()) vj["ensemble"] = it->second;
        j["variables"][n] = vj;
    }
    j["output"] = ev.output;
    std::vector<std::string> notes = extra_notes;
    notes.insert(notes.end(), ev.notes.begin(), ev.notes.end());
    if (ev.raw_uncertain_ops)
        notes.push_back(std::to_string(ev.raw_uncertain_ops) +
                        " plain operator(s) applied to uncertain values were evaluated with no dependence assumption");
    j["notes"] = notes;
    return j;
}

} // namespace ucc::runtime

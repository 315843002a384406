#pragma once

#include <string>
#include <vector>

#include "ucc/compiler/analysis.hpp"
#include "ucc/compiler/annotate.hpp"
#include "ucc/compiler/rewrite.hpp"
#include "ucc/compiler/substitute.hpp"
#include "ucc/frontend/emit.hpp"
#include "ucc/frontend/parser.hpp"

namespace ucc::compiler {

struct CompileOptions {
    bool auto_intervals = false;
    bool rewrites = true;
    spec::DunnoPolicy dunno = spec::DunnoPolicy::always;
};

struct Compiled {
    ast::Program program;
    RepeatReport repeats; // found before any rewriting
    std::vector<std::string> notes;
    std::vector<std::string> header; // comment lines placed above the source

    std::string source() const {
        std::string out;
        for (const auto& h : header) out += "# " + h + "\n";
        return out + frontend::emit_source(program);
    }
};

namespace detail {

inline spec::DependenceMatrix with_copies(const ast::Program& p, const spec::SpecFile& sf) {
    spec::DependenceMatrix m = sf.dependence;
    if (sf.copy_policy.empty()) return m;
    for (const auto& s : frontend::find_assignments(p)) {
        const auto it = sf.copy_policy.find(s.name);
        if (it == sf.copy_policy.end() || it->second != spec::CopyPolicy::perfect || s.kind != frontend::AssignmentSite::Kind::copy) continue;
        m.set(s.name, frontend::qualify(s.scope, s.expr->text), DepKind::perfect());
    }
    return m;
}

} // namespace detail

/// The whole pipeline: substitution, optional auto intervals, repeated-variable
/// detection, rewrite directory, operator annotation.
inline Compiled compile(const ast::Program& source, const spec::SpecFile& sf, const CompileOptions& opt = {}) {
    Compiled out;
    out.program = source;
    const spec::DependenceMatrix deps = detail::with_copies(source, sf);
    auto sub = substitute_assignments(out.program, sf);
    out.notes = sub.notes;
    if (opt.auto_intervals) {
        auto n = auto_intervalize(out.program, sf.constants);
        out.notes.insert(out.notes.end(), n.begin(), n.end());
    }
    for (const auto& l : sf.lints) out.notes.push_back(l);
    for (const auto& e : sf.entries)
        if (e.ensemble) out.header.push_back("ensemble " + e.name + ": " + *e.ensemble);

    {
        const Analysis a(out.program, deps);
        const Rewriter rw(a);
        out.repeats = rw.detect(out.program);
        if (opt.rewrites) {
            auto n = rw.apply(out.program);
            out.notes.insert(out.notes.end(), n.begin(), n.end());
        }
        for (const auto& e : out.repeats.entries)
            if (e.across_lines) out.notes.push_back("line " + std::to_string(e.line) + ": " + e.target + " repeats uncertain variables from earlier lines");
    }
    const Analysis a(out.program, deps);
    rewrite_operators(out.program, a, opt.dunno, sf.dunno_policy);
    return out;
}

inline Compiled compile_text(const std::string& program, const std::string& spec_text, const CompileOptions& opt = {}) {
    return compile(frontend::parse_program(program), spec::parse_spec(spec_text), opt);
}

} // namespace ucc::compiler

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ucc/compiler/compiler.hpp"
#include "ucc/runtime/export.hpp"
#include "ucc/runtime/montecarlo.hpp"
#include "ucc/spec/feasibility.hpp"

namespace ucc::cli {

enum Exit { ok = 0, failed = 1, usage = 2 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write '" + path + "'");
}

struct Config {
    std::string command;
    std::string input;
    std::string spec;
    std::string out;
    std::string dunno;
    std::size_t steps = kDefaultSteps;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::string event;
    std::string target;
    bool strict_sqrt = false;
    bool no_rewrite = false;
    unsigned threads = 0;
};

namespace detail {

inline spec::SpecFile load_spec(const Config& c) { return c.spec.empty() ? spec::SpecFile{} : spec::parse_spec(read_file(c.spec)); }

inline void emit(const Config& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) out << text;
    else write_file(c.out, text);
}

inline void print_notes(const std::vector<std::string>& notes, std::ostream& err) {
    for (const auto& n : notes) err << "note: " << n << "\n";
}

inline compiler::CompileOptions compile_options(const Config& c, bool auto_mode) {
    compiler::CompileOptions o;
    o.auto_intervals = auto_mode;
    o.rewrites = !c.no_rewrite;
    if (!c.dunno.empty()) o.dunno = *spec::dunno_policy_from_name(c.dunno);
    return o;
}

inline int do_compile(const Config& c, bool auto_mode, std::ostream& out, std::ostream& err) {
    const auto program = frontend::parse_program(read_file(c.input));
    const auto sf = auto_mode && c.spec.empty() ? spec::SpecFile{} : load_spec(c);
    const auto compiled = compiler::compile(program, sf, compile_options(c, auto_mode));
    print_notes(compiled.notes, err);
    emit(c, compiled.source(), out);
    return ok;
}

inline runtime::Options run_options(const Config& c) {
    runtime::Options o;
    o.steps = c.steps;
    o.sqrt_policy = c.strict_sqrt ? SqrtPolicy::strict : SqrtPolicy::clamp;
    if (c.dunno == "always") o.raw_dunno = runtime::RawDunno::always;
    if (c.dunno == "sometimes") o.raw_dunno = runtime::RawDunno::sometimes;
    return o;
}

inline int do_run(const Config& c, std::ostream& out, std::ostream& err) {
    ast::Program program = frontend::parse_program(read_file(c.input));
    std::vector<std::string> notes;
    std::map<std::string, std::string> ensembles;
    if (!c.spec.empty()) {
        const auto sf = load_spec(c);
        auto compiled = compiler::compile(program, sf, compile_options(c, false));
        program = std::move(compiled.program);
        notes = compiled.notes;
        for (const auto& e : sf.entries)
            if (e.ensemble) ensembles[e.name] = *e.ensemble;
    }
    runtime::Evaluator ev(run_options(c));
    ev.run(program);
    print_notes(notes, err);
    auto j = runtime::export_run(ev, ensembles, notes);
    if (!c.event.empty()) j["event"] = {{"expression", c.event}, {"value", runtime::to_json(ev.evaluate(frontend::parse_expression(c.event)))}};
    emit(c, j.dump(2) + "\n", out);
    return ok;
}

inline int do_check(const Config& c, std::ostream& out) {
    const auto sf = spec::parse_spec(read_file(c.input));
    const auto report = spec::check_feasibility(sf.dependence);
    std::string text;
    for (const auto& l : sf.lints) text += "lint: " + l + "\n";
    emit(c, text + spec::to_string(report), out);
    return report.feasible ? ok : failed;
}

inline int do_repeats(const Config& c, std::ostream& out) {
    const auto program = frontend::parse_program(read_file(c.input));
    auto o = compile_options(c, c.spec.empty());
    o.rewrites = false;
    const auto compiled = compiler::compile(program, c.spec.empty() ? spec::SpecFile{} : load_spec(c), o);
    emit(c, compiler::to_string(compiled.repeats), out);
    return ok;
}

inline int do_mc(const Config& c, std::ostream& out, std::ostream& err) {
    const auto program = frontend::parse_program(read_file(c.input));
    runtime::McConfig cfg;
    cfg.trials = c.trials;
    cfg.seed = c.seed;
    cfg.event = c.event;
    cfg.target = c.target;
    cfg.threads = c.threads;
    cfg.options = run_options(c);
    if (!c.spec.empty()) {
        cfg.inputs = runtime::inputs_from_spec(program, load_spec(c));
    } else {
        // without a spec every float literal is read from its significant figures
        for (const auto& s : compiler::auto_sites(program)) {
            runtime::McInput in;
            in.name = s.literal->text + " at line " + std::to_string(s.literal->span.line);
            in.sites.push_back(s.literal);
            in.sampler = runtime::UniformSampler{Interval(s.lo.down(), s.hi.up())};
            cfg.inputs.push_back(std::move(in));
        }
    }
    const auto r = runtime::mc_run(program, cfg);
    for (const auto& w : r.warnings) err << w << "\n";
    runtime::McResult quiet = r;
    quiet.warnings.clear();
    std::string text = runtime::to_string(quiet);
    if (c.out.empty()) {
        out << text << "\n" << runtime::histogram_csv(r.histogram);
    } else {
        out << text;
        write_file(c.out, runtime::histogram_csv(r.histogram));
    }
    return ok;
}

} // namespace detail

/// Parses argv and runs one command. Output goes to `out`, diagnostics to `err`.
inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"ucc: uncertainty compiler for MiniScript"};
    app.require_subcommand(1);
    Config c;

    auto steps_check = CLI::Range(std::size_t{2}, std::size_t{1} << 20);
    auto add_common = [&](CLI::App* s, bool with_spec) {
        s->add_option("input", c.input, "input file")->required();
        if (with_spec) s->add_option("--spec", c.spec, "uncertainty spec file");
        s->add_option("--out", c.out, "write the result to this file");
    };
    auto dunno_check = CLI::IsMember({"always", "sometimes", "error"});

    auto* compile = app.add_subcommand("compile", "write the uncertainty-enriched program");
    add_common(compile, true);
    compile->add_option("--dunno", c.dunno, "policy for uncertain conditions")->check(dunno_check);
    compile->add_flag("--no-rewrite", c.no_rewrite, "skip the rewrite directory");

    auto* run = app.add_subcommand("run", "evaluate a program and print its result export");
    add_common(run, true);
    run->add_option("--dunno", c.dunno, "policy for uncertain conditions")->check(dunno_check);
    run->add_option("--steps", c.steps, "p-box discretization levels")->check(steps_check);
    run->add_flag("--strict-sqrt", c.strict_sqrt, "raise on sqrt of possibly negative values");
    run->add_option("--event", c.event, "expression evaluated after the run, e.g. \"y >= 4.5\"");
    run->add_flag("--no-rewrite", c.no_rewrite, "skip the rewrite directory");

    auto* autoc = app.add_subcommand("auto", "compile with intervals read from significant figures");
    add_common(autoc, true);
    autoc->add_option("--dunno", c.dunno, "policy for uncertain conditions")->check(dunno_check);
    autoc->add_flag("--no-rewrite", c.no_rewrite, "skip the rewrite directory");

    auto* check = app.add_subcommand("check-deps", "check a spec's dependence matrix for feasibility");
    add_common(check, false);

    auto* mc = app.add_subcommand("mc", "Monte Carlo run of the plain program");
    add_common(mc, true);
    mc->add_option("--trials", c.trials, "number of trials")->check(CLI::PositiveNumber);
    mc->add_option("--seed", c.seed, "master seed");
    mc->add_option("--event", c.event, "event expression, e.g. \"y >= 4.5\"");
    mc->add_option("--target", c.target, "variable to summarise (default: last assigned)");
    mc->add_option("--threads", c.threads, "worker threads (default: all cores)");
    mc->add_option("--steps", c.steps, "p-box discretization levels")->check(steps_check);
    mc->add_flag("--strict-sqrt", c.strict_sqrt, "raise on sqrt of negative values");

    auto* repeats = app.add_subcommand("repeats", "report repeated uncertain variables");
    add_common(repeats, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return usage;
    }

    try {
        if (compile->parsed()) return detail::do_compile(c, false, out, err);
        if (autoc->parsed()) return detail::do_compile(c, true, out, err);
        if (run->parsed()) return detail::do_run(c, out, err);
        if (check->parsed()) return detail::do_check(c, out);
        if (mc->parsed()) return detail::do_mc(c, out, err);
        if (repeats->parsed()) return detail::do_repeats(c, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return failed;
    }
    return usage;
}

} // namespace ucc::cli

#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification or numerical failure, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lhp/lhp.hpp"

namespace lhp {

namespace cli {

using nlohmann::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

inline std::string canonical_name(std::string s) {
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

inline json box_json(const Box& b) { return {b.xmin, b.xmax, b.ymin, b.ymax}; }

inline json class_json(const ClassRecord& c) {
    json basis = json::array(), hams = json::array();
    for (const auto& X : c.basis) basis.push_back(X.label());
    for (const auto& h : c.hamiltonians) hams.push_back(h.label());
    json j{{"id", c.id.str()},
           {"algebra", c.algebra_name},
           {"lh_algebra", c.lh_algebra_name},
           {"dim", c.dim()},
           {"basis", basis},
           {"symplectic_density", c.omega_density.label()},
           {"hamiltonians", hams},
           {"central", c.has_central},
           {"lie_brackets", c.structure.describe()},
           {"poisson_brackets", c.lh_brackets.describe()},
           {"sample_box", box_json(c.region.box)}};
    try {
        const CasimirSpec s = casimir_spec(c.id);
        j["casimir"] = s.expr.str();
        j["casimir_single_copy"] = s.single_copy ? json(*s.single_copy) : json("undefined");
    } catch (const Error& e) {
        j["casimir"] = nullptr;
        j["casimir_note"] = e.what();
    }
    return j;
}

inline json verdict_json(const Sl2Verdict& v) {
    json j{{"class", to_string(v.cls)},
           {"invariant_sign", v.invariant_sign},
           {"scale", v.scale},
           {"fit_residual", v.fit_residual},
           {"casimir_residual", v.casimir_residual},
           {"det_threshold", v.det_threshold},
           {"wedge_threshold", v.wedge_threshold},
           {"tolerance", 1e-9}};
    json d = json::array();
    for (const auto& s : v.diagnostics)
        d.push_back({{"x", s.point.x}, {"y", s.point.y}, {"det", s.det}, {"normalized_det", s.normalized_det},
                     {"rank", s.rank}});
    j["samples"] = d;
    return j;
}

inline json trajectory_json(const Trajectory& tr) { return {{"meta", tr.meta}, {"m", tr.m}, {"t", tr.t}, {"x", tr.x}}; }

inline void write_trajectory(std::ostream& os, const Trajectory& tr, const std::string& format) {
    if (format == "csv") write_csv(os, tr);
    else if (format == "jsonl") write_jsonl(os, tr);
    else os << trajectory_json(tr).dump(2) << '\n';
}

/// Writes to `path`, or to `fallback` when the path is empty or "-".
template <class F>
void with_output(const std::string& path, std::ostream& fallback, F&& body) {
    if (path.empty() || path == "-") {
        body(fallback);
        return;
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    body(f);
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

/// k=v with v read as JSON when it parses, as a string otherwise.
inline json parse_params(const std::vector<std::string>& items) {
    json p = json::object();
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("parameter '" + item + "' is not of the form k=v");
        const std::string key = item.substr(0, eq), text = item.substr(eq + 1);
        json v = json::parse(text, nullptr, false);
        p[key] = v.is_discarded() ? json(text) : v;
    }
    return p;
}

inline std::vector<Point> initial_points(const std::vector<double>& x0, const std::vector<double>& y0) {
    if (x0.size() != y0.size()) throw ConfigError("--x0 and --y0 need the same number of values");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < x0.size(); ++i) pts.push_back({x0[i], y0[i]});
    return pts;
}

inline StepControl step_control(double dt, double tol) {
    if (dt > 0.0) return StepControl::fixed(dt);
    return StepControl::adaptive(tol > 0.0 ? tol : 1e-10);
}

struct Options {
    std::uint64_t seed = default_seed;
    std::string format = "csv";
    std::string out;

    std::string class_id;
    std::string show_id;
    int samples = 200;

    std::string system;
    std::vector<std::string> params;
    int classify_samples = 100;

    std::string config;
    std::vector<double> x0, y0;
    double t0 = 0.0, t1 = 1.0, dt = 0.0, tol = 0.0;
    int points = 101;

    int copies = 2, order = 2;
    std::vector<std::size_t> swap;
    double drift_tol = 1e-6;

    std::vector<std::string> particulars;
    std::string check;
    double check_tol = 1e-5;
};

inline int cmd_catalog_list(const Options& o, std::ostream& out) {
    if (o.format == "json") {
        json a = json::array();
        for (ClassKind k : all_class_kinds()) a.push_back(class_json(get_class(k)));
        out << a.dump(2) << '\n';
        return exit_ok;
    }
    for (ClassKind k : all_class_kinds()) {
        const ClassRecord c = get_class(k);
        out << c.id.str() << "\t" << c.algebra_name << "\t" << c.lh_algebra_name << "\n";
    }
    return exit_ok;
}

inline int cmd_catalog_show(const Options& o, std::ostream& out) {
    out << class_json(get_class(o.show_id)).dump(2) << '\n';
    return exit_ok;
}

inline json verify_one(const ClassId& id, int samples, std::uint64_t seed, bool& ok) {
    const ClassRecord c = get_class(id);
    const ClassReport rep = verify_class(c.id, samples, seed);
    const auto pts = class_samples(c, samples, seed);
    const double jacobi = jacobi_pointwise_residual(c.basis, c.structure, pts);
    json j{{"class", rep.id},
           {"samples", rep.samples},
           {"seed", seed},
           {"tolerance", rep.tolerance},
           {"structure_residual", rep.max_structure_residual},
           {"hamiltonianity_residual", rep.max_hamiltonianity_residual},
           {"correspondence_residual", rep.max_correspondence_residual},
           {"bracket_residual", rep.max_bracket_residual},
           {"jacobi_residual", jacobi}};
    bool pass = rep.passes() && jacobi < rep.tolerance;
    if (c.has_central) {
        const double without = bracket_table_residual(symplectic_form(c), c.hamiltonians, c.lh_brackets, pts, false);
        j["bracket_residual_without_h0"] = without;
        pass = pass && without > rep.tolerance;
    }
    j["pass"] = pass;
    ok = ok && pass;
    return j;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
    bool ok = true;
    json j;
    if (o.class_id.empty()) {
        j = json::array();
        for (ClassKind k : all_class_kinds()) j.push_back(verify_one(get_class(k).id, o.samples, o.seed, ok));
    } else {
        j = verify_one(parse_class_id(o.class_id), o.samples, o.seed, ok);
    }
    out << j.dump(2) << '\n';
    return ok ? exit_ok : exit_failed;
}

inline int cmd_classify(const Options& o, std::ostream& out) {
    const LHSystem sys = build_system(canonical_name(o.system), parse_params(o.params));
    const auto fields = sys.algebra_fields();
    if (fields.size() != 3) {
        out << json{{"system", sys.name}, {"error", "classifier needs a three-field sl(2) algebra"},
                    {"algebra_dim", fields.size()}}
                   .dump(2)
            << '\n';
        return exit_failed;
    }
    const auto pts = sample_points(sys.region, o.classify_samples, o.seed);
    try {
        json j = verdict_json(classify_sl2(fields[0], fields[1], fields[2], pts));
        j["system"] = sys.name;
        j["params"] = sys.params;
        if (sys.class_hint) j["expected"] = sys.class_hint->str();
        out << j.dump(2) << '\n';
        return exit_ok;
    } catch (const AlgebraError& e) {
        out << json{{"system", sys.name}, {"error", e.what()}, {"reason", to_string(e.reason())}}.dump(2) << '\n';
        return exit_failed;
    }
}

inline LHSystem load_system(const Options& o) {
    if (o.config.empty()) throw ConfigError("--config is required");
    return build_system_from_json(read_json_file(o.config));
}

inline int cmd_simulate(const Options& o, std::ostream& out) {
    if (!(o.t1 > o.t0)) throw ConfigError("simulate needs t1 > t0");
    if (o.points < 2) throw ConfigError("--points must be at least 2");
    const LHSystem sys = load_system(o);
    const auto init = initial_points(o.x0, o.y0);
    if (init.empty()) throw ConfigError("--x0 and --y0 are required");
    const Trajectory tr = integrate(sys, static_cast<int>(init.size()), flatten(init), o.t0, o.t1,
                                    step_control(o.dt, o.tol), uniform_grid(o.t0, o.t1, o.points));
    with_output(o.out, out, [&](std::ostream& os) { write_trajectory(os, tr, o.format); });
    return exit_ok;
}

inline int cmd_invariants(const Options& o, std::ostream& out) {
    if (!(o.t1 > o.t0)) throw ConfigError("invariants needs t1 > t0");
    if (o.copies < 1 || o.order < 1 || o.order > o.copies) throw ConfigError("need 1 <= order <= copies");
    if (!o.swap.empty() && (o.swap.size() != 2 || o.swap[0] == o.swap[1] || o.swap[0] >= static_cast<std::size_t>(o.copies) ||
                            o.swap[1] >= static_cast<std::size_t>(o.copies)))
        throw ConfigError("--swap needs two distinct copy indices below --copies");
    const LHSystem sys = load_system(o);
    const InvariantModel model = invariant_model(sys);
    std::vector<Point> init = initial_points(o.x0, o.y0);
    if (init.empty()) {
        Rng rng = Rng(o.seed).split(11);
        SampleRegion reg = sys.region;
        if (model.chart) reg.accept = intersect(reg.accept, model.chart->domain());
        init = sample_points(reg, o.copies, rng);
    }
    if (static_cast<int>(init.size()) != o.copies) throw ConfigError("initial points must match --copies");
    const double tol = o.tol > 0.0 ? o.tol : 1e-10;
    const Trajectory tr = integrate(sys, o.copies, flatten(init), o.t0, o.t1, step_control(o.dt, tol),
                                    uniform_grid(o.t0, o.t1, o.points));
    std::vector<int> subset(static_cast<std::size_t>(o.copies));
    for (int c = 0; c < o.copies; ++c) subset[static_cast<std::size_t>(c)] = c;
    if (!o.swap.empty()) std::swap(subset[o.swap[0]], subset[o.swap[1]]);
    subset.resize(static_cast<std::size_t>(o.order));
    const DriftReport d = drift_report(model, tr, subset);
    json pts = json::array();
    for (const Point& p : init) pts.push_back({p.x, p.y});
    const double measured = d.relative ? d.max_rel_drift : d.max_abs_drift;
    const bool pass = measured < o.drift_tol;
    const json j{{"system", sys.name},
                 {"invariant", model.description},
                 {"casimir", model.spec.expr.str()},
                 {"copies", o.copies},
                 {"order", o.order},
                 {"subset", subset},
                 {"initial_points", pts},
                 {"seed", o.seed},
                 {"integrator_tol", tol},
                 {"t0", o.t0},
                 {"t1", o.t1},
                 {"rows", d.rows},
                 {"initial_value", d.initial},
                 {"max_abs_drift", d.max_abs_drift},
                 {"max_rel_drift", d.max_rel_drift},
                 {"relative", d.relative},
                 {"drift_tolerance", o.drift_tol},
                 {"pass", pass}};
    with_output(o.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    return pass ? exit_ok : exit_failed;
}

inline int cmd_superpose(const Options& o, std::ostream& out, std::ostream& err) {
    const LHSystem sys = load_system(o);
    const ClassId id = system_rule_class(sys);
    const int need = particulars_needed(id);
    if (static_cast<int>(o.particulars.size()) != need)
        throw ConfigError(id.str() + " rule needs " + std::to_string(need) + " particular solution files");
    if (o.x0.size() != 1 || o.y0.size() != 1) throw ConfigError("--x0 and --y0 take one value each");
    std::vector<Trajectory> parts;
    for (const auto& f : o.particulars) {
        Trajectory tr = read_csv_file(f);
        if (tr.m != 1) throw ConfigError(f + ": particular solution files hold a single copy");
        parts.push_back(std::move(tr));
    }
    const Point g0{o.x0[0], o.y0[0]};
    const Trajectory gen = reconstruct_system(sys, parts, g0);
    with_output(o.out, out, [&](std::ostream& os) { write_trajectory(os, gen, o.format); });
    if (o.check.empty()) return exit_ok;
    if (o.check != "direct") throw ConfigError("--check accepts only 'direct'");
    const double tol = o.tol > 0.0 ? o.tol : 1e-9;
    const Trajectory direct = integrate(sys, 1, {g0.x, g0.y}, gen.t.front(), gen.t.back(), step_control(o.dt, tol),
                                        gen.t);
    double e = 0.0;
    for (std::size_t i = 0; i < gen.size(); ++i) {
        const auto row = direct.state_at(gen.t[i]);
        e = std::max(e, std::hypot(gen.x[i][0] - row[0], gen.x[i][1] - row[1]));
    }
    const bool pass = e < o.check_tol;
    const json j{{"class", id.str()}, {"max_abs_error", e}, {"integrator_tol", tol}, {"tolerance", o.check_tol},
                 {"pass", pass}};
    (o.out.empty() || o.out == "-" ? err : out) << j.dump() << '\n';
    return pass ? exit_ok : exit_failed;
}

inline int cmd_selftest(const Options& o, std::ostream& out) {
    bool ok = true;
    run_acceptance(o.seed, [&](const CriterionResult& r) {
        out << r.line() << std::endl;
        ok = ok && r.pass;
    });
    out << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
    return ok ? exit_ok : exit_failed;
}

}  // namespace cli

/// Runs the CLI on `args` (without the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    using namespace cli;
    Options o;
    CLI::App app{"Lie-Hamilton systems on the plane", "lhp"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");
    std::uint64_t seed_flag = default_seed;
    app.add_option("--seed", seed_flag, "Random seed (LHP_SEED overrides)")->capture_default_str();
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "jsonl", "json"}))
        ->capture_default_str();

    auto* catalog = app.add_subcommand("catalog", "Browse the class catalog");
    catalog->require_subcommand(1);
    auto* list = catalog->add_subcommand("list", "List the twelve classes");
    auto* show = catalog->add_subcommand("show", "Print one class record as JSON");
    show->add_option("id", o.show_id, "Class id, e.g. P2 or I14A:r=2")->required();

    auto* verify = app.add_subcommand("verify", "Verify catalog classes");
    verify->add_option("--class", o.class_id, "Class id (all classes when omitted)");
    verify->add_option("--samples", o.samples, "Sample count")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--seed", seed_flag, "Random seed");

    auto* classify = app.add_subcommand("classify", "Classify the sl(2) algebra of a system");
    classify->add_option("--system", o.system, "System name")->required();
    classify->add_option("--param", o.params, "Parameter k=v (repeatable)");
    classify->add_option("--samples", o.classify_samples, "Sample count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    classify->add_option("--seed", seed_flag, "Random seed");

    auto add_run_opts = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "System JSON config")->required()->check(CLI::ExistingFile);
        sub->add_option("--t0", o.t0, "Start time")->capture_default_str();
        sub->add_option("--t1", o.t1, "End time")->capture_default_str();
        auto* dt = sub->add_option("--dt", o.dt, "Fixed RK4 step");
        auto* tol = sub->add_option("--tol", o.tol, "Adaptive RKF45 tolerance");
        dt->excludes(tol);
        sub->add_option("--points", o.points, "Output grid size")->capture_default_str();
        sub->add_option("--out", o.out, "Output path (stdout when omitted)");
        sub->add_option("--seed", seed_flag, "Random seed");
    };

    auto* simulate = app.add_subcommand("simulate", "Integrate a system (several copies allowed)");
    add_run_opts(simulate);
    simulate->add_option("--x0", o.x0, "Initial x of each copy")->expected(1, -1);
    simulate->add_option("--y0", o.y0, "Initial y of each copy")->expected(1, -1);

    auto* invariants = app.add_subcommand("invariants", "Drift report of a coproduct invariant");
    add_run_opts(invariants);
    invariants->add_option("--copies", o.copies, "Number of copies")->capture_default_str();
    invariants->add_option("--order", o.order, "Invariant order k")->capture_default_str();
    invariants->add_option("--swap", o.swap, "Swap copies i j (0-based)")->expected(2);
    invariants->add_option("--x0", o.x0, "Initial x of each copy (random when omitted)")->expected(1, -1);
    invariants->add_option("--y0", o.y0, "Initial y of each copy")->expected(1, -1);
    invariants->add_option("--drift-tol", o.drift_tol, "Drift tolerance")->capture_default_str();

    auto* superpose = app.add_subcommand("superpose", "Rebuild a general solution from particular ones");
    superpose->add_option("--config", o.config, "System JSON config")->required()->check(CLI::ExistingFile);
    superpose->add_option("--particulars", o.particulars, "Particular solution CSV files")
        ->required()
        ->expected(1, -1)
        ->check(CLI::ExistingFile);
    superpose->add_option("--x0", o.x0, "Initial x of the general solution")->required();
    superpose->add_option("--y0", o.y0, "Initial y of the general solution")->required();
    superpose->add_option("--out", o.out, "Output path (stdout when omitted)");
    superpose->add_option("--check", o.check, "Compare against direct integration ('direct')");
    superpose->add_option("--tol", o.tol, "Integrator tolerance for --check");
    superpose->add_option("--dt", o.dt, "Fixed step for --check");
    superpose->add_option("--check-tol", o.check_tol, "Error tolerance for --check")->capture_default_str();

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    selftest->add_option("--seed", seed_flag, "Random seed");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "lhp: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }
    o.seed = resolve_seed(seed_flag);

    try {
        if (list->parsed()) return cmd_catalog_list(o, out);
        if (show->parsed()) return cmd_catalog_show(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (classify->parsed()) return cmd_classify(o, out);
        if (simulate->parsed()) return cmd_simulate(o, out);
        if (invariants->parsed()) return cmd_invariants(o, out);
        if (superpose->parsed()) return cmd_superpose(o, out, err);
        if (selftest->parsed()) return cmd_selftest(o, out);
    } catch (const ConfigError& e) {
        err << "lhp: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    } catch (const IntegrationError& e) {
        err << "lhp: " << e.what() << " (t = " << e.time() << ")\n";
        return exit_failed;
    } catch (const DegenerateError& e) {
        err << "lhp: " << e.what() << " (t = " << e.time() << ")\n";
        return exit_failed;
    } catch (const Error& e) {
        err << "lhp: " << e.what() << '\n';
        return exit_failed;
    }
    err << app.help();
    return exit_usage;
}

}  // namespace lhp

#pragma once

// Acceptance criteria: each returns a pass flag and a one-line summary of the measured values.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lhp/catalog.hpp"
#include "lhp/charts.hpp"
#include "lhp/coalgebra.hpp"
#include "lhp/errors.hpp"
#include "lhp/geometry.hpp"
#include "lhp/hamiltonian.hpp"
#include "lhp/prolong.hpp"
#include "lhp/sl2class.hpp"
#include "lhp/superpose.hpp"
#include "lhp/systems.hpp"

namespace lhp {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;

    std::string line() const {
        std::ostringstream os;
        os << (pass ? "PASS" : "FAIL") << "  C" << id << " " << name << ": " << detail << " [" << std::fixed
           << std::setprecision(2) << seconds << " s]";
        return os.str();
    }
};

namespace acceptance {

inline std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Default-parameter ids of all twelve classes.
inline std::vector<ClassId> default_ids() {
    std::vector<ClassId> ids;
    for (ClassKind k : all_class_kinds()) ids.push_back(get_class(k).id);
    return ids;
}

inline CriterionResult catalog_fidelity(std::uint64_t seed) {
    CriterionResult r{1, "catalog fidelity"};
    double worst = 0.0;
    int passed = 0;
    std::string failed;
    for (const ClassId& id : default_ids()) {
        const ClassReport rep = verify_class(id, 200, seed);
        worst = std::max({worst, rep.max_structure_residual, rep.max_hamiltonianity_residual,
                          rep.max_correspondence_residual, rep.max_bracket_residual});
        if (rep.passes()) ++passed;
        else failed += " " + rep.id;
    }
    r.pass = passed == 12;
    r.detail = std::to_string(passed) + "/12 classes, max residual " + sci(worst) + " (tol 1e-9)" +
               (failed.empty() ? "" : "; failed:" + failed);
    return r;
}

inline CriterionResult bracket_tables(std::uint64_t seed) {
    CriterionResult r{2, "bracket tables"};
    std::ostringstream os;
    double worst = 0.0;
    auto record = [&](const std::string& label, double v) {
        worst = std::max(worst, v);
        os << label << " " << sci(v) << "; ";
    };

    BracketTable xa(3);
    xa.set(0, 1, -1, 1.0).set(0, 2, 1, 1.0).set(1, 2, 0, -1.0);
    const ClassRecord p1 = get_class(ClassKind::P1);
    record("iso(2)", bracket_table_residual(symplectic_form(p1), p1.hamiltonians, xa, class_samples(p1, 100, seed)));

    for (double n : {2.0, 3.0}) {
        const LHSystem ber = build_system("complex_bernoulli", {{"n", n}});
        const SymplecticForm w{ber.omega_density, ber.domain};
        const auto pts = sample_points(ber.region, 100, seed);
        BracketTable za(3);
        za.set(0, 1, 2, -(n - 1.0)).set(0, 2, 1, n - 1.0).set(1, 2, -1, 1.0);
        record("Bernoulli n=" + std::to_string(static_cast<int>(n)),
               bracket_table_residual(w, ber.hamiltonians, za, pts));
        const InvariantModel relabeled = invariant_model(ber);
        record("relabeled n=" + std::to_string(static_cast<int>(n)),
               bracket_table_residual(w, relabeled.hamiltonians, xa, pts));
    }

    BracketTable tp(5);
    tp.set(0, 1, -1, 1.0).set(0, 2, 0, -1.0).set(0, 4, 1, -1.0);
    tp.set(1, 2, 1, 1.0).set(1, 3, 0, -1.0);
    tp.set(2, 3, 3, 2.0).set(2, 4, 4, -2.0).set(3, 4, 2, 1.0);
    const ClassRecord p5 = get_class(ClassKind::P5);
    record("two-photon", bracket_table_residual(symplectic_form(p5), p5.hamiltonians, tp, class_samples(p5, 100, seed)));

    BracketTable h2(2);
    h2.set(0, 1, 1, -1.0);
    const ClassRecord i14 = get_class("I14A:r=1");
    record("h2", bracket_table_residual(symplectic_form(i14), i14.hamiltonians, h2, class_samples(i14, 100, seed)));

    BracketTable sl2(3);
    sl2.set(0, 1, 0, -1.0).set(0, 2, 1, -2.0).set(1, 2, 2, -1.0);
    for (ClassKind k : {ClassKind::P2, ClassKind::I4, ClassKind::I5}) {
        const ClassRecord c = get_class(k);
        record("sl(2) " + to_string(k),
               bracket_table_residual(symplectic_form(c), c.hamiltonians, sl2, class_samples(c, 100, seed)));
    }
    r.pass = worst < 1e-9;
    r.detail = os.str() + "max " + sci(worst) + " (tol 1e-9)";
    return r;
}

struct ClassifierCase {
    std::string label;
    std::vector<VectorField> triple;
    SampleRegion region;
    Sl2Class expected;
};

inline std::vector<ClassifierCase> classifier_cases() {
    std::vector<ClassifierCase> cases;
    auto add = [&](const std::string& label, const LHSystem& s, Sl2Class expected) {
        cases.push_back({label, {s.fields[0], s.fields[1], s.fields[2]}, s.region, expected});
    };
    for (auto [c, e] : {std::pair{-1.0, Sl2Class::I4}, {0.0, Sl2Class::I5}, {1.0, Sl2Class::P2}}) {
        add("Milne-Pinney c=" + std::to_string(static_cast<int>(c)), build_system("milne_pinney", {{"c", c}}), e);
    }
    for (auto [c, e] : {std::pair{-1.0, Sl2Class::I4}, {0.0, Sl2Class::I5}, {1.0, Sl2Class::P2}}) {
        add("Kummer-Schwarz c=" + std::to_string(static_cast<int>(c)), build_system("kummer_schwarz", {{"c", c}}), e);
    }
    for (auto [i2, e] : {std::pair{-1.0, Sl2Class::P2}, {0.0, Sl2Class::I5}, {1.0, Sl2Class::I4}}) {
        add("Cayley-Klein iota2=" + std::to_string(static_cast<int>(i2)),
            build_system("cayley_klein", {{"iota2", i2}}), e);
    }
    for (auto [c0, e] : {std::pair{0.0, Sl2Class::I5}, {1.0, Sl2Class::I4}}) {
        add("diffusion c0=" + std::to_string(static_cast<int>(c0)), build_system("diffusion_riccati", {{"c0", c0}}),
            e);
    }
    add("coupled Riccati", build_system("coupled_riccati"), Sl2Class::I4);
    cases.push_back({"{d/dx, x d/dx, x^2 d/dx}",
                     {VectorField("d/dx", [](auto, auto) { return vec(1.0, 0.0); }),
                      VectorField("x d/dx", [](auto x, auto) { return vec(x, 0.0); }),
                      VectorField("x^2 d/dx", [](auto x, auto) { return vec(x * x, 0.0); })},
                     {{-3.0, 3.0, -3.0, 3.0}, {}},
                     Sl2Class::I3});
    return cases;
}

inline CriterionResult classifier_matrix(std::uint64_t seed) {
    CriterionResult r{3, "classifier matrix"};
    int ok = 0;
    double slowest = 0.0;
    std::string wrong;
    const auto cases = classifier_cases();
    for (const auto& c : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string got;
        try {
            got = to_string(classify_sl2(c.triple[0], c.triple[1], c.triple[2], sample_points(c.region, 100, seed)).cls);
        } catch (const Error& e) {
            got = std::string("error: ") + e.what();
        }
        const double dt = seconds_since(t0);
        slowest = std::max(slowest, dt);
        if (got == to_string(c.expected) && dt < 1.0) ++ok;
        else wrong += " " + c.label + " -> " + got + ";";
    }
    r.pass = ok == static_cast<int>(cases.size());
    r.detail = std::to_string(ok) + "/" + std::to_string(cases.size()) + " cases match, slowest " + sci(slowest) +
               " s (limit 1 s)" + (wrong.empty() ? "" : ";" + wrong);
    return r;
}

inline CriterionResult casimir_invariance(std::uint64_t seed) {
    CriterionResult r{4, "Casimir tensor invariance"};
    double worst = 0.0;
    int classified = 0;
    for (const auto& c : classifier_cases()) {
        const auto pts = sample_points(c.region, 100, seed);
        const SymTensor2 R = casimir_tensor(c.triple[0], c.triple[1], c.triple[2]);
        worst = std::max(worst, casimir_invariance_residual(c.triple, R, pts));
        ++classified;
    }
    const LHSystem mp = build_system("milne_pinney", {{"c", 1.0}});
    Rng rng = Rng(seed).split(4);
    int kept = 0;
    std::string verdicts;
    for (int trial = 0; trial < 10; ++trial) {
        const ShearDiffeo phi = ShearDiffeo::random(rng, 0.05);
        std::vector<VectorField> pushed;
        for (int i = 0; i < 3; ++i) pushed.push_back(pushforward(mp.fields[static_cast<std::size_t>(i)], phi));
        std::vector<Point> pts;
        for (const Point& p : sample_points(mp.region, 100, rng)) {
            const auto q = phi.forward(p.x, p.y);
            pts.push_back({q.x, q.y});
        }
        try {
            const Sl2Verdict v = classify_sl2(pushed[0], pushed[1], pushed[2], pts);
            worst = std::max(worst, v.casimir_residual);
            if (v.cls == Sl2Class::P2) ++kept;
            else verdicts += " " + to_string(v.cls);
        } catch (const Error& e) {
            verdicts += std::string(" error: ") + e.what();
        }
    }
    r.pass = worst < 1e-9 && kept == 10;
    r.detail = std::to_string(classified) + " triples plus 10 pushed Milne-Pinney triples, max |L_X R| " + sci(worst) +
               " (tol 1e-9); verdict P2 kept in " + std::to_string(kept) + "/10 diffeomorphism trials" + verdicts;
    return r;
}

inline CriterionResult ideal_constructions(std::uint64_t seed) {
    CriterionResult r{5, "bivectors from ideals"};
    std::ostringstream os;
    double worst = 0.0;
    bool ok = true;
    auto unit_case = [&](const std::string& text) {
        const ClassRecord c = get_class(text);
        const auto pts = class_samples(c, 100, seed);
        const Bivector2 L = bivector_from_ideal(c.basis, {0, 1}, pts);
        double dev = 0.0;
        for (const Point& p : pts) dev = std::max(dev, std::abs(L.lambda(p) - 1.0));
        const double inv = check_trivial_representation(c.basis, L, pts);
        worst = std::max({worst, dev, inv});
        os << c.id.str() << " ok; ";
    };
    try {
        for (const char* t : {"P1", "P5", "I8", "I14B:r=2", "I16:r=1"}) unit_case(t);
        const ClassRecord i16 = get_class("I16:r=2");
        const Bivector2 unit{ScalarField("1", [](auto, auto) { return 1.0; }), {}};
        const double inv16 = check_trivial_representation(i16.basis, unit, class_samples(i16, 100, seed));
        worst = std::max(worst, inv16);
        os << "I16:r=2 trivial rep " << sci(inv16) << "; ";
        for (double n : {2.0, 3.0}) {
            const LHSystem ber = build_system("complex_bernoulli", {{"n", n}});
            const auto basis = ber.algebra_fields();
            const auto pts = sample_points(ber.region, 100, seed);
            const Bivector2 L = bivector_from_ideal(basis, {1, 2}, pts);
            double dev = 0.0;
            for (const Point& p : pts)
                dev = std::max(dev, std::abs(L.lambda(p) - std::pow(p.x, 2.0 * n - 1.0)) /
                                        std::pow(p.x, 2.0 * n - 1.0));
            const double inv = check_trivial_representation(basis, L, pts);
            worst = std::max({worst, dev, inv});
            os << "Bernoulli n=" << n << " lambda=r^" << 2 * n - 1 << " ok; ";
        }
    } catch (const Error& e) {
        ok = false;
        os << "error: " << e.what() << "; ";
    }
    const std::vector<VectorField> i19{
        VectorField("d/dx", [](auto, auto) { return vec(1.0, 0.0); }),
        VectorField("d/dy", [](auto, auto) { return vec(0.0, 1.0); }),
        VectorField("x d/dy", [](auto x, auto) { return vec(0.0, x); }),
        VectorField("2x d/dx + y d/dy", [](auto x, auto y) { return vec(2.0 * x, y); }),
        VectorField("x^2 d/dx + xy d/dy", [](auto x, auto y) { return vec(x * x, x * y); })};
    bool rejected = false;
    try {
        bivector_from_ideal(i19, {1, 2}, sample_points(SampleRegion{{-3.0, 3.0, -3.0, 3.0}, {}}, 100, seed));
    } catch (const AlgebraError& e) {
        rejected = e.reason() == AlgebraError::Reason::wedge_vanishes &&
                   std::string(e.what()).find("I∧I = 0") != std::string::npos;
    }
    os << (rejected ? "I19 rejected (I^I = 0); " : "I19 NOT rejected; ");
    r.pass = ok && rejected && worst < 1e-9;
    r.detail = os.str() + "max residual " + sci(worst) + " (tol 1e-9)";
    return r;
}

/// Closed forms of the coproduct invariants, written over copy coordinates.
struct ClosedForm {
    std::string cls;
    int k;
    std::function<double(const std::vector<Point>&)> f;
};

inline std::vector<ClosedForm> closed_forms() {
    auto sq = [](double v) { return v * v; };
    return {
        {"P1", 2, [=](const auto& q) { return 0.5 * (sq(q[0].x - q[1].x) + sq(q[0].y - q[1].y)); }},
        {"P2", 2, [=](const auto& q) { return (sq(q[0].x - q[1].x) + sq(q[0].y + q[1].y)) / (q[0].y * q[1].y); }},
        {"P3", 2,
         [=](const auto& q) {
             return -(sq(q[0].x - q[1].x) + sq(q[0].y - q[1].y)) /
                    ((1.0 + sq(q[0].x) + sq(q[0].y)) * (1.0 + sq(q[1].x) + sq(q[1].y)));
         }},
        {"P5", 3, [=](const auto& q) { return sq(triangle_det(q[0], q[1], q[2])); }},
        {"I4", 2,
         [](const auto& q) {
             return -(q[1].x - q[0].y) * (q[0].x - q[1].y) / ((q[0].x - q[0].y) * (q[1].x - q[1].y));
         }},
        {"I5", 2, [=](const auto& q) { return sq(q[0].x - q[1].x) / sq(2.0 * q[0].y * q[1].y); }},
        {"I8", 2, [](const auto& q) { return (q[0].x - q[1].x) * (q[0].y - q[1].y); }},
        {"I14A:r=2", 2, [](const auto& q) { return -2.0 * (1.0 + std::cosh(q[0].x - q[1].x)); }},
        {"I14B:r=2", 2, [=](const auto& q) { return -sq(q[0].x - q[1].x); }},
        {"I16:r=2", 3,
         [](const auto& q) {
             const double a = q[0].x, b = q[1].x, c = q[2].x;
             const double rad = a * a + b * b + c * c - a * b - a * c - b * c;
             return (a + b - 2.0 * c) * (a + c - 2.0 * b) * (b + c - 2.0 * a) /
                    (54.0 * std::numbers::sqrt2 * std::pow(rad, 1.5));
         }},
    };
}

inline CriterionResult table2_engine(std::uint64_t seed) {
    CriterionResult r{6, "coproduct invariants"};
    Rng rng = Rng(seed).split(6);
    double worst_rel = 0.0;
    for (const auto& cf : closed_forms()) {
        const ClassRecord c = get_class(cf.cls);
        const CasimirSpec spec = casimir_spec(c.id);
        int done = 0;
        while (done < 100) {
            const auto q = sample_points(c.region, cf.k, rng);
            const double expect = cf.f(q);
            if (!(std::abs(expect) > 1e-6)) continue;
            worst_rel = std::max(worst_rel, std::abs(coproduct_invariant(spec, c, q) - expect) / std::abs(expect));
            ++done;
        }
    }

    const std::vector<std::pair<std::string, double>> singles{
        {"P1", 0.0}, {"P2", 1.0}, {"P3", 0.0},  {"P5", 0.0},        {"I4", -0.25},
        {"I5", 0.0}, {"I8", 0.0}, {"I14A:r=2", -1.0}, {"I14B:r=2", 0.0}};
    double worst_single = 0.0;
    for (const auto& [text, value] : singles) {
        const ClassRecord c = get_class(text);
        const CasimirSpec spec = casimir_spec(c.id);
        for (const Point& p : sample_points(c.region, 100, rng)) {
            worst_single = std::max(worst_single, std::abs(coproduct_invariant(spec, c, {p}) - value));
            if (text == "P5") {
                const Point p2 = sample_points(c.region, 1, rng)[0];
                worst_single = std::max(worst_single, std::abs(coproduct_invariant(spec, c, {p, p2})));
            }
        }
        if (!spec.single_copy || *spec.single_copy != value) worst_single = std::max(worst_single, 1.0);
    }

    double worst_add = 0.0;
    for (const char* text : {"P1", "I8"}) {
        const ClassRecord c = get_class(text);
        const InvariantModel m = invariant_model(c);
        for (int t = 0; t < 100; ++t) {
            const auto q = sample_points(c.region, 3, rng);
            const double lhs = m.evaluate(q);
            const double rhs =
                m.evaluate({q[0], q[1]}) + permuted_invariant(m, q, 2, 1, 2) + permuted_invariant(m, q, 2, 0, 2);
            worst_add = std::max(worst_add, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    {
        const ClassRecord c = get_class(ClassKind::P5);
        const InvariantModel m = invariant_model(c);
        for (int t = 0; t < 100; ++t) {
            const auto q = sample_points(c.region, 4, rng);
            const double lhs = m.evaluate(q);
            const double rhs = m.evaluate({q[0], q[1], q[2]}) + permuted_invariant(m, q, 3, 2, 3) +
                               permuted_invariant(m, q, 3, 1, 3) + permuted_invariant(m, q, 3, 0, 3);
            worst_add = std::max(worst_add, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    r.pass = worst_rel < 1e-9 && worst_single < 1e-9 && worst_add < 1e-9;
    r.detail = "10 closed forms max rel err " + sci(worst_rel) + ", single-copy constants max err " +
               sci(worst_single) + ", additivity max err " + sci(worst_add) + " (tol 1e-9)";
    return r;
}

/// Random coefficient signal: const + trig on even trials, quadratic polynomial on odd ones.
inline Signal trial_signal(Rng& rng, double amp, int trial) {
    return trial % 2 == 0 ? random_trig_signal(rng, amp) : random_poly_signal(rng, amp);
}

struct TrialSystem {
    std::string label;
    std::function<LHSystem(Rng&, int)> make;
    int copies;
};

inline std::vector<TrialSystem> conservation_systems() {
    auto canonical = [](const std::string& cls, int dim, double amp) {
        return [cls, dim, amp](Rng& rng, int trial) {
            CoeffMap m;
            for (int i = 1; i <= dim; ++i) m["b" + std::to_string(i)] = trial_signal(rng, amp, trial);
            return build_system("lh_class", {{"class", cls}}, m);
        };
    };
    return {
        {"P1", canonical("P1", 3, 1.0), 2},
        {"I8", canonical("I8", 3, 0.5), 2},
        {"P5 quadratic_hamiltonian",
         [](Rng& rng, int trial) {
             CoeffMap m;
             for (const char* k : {"alpha", "beta", "gamma", "delta", "epsilon"}) m[k] = trial_signal(rng, 0.5, trial);
             return build_system("quadratic_hamiltonian", {}, m);
         },
         3},
        {"Bernoulli a1R=0",
         [](Rng& rng, int trial) {
             CoeffMap m;
             for (const char* k : {"a1I", "a2R", "a2I"}) m[k] = trial_signal(rng, 0.5, trial);
             return build_system("complex_bernoulli", {{"n", trial % 2 == 0 ? 2.0 : 3.0}}, m);
         },
         2},
        {"I14A canonical via chart", canonical("I14A:r=1", 2, 0.3), 2},
        {"P2 canonical", canonical("P2", 3, 0.3), 2},
        {"I4 canonical", canonical("I4", 3, 0.3), 2},
    };
}

inline CriterionResult conservation(std::uint64_t seed) {
    CriterionResult r{7, "conservation"};
    std::ostringstream os;
    bool ok = true;
    const auto systems = conservation_systems();
    for (std::size_t si = 0; si < systems.size(); ++si) {
        const auto& ts = systems[si];
        double worst = 0.0;
        int good = 0, redraws = 0;
        std::string err;
        for (int trial = 0; trial < 10; ++trial) {
            for (int attempt = 0;; ++attempt) {
                Rng rng = Rng(seed).split(7000 + 100 * si + static_cast<std::uint64_t>(trial) * 7919 + attempt);
                const LHSystem sys = ts.make(rng, trial);
                const InvariantModel model = invariant_model(sys);
                std::vector<Point> init;
                SampleRegion reg = sys.region;
                if (model.chart) reg.accept = intersect(reg.accept, model.chart->domain());
                init = sample_points(reg, ts.copies, rng);
                try {
                    const Trajectory tr = integrate(sys, ts.copies, flatten(init), 0.0, 5.0,
                                                    StepControl::adaptive(1e-10), uniform_grid(0.0, 5.0, 200));
                    const DriftReport d = drift_report(model, tr, first_copies(ts.copies));
                    worst = std::max(worst, d.max_rel_drift);
                    if (d.max_rel_drift < 1e-6) ++good;
                    break;
                } catch (const IntegrationError& e) {
                    if (attempt >= 20) {
                        err = e.what();
                        break;
                    }
                    ++redraws;
                } catch (const DomainError& e) {
                    if (attempt >= 20) {
                        err = e.what();
                        break;
                    }
                    ++redraws;
                }
            }
        }
        if (good != 10) ok = false;
        os << ts.label << " " << good << "/10 max " << sci(worst);
        if (redraws) os << " (" << redraws << " redraws after domain exit)";
        if (!err.empty()) os << " error: " << err;
        os << "; ";
    }
    r.pass = ok;
    r.detail = os.str() + "rel drift tol 1e-6 at integrator tol 1e-10";
    return r;
}

struct SuperposeCase {
    std::string label;
    ClassId cls;
    std::string system_class;  // lh_class parameter, or empty for quadratic_hamiltonian
    int dim;
    double amp;
};

inline LHSystem superpose_system(const SuperposeCase& sc, Rng& rng, int trial) {
    CoeffMap m;
    if (sc.system_class.empty()) {
        for (const char* k : {"alpha", "beta", "gamma", "delta", "epsilon"}) m[k] = trial_signal(rng, sc.amp, trial);
        return build_system("quadratic_hamiltonian", {}, m);
    }
    for (int i = 1; i <= sc.dim; ++i) m["b" + std::to_string(i)] = trial_signal(rng, sc.amp, trial);
    return build_system("lh_class", {{"class", sc.system_class}}, m);
}

inline CriterionResult superposition(std::uint64_t seed) {
    CriterionResult r{8, "superposition"};
    std::ostringstream os;
    bool ok = true;
    const std::vector<SuperposeCase> cases{{"P1", ClassId{ClassKind::P1, 0, {}}, "P1", 3, 1.0},
                                           {"I8", ClassId{ClassKind::I8, 0, {}}, "I8", 3, 0.5},
                                           {"P5", ClassId{ClassKind::P5, 0, {}}, "", 5, 0.5},
                                           {"I14A r=1 via I8 chart", parse_class_id("I14A:r=1"), "I14A:r=1", 2, 0.3}};
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const auto& sc = cases[ci];
        const int need = particulars_needed(sc.cls);
        double worst = 0.0, worst_static = 0.0;
        int good = 0, redraws = 0;
        std::string err;
        for (int trial = 0; trial < 20; ++trial) {
            for (int attempt = 0;; ++attempt) {
                Rng rng = Rng(seed).split(8000 + 100 * ci + static_cast<std::uint64_t>(trial) * 7919 + attempt);
                const LHSystem sys = superpose_system(sc, rng, trial);
                const auto pts = sample_points(sys.region, need + 1, rng);
                const std::vector<Point> parts(pts.begin() + 1, pts.end());
                try {
                    const RuleConstants k0 = extract_constants(sc.cls, pts[0], parts);
                    worst_static = std::max(worst_static, detail::dist(apply_rule(k0, parts), pts[0]));
                    const Trajectory tr = integrate(sys, need + 1, flatten(pts), 0.0, 5.0, StepControl::adaptive(1e-9),
                                                    uniform_grid(0.0, 5.0, 500));
                    std::vector<Trajectory> ps;
                    for (int c = 1; c <= need; ++c) ps.push_back(tr.copy(c));
                    const Trajectory g = reconstruct(sc.cls, ps, pts[0]);
                    double e = 0.0;
                    for (std::size_t i = 0; i < g.size(); ++i)
                        e = std::max(e, std::hypot(g.x[i][0] - tr.x[i][0], g.x[i][1] - tr.x[i][1]));
                    worst = std::max(worst, e);
                    if (e < 1e-5) ++good;
                    break;
                } catch (const Error& e) {
                    const bool retry = dynamic_cast<const IntegrationError*>(&e) != nullptr ||
                                       dynamic_cast<const DegenerateError*>(&e) != nullptr;
                    if (!retry || attempt >= 20) {
                        err = e.what();
                        break;
                    }
                    ++redraws;
                }
            }
        }
        if (good != 20 || worst_static > 1e-9) ok = false;
        os << sc.label << " " << good << "/20 max " << sci(worst) << " static " << sci(worst_static);
        if (redraws) os << " (" << redraws << " redraws after domain exit or degeneracy)";
        if (!err.empty()) os << " error: " << err;
        os << "; ";
    }
    const double heron = std::abs(heron_area(3.0, 4.0, 5.0) - 6.0);
    if (heron > 1e-12) ok = false;
    r.pass = ok;
    r.detail = os.str() + "Heron(3,4,5) err " + sci(heron) + "; tol 1e-5 dynamic, 1e-9 static, 1e-12 Heron";
    return r;
}

inline CriterionResult chart_fidelity(std::uint64_t seed) {
    CriterionResult r{9, "chart fidelity"};
    std::ostringstream os;
    double worst = 0.0, worst_rt = 0.0;
    auto run = [&](const std::string& label, const Chart& ch, const std::vector<VectorField>& src,
                   const std::vector<VectorField>& dst, const std::vector<std::vector<double>>& mixing,
                   const SampleRegion& region) {
        SampleRegion reg = region;
        reg.accept = intersect(reg.accept, ch.domain());
        const auto pts = sample_points(reg, 100, seed);
        const double v = verify_chart(ch, src, dst, mixing, pts);
        const double rt = chart_roundtrip_error(ch, pts);
        worst = std::max(worst, v);
        worst_rt = std::max(worst_rt, rt);
        os << label << " " << sci(v) << "/" << sci(rt) << "; ";
    };
    const auto i4 = get_class(ClassKind::I4).basis;
    const auto i5 = get_class(ClassKind::I5).basis;
    const auto i8 = get_class(ClassKind::I8).basis;
    const Box upper{-3.0, 3.0, 0.2, 3.0};
    run("split_complex", split_complex_chart(), build_system("cayley_klein", {{"iota2", 1.0}}).fields, i4,
        identity_mixing(3), {upper, {}});
    run("dual", dual_chart(), build_system("cayley_klein", {{"iota2", 0.0}}).fields, i5, identity_mixing(3),
        {upper, {}});
    run("diffusion_i4", diffusion_chart(), build_system("diffusion_riccati", {{"c0", 1.0}}).fields, i4,
        identity_mixing(3, 2.0), {upper, {}});
    for (double n : {2.0, 3.0}) {
        const LHSystem ber = build_system("complex_bernoulli", {{"n", n}}, {{"a1R", Signal::constant(1.0)}});
        run("bernoulli_h2 n=" + std::to_string(static_cast<int>(n)), bernoulli_chart(n), ber.algebra_fields(),
            get_class("I14A:r=1").basis, ber.canonical->mixing,
            {{0.5, 2.0, 0.0, std::numbers::pi / (n - 1.0)}, {}});
    }
    run("i14a_to_i8", i14a_to_i8_chart(), get_class("I14A:r=1").basis, {i8[0], i8[2]}, {{0.0, -1.0}, {1.0, 0.0}},
        {{-2.0, 2.0, -2.0, 2.0}, {}});
    r.pass = worst < 1e-9 && worst_rt < 1e-12;
    r.detail = os.str() + "max pushforward " + sci(worst) + " (tol 1e-9), max round trip " + sci(worst_rt) +
               " (tol 1e-12)";
    return r;
}

inline CriterionResult negative_controls(std::uint64_t seed) {
    CriterionResult r{10, "negative controls"};
    std::ostringstream os;
    bool ok = true;

    const LHSystem vcb = build_system("complex_bernoulli", {{"n", 3.0}},
                                      {{"a1R", Signal::constant(1.0)},
                                       {"a1I", Signal::constant(0.5)},
                                       {"a2R", Signal::constant(1.0)},
                                       {"a2I", Signal::constant(-0.5)}});
    const auto pts = sample_points(vcb.region, 100, seed);
    const FitResult fit = fit_structure_constants(vcb.fields, pts);
    const double dev = fit.constants.max_abs_difference(vcb.structure);
    const CompatibilityReport comp = compatible_symplectic_check(vcb.fields, pts);
    bool refused = false;
    try {
        classify_sl2(vcb.fields[0], vcb.fields[2], vcb.fields[3], pts);
    } catch (const AlgebraError& e) {
        refused = e.reason() == AlgebraError::Reason::not_sl2;
    }
    const bool vcb_ok = vcb.status == SystemStatus::not_lh && !vcb.class_hint && dev < 1e-9 && !comp.compatible && refused;
    ok = ok && vcb_ok;
    os << "complex Bernoulli a1R!=0: " << to_string(vcb.status) << ", bracket fit dev " << sci(dev)
       << ", compatibility residual " << sci(comp.residual) << (refused ? ", classifier refuses" : ", NOT refused")
       << "; ";

    const LHSystem lv = build_system("lotka_volterra", {{"a", 1.0}, {"b", 1.0}});
    const CompatibilityReport lvc = compatible_symplectic_check(lv.fields, sample_points(lv.region, 100, seed));
    const bool lv_ok = lv.status == SystemStatus::lie_not_lh && !lvc.compatible;
    ok = ok && lv_ok;
    os << "Lotka-Volterra a=b=1: " << to_string(lv.status) << ", compatibility residual " << sci(lvc.residual) << "; ";

    const LHSystem sr = build_system("second_order_riccati");
    const auto sp = sample_points(sr.region, 100, seed);
    std::vector<VectorField> four(sr.fields.begin(), sr.fields.begin() + 4);
    double res4 = 0.0;
    std::string note4;
    try {
        res4 = fit_structure_constants(four, sp).residual;
    } catch (const AlgebraError& e) {
        res4 = std::numeric_limits<double>::infinity();
        note4 = std::string(" (") + e.what() + ")";
    }
    const double res5 = fit_structure_constants(sr.fields, sp).residual;
    const bool sr_ok = res4 > 1e-6 && res5 < 1e-9;
    ok = ok && sr_ok;
    os << "Y1..Y4 closure residual " << sci(res4) << note4 << ", Y1..Y5 " << sci(res5);
    r.pass = ok;
    r.detail = os.str();
    return r;
}

}  // namespace acceptance

using CriterionFn = std::function<CriterionResult(std::uint64_t)>;

inline const std::vector<CriterionFn>& acceptance_criteria() {
    static const std::vector<CriterionFn> all{
        acceptance::catalog_fidelity,   acceptance::bracket_tables, acceptance::classifier_matrix,
        acceptance::casimir_invariance, acceptance::ideal_constructions, acceptance::table2_engine,
        acceptance::conservation,       acceptance::superposition, acceptance::chart_fidelity,
        acceptance::negative_controls};
    return all;
}

/// Runs every criterion; errors inside a criterion count as failures.
inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed = default_seed,
                                                   const std::function<void(const CriterionResult&)>& report = {}) {
    std::vector<CriterionResult> out;
    int id = 0;
    for (const auto& fn : acceptance_criteria()) {
        ++id;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fn(seed);
        } catch (const std::exception& e) {
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.pass = false;
            r.detail = std::string("unexpected error: ") + e.what();
        }
        r.seconds = acceptance::seconds_since(t0);
        if (report) report(r);
        out.push_back(r);
    }
    return out;
}

}  // namespace lhp

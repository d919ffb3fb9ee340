// Library tour: verify a class, classify a system, check an invariant, rebuild a solution.
#include <cmath>
#include <cstdio>
#include <iostream>

#include "lhp/lhp.hpp"

using namespace lhp;

int main() {
    const ClassReport rep = verify_class(parse_class_id("P5"));
    std::printf("P5 verification: %s (bracket residual %.2e)\n", rep.passes() ? "pass" : "fail",
                rep.max_bracket_residual);

    for (double c : {-1.0, 0.0, 2.0}) {
        const LHSystem mp = build_system("milne_pinney", {{"c", c}});
        const auto f = mp.algebra_fields();
        const Sl2Verdict v = classify_sl2(f[0], f[1], f[2], sample_points(mp.region, 100, 1));
        std::printf("Milne-Pinney c=%g: %s\n", c, to_string(v.cls).c_str());
    }

    Rng rng(2024);
    const LHSystem ho = build_system(
        "quadratic_hamiltonian", nlohmann::json::object(),
        {{"alpha", random_trig_signal(rng, 1.0)}, {"beta", random_trig_signal(rng, 1.0)}, {"gamma", Signal::constant(1.0)}});
    const Trajectory three = integrate(ho, 3, {0.0, 0.0, 1.0, 0.0, 0.0, 1.0}, 0.0, 10.0, StepControl::adaptive(1e-10),
                                       uniform_grid(0.0, 10.0, 500));
    const DriftReport d = drift_report(invariant_model(ho), three, first_copies(3));
    std::printf("%s on 3 copies: F = %.6f, relative drift %.2e\n", ho.name.c_str(), d.initial, d.max_rel_drift);

    const LHSystem p1 = build_system("lh_class", {{"class", "P1"}},
                                     {{"b1", random_trig_signal(rng, 1.0)},
                                      {"b2", random_trig_signal(rng, 1.0)},
                                      {"b3", Signal::constant(0.5)}});
    const Trajectory joint = integrate(p1, 3, {0.1, 0.2, 1.0, -0.5, 0.7, 1.1}, 0.0, 5.0, StepControl::adaptive(1e-10),
                                       uniform_grid(0.0, 5.0, 200));
    const Trajectory general = reconstruct_system(p1, {joint.copy(1), joint.copy(2)}, {0.1, 0.2});
    double err = 0.0;
    for (std::size_t i = 0; i < general.size(); ++i)
        err = std::max(err, std::hypot(general.x[i][0] - joint.x[i][0], general.x[i][1] - joint.x[i][1]));
    std::printf("P1 superposition vs direct integration: max error %.2e (branch %s)\n", err,
                general.meta["branch"].get<std::string>().c_str());
    return 0;
}

#include <iostream>

#include "lhp/acceptance.hpp"

int main() {
    int failed = 0;
    lhp::run_acceptance(lhp::resolve_seed(lhp::default_seed), [&](const lhp::CriterionResult& r) {
        std::cout << r.line() << std::endl;
        if (!r.pass) ++failed;
    });
    std::cout << (failed == 0 ? "acceptance: all 10 criteria passed" : "acceptance: failures present") << '\n';
    return failed == 0 ? 0 : 1;
}

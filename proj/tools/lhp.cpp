#include <string>
#include <vector>

#include "lhp/cli.hpp"

int main(int argc, char** argv) {
    return lhp::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}

#pragma once

// Cross-module invariant suite run by `purcell check`.

#include <string>
#include <vector>

namespace purcell {

struct InvariantReport {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct SelfCheckOptions {
    // Name of an invariant whose tolerance is made impossible to meet (test hook).
    std::string inject_fault;
};

std::vector<InvariantReport> run_self_check(const SelfCheckOptions& options = {});

// Names accepted by SelfCheckOptions::inject_fault.
std::vector<std::string> self_check_names();

} // namespace purcell

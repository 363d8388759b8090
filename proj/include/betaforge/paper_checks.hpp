#pragma once

#include <string>
#include <vector>

#include "betaforge/representability.hpp"

namespace betaforge::paper {

struct CheckResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

struct CheckOptions {
    unsigned long max_n = kDefaultMaxIterations;
    /// Test-harness hook: perturbs one matrix entry so the fidelity check must
    /// fail. Exists to prove the suite can go red.
    bool corrupt_matrix = false;
};

/// Runs the full battery of desk-scale verification checks. Every check is
/// exact; expected total runtime is well under a minute.
std::vector<CheckResult> run_paper_checks(const CheckOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

} // namespace betaforge::paper

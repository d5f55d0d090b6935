#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ghs::acceptance {

/// One measured quantity against its bound.
struct Check {
    std::string what;
    double value = 0.0;
    std::string bound;
    bool pass = false;
};

struct CriterionResult {
    std::string id;
    std::string title;
    std::vector<Check> checks;
    std::string error;  // set when the scenario itself threw

    bool pass() const;
    std::string line() const;  // "PASS A4 ..." / "FAIL A1 ..." with every check
};

std::vector<std::string> criterion_ids();

// Unknown ids throw std::invalid_argument.
CriterionResult run_criterion(const std::string& id);

/// Runs every criterion in order, handing each result to `report` as it lands.
std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& report = {});

}  // namespace ghs::acceptance

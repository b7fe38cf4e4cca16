#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rhls {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 0;  ///< seed of every randomized check
};

/// Suite names: closed-forms (1-4), degenerate (5), virial (6), regions (7), positivity (8),
/// flow (9), toy (10), pm-log (11), properties (12) and all.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs the criteria of a suite in order. Throws std::invalid_argument for an unknown name.
std::vector<CriterionResult> run_suite(const std::string& name, const AcceptanceOptions& opts = {});

/// One line per criterion: PASS/FAIL, id, name, runtime and detail.
void print_results(std::ostream& os, const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace rhls

#ifndef ADVKIT_SUITE_HPP
#define ADVKIT_SUITE_HPP

#include "advkit/json_io.hpp"

namespace advkit {

struct SuiteConfig {
    std::uint64_t seed = 7;
    double tol = 1e-8;
    int grover_n = 4;
    int grover_t = 1;
    std::vector<double> cos2 = {1.0, 0.95, 0.8, 0.6};  // degraded-fixture levels
};

struct SuiteOutcome {
    bool passed = false;
    Json bundle;                // full machine-readable report
    std::string first_failure;  // empty when passed
};

/// Runs the whole fixture battery: linalg properties, query-model fixtures,
/// surgery verification, the norm-inequality checks, adversary verdicts and
/// the prefactor table. Deterministic given the seed.
SuiteOutcome run_full_suite(const SuiteConfig& config);

/// CSV rows "delta,old,new,improvement" for the prefactor comparison.
std::string prefactor_table_csv(const std::vector<double>& deltas);
Json prefactor_table_json(const std::vector<double>& deltas);

}  // namespace advkit

#endif

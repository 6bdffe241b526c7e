#pragma once

#include <string>
#include <vector>

namespace qweb {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // achieved vs expected, for the report line
};

/// Default numeric tolerance for replication checks that do not pin their own.
inline constexpr double kDefaultReplicationTolerance = 1e-10;

/// QWEB_TOLERANCE environment override, else the default.
double replication_tolerance_from_env();

/// Run every replication check (worked X/Y cases, screen-grid counts,
/// uniform-state Born values, the oracle-equivalence property suites, the
/// monotonicity grid, the bond suite and the solver sweep). Deterministic:
/// identical inputs give identical results.
std::vector<CheckResult> run_replication(double tolerance);

}  // namespace qweb

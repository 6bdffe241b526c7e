// Acceptance suite: runs every replication check once and prints one
// PASS/FAIL line per criterion. Exits non-zero when any check fails.

#include <cstdio>

#include "qweb/replication.hpp"

int main() {
    const double tolerance = qweb::replication_tolerance_from_env();
    const auto results = qweb::run_replication(tolerance);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::printf("[%2d/%zu] %s  %s\n        %s\n", r.id, results.size(),
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    }
    std::printf("%zu checks, tolerance %.3g: %s\n", results.size(), tolerance,
                all_pass ? "all passed" : "FAILURES PRESENT");
    return all_pass ? 0 : 1;
}

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on failure.
// Tolerances and time limits are fixed in the verification module.

#include <cstdio>
#include <cstdlib>

#include "polyspec/parallel.hpp"
#include "polyspec/verify.hpp"

int main() {
    const int threads = polyspec::default_thread_count();
    int failures = 0;
    for (int id = 1; id <= polyspec::kAcceptanceCount; ++id) {
        const polyspec::CheckResult c = polyspec::run_acceptance_check(id, threads);
        std::printf("%s\n", polyspec::summary_line(c).c_str());
        std::fflush(stdout);
        if (!c.passed) ++failures;
    }
    std::printf("%d/%d criteria passed\n", polyspec::kAcceptanceCount - failures, polyspec::kAcceptanceCount);
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

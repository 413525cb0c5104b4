#pragma once
// The acceptance suite: one check per criterion, each compared against an
// oracle that does not share code with the implementation under test.

#include <string>
#include <vector>

namespace polyspec {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double measured = 0.0;   // worst observed error, or number of failures
    double expected = 0.0;
    double tolerance = 0.0;
    std::string mode;        // "relative", "absolute" or "count"
    double seconds = 0.0;
    double time_limit = 0.0;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

inline constexpr int kAcceptanceCount = 14;

CheckResult run_acceptance_check(int id, int threads = 1);

// suite: "all", or a comma-separated list of criterion numbers.
VerificationReport run_verification(const std::string& suite, int threads = 1);

std::string summary_line(const CheckResult& c);

}  // namespace polyspec

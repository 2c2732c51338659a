#pragma once

#include <string>
#include <vector>

namespace cag {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    unsigned jobs = 1;
    std::vector<int> only;  ///< empty runs every criterion
};

inline constexpr int kCriterionCount = 13;

CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "PASS  3  No-PNE ... (detail)".
std::string format_result(const CriterionResult& r);

}  // namespace cag

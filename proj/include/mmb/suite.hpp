#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mmb {

struct SuiteOptions {
    bool quick = false;        // fewer trials per criterion
    std::uint64_t seed = 1;
    int jobs = 1;
    std::vector<int> only;     // criterion ids; empty runs all
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    int checks = 0;
    std::string detail;        // first failures or the error name
    double seconds = 0;
};

constexpr int kCriteria = 12;

const std::string& criterion_title(int id);
CriterionResult run_criterion(int id, const SuiteOptions& opt);
// Results in id order whatever the number of jobs.
std::vector<CriterionResult> run_suite(const SuiteOptions& opt);

}  // namespace mmb

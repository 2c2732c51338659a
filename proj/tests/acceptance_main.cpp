#include "cag/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

int main(int argc, char** argv) {
    cag::AcceptanceOptions opts;
    opts.jobs = std::max(1u, std::thread::hardware_concurrency());
    for (int k = 1; k < argc; ++k) opts.only.push_back(std::atoi(argv[k]));
    if (opts.only.empty()) {
        for (int id = 1; id <= cag::kCriterionCount; ++id) opts.only.push_back(id);
    }
    int failed = 0;
    for (int id : opts.only) {
        const auto r = cag::run_criterion(id, opts);
        std::cout << cag::format_result(r) << std::endl;
        failed += !r.passed;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}

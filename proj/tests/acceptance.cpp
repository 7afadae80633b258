// Acceptance gate: runs every suite criterion and prints one pass/fail line
// per criterion. Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <cstring>

#include "ffil/suite.hpp"

int main(int argc, char** argv) {
    ffil::SuiteOptions opts;
    opts.seed = 1;
    opts.jobs = 1;
    opts.fail_fast = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strncmp(argv[i], "--seed=", 7) == 0) opts.seed = std::strtoull(argv[i] + 7, nullptr, 10);
        if (std::strncmp(argv[i], "--jobs=", 7) == 0) opts.jobs = static_cast<unsigned>(std::strtoul(argv[i] + 7, nullptr, 10));
    }
    ffil::SuiteOutcome out = ffil::run_acceptance(opts);
    std::fputs(out.log.c_str(), stdout);
    int failed = 0;
    for (const auto& r : out.results) failed += r.pass ? 0 : 1;
    std::printf("%zu criteria, %d failed\n", out.results.size(), failed);
    return out.all_pass ? 0 : 1;
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffil/experiments.hpp"

namespace ffil {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    bool fail_fast = false;
};

struct SuiteOutcome {
    std::vector<CriterionResult> results;
    std::string log;  // one line per criterion, deterministic bytes
    bool all_pass = false;
};

// Runs the full verification suite: spectral certification grids, incidence
// and mixing inequalities, pinned distances, random-incidence trials,
// isosceles and pair-coincidence accounting, distinct-distance subsets, and a
// byte-level determinism check (the whole suite is executed twice).
SuiteOutcome run_acceptance(const SuiteOptions& opts);

// Reference O(|E|^3) isosceles counter (ordered distinct triples (x,y,z) with
// Q(x-y) = Q(x-z)), kept independent of the histogram-based implementation.
// Guarded to |E| <= 200.
std::uint64_t isosceles_count_cubic_oracle(const PointSet& E, const DiagonalForm& Q);

}  // namespace ffil

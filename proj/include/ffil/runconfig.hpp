#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffil/algebra.hpp"
#include "ffil/geometry.hpp"

namespace ffil {

// Field size spec "p^k" or a plain prime power; rings take any odd integer.
struct PrimePower {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint64_t q = 0;
};

// "7" -> 7^1, "3^2" -> 3^2, "9" -> 3^2. Throws invalid_input for even,
// composite-non-prime-power, or malformed values.
PrimePower parse_prime_power(const std::string& text);

// plain odd integer >= 3
std::uint64_t parse_odd_q(const std::string& text);

// comma-separated unsigned integer list
std::vector<std::uint64_t> parse_uint_list(const std::string& text);

// Validated run configuration shared by the CLI subcommands.
struct RunConfig {
    std::string command;
    std::string q_text;
    std::uint32_t d = 1;
    std::vector<std::uint64_t> exps;
    std::vector<std::uint64_t> coeffs;
    std::uint64_t p_size = 0;
    std::uint64_t s_size = 0;
    bool full_sets = false;
    std::uint64_t seed = 1;
    std::uint32_t trials = 100;
    std::uint32_t t = 0;
    double c = 0.5;
    std::string format = "json";  // json|csv
    std::string out_path;         // empty -> stdout
    std::string gnuplot_path;
    unsigned jobs = 1;
    std::string kind = "cayley";   // cert/spectrum: cayley|cayley-prime|sp
    std::string order = "lex";     // ddsubset: lex|shuffle
    std::string method = "greedy"; // ddsubset: greedy|deletion
    std::string points_file;
    std::string spheres_file;
    std::uint32_t exp_cap = 16;
    bool keep_going = false;
};

// Builds the field + diagonal form a config describes (field commands).
Field field_from_config(const RunConfig& cfg);
DiagonalForm form_from_config(const RunConfig& cfg, const Field& F);

}  // namespace ffil

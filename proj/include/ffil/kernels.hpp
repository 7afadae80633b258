#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

// Data-parallel inner loops used by the spectral code, with a scalar reference
// implementation and SIMD variants (AVX2 on x86-64, NEON on aarch64) selected
// at runtime. The scalar kernels are the semantic definition; SIMD variants
// are equivalence-tested against them.

namespace ffil::kernels {

// In-place plane rotation of two rows of equal length n:
//   x[i] <- c*x[i] + s*y[i]
//   y[i] <- c*y[i] - s*x_old[i]
using RotatePairFn = void (*)(double* x, double* y, std::size_t n, double c, double s);

// sum_i table[idx[i]]   (idx values must be valid table offsets)
using GatherSumFn = double (*)(const double* table, const std::uint32_t* idx, std::size_t n);

// sum_i a[i]*b[i]
using DotFn = double (*)(const double* a, const double* b, std::size_t n);

// max_i (re[i]^2 + im[i]^2); 0 for n == 0
using MaxAbs2Fn = double (*)(const double* re, const double* im, std::size_t n);

struct Backend {
    const char* name;
    RotatePairFn rotate_pair;
    GatherSumFn gather_sum;
    DotFn dot;
    MaxAbs2Fn max_abs2;
};

// Always-available reference implementation.
const Backend& scalar_backend();

// Currently active backend. First use picks the best variant the CPU supports,
// unless the FFIL_KERNELS environment variable (scalar|avx2|neon) overrides it.
const Backend& active();

// Switch backends by name; returns false (and leaves the selection unchanged)
// if the variant is not compiled in or not supported by this CPU. Not intended
// to be called concurrently with kernel use.
bool select(std::string_view name);

// All variants usable on this machine (scalar first).
std::vector<const Backend*> supported_backends();

inline void rotate_pair(double* x, double* y, std::size_t n, double c, double s) {
    active().rotate_pair(x, y, n, c, s);
}
inline double gather_sum(const double* table, const std::uint32_t* idx, std::size_t n) {
    return active().gather_sum(table, idx, n);
}
inline double dot(const double* a, const double* b, std::size_t n) {
    return active().dot(a, b, n);
}
inline double max_abs2(const double* re, const double* im, std::size_t n) {
    return active().max_abs2(re, im, n);
}

// Defined in the variant translation units; nullptr when not compiled in.
const Backend* avx2_backend();
const Backend* neon_backend();

}  // namespace ffil::kernels

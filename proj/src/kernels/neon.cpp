#include "ffil/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace ffil::kernels {
namespace {

void rotate_pair_neon(double* x, double* y, std::size_t n, double c, double s) {
    const float64x2_t cv = vdupq_n_f64(c);
    const float64x2_t sv = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t xv = vld1q_f64(x + i);
        float64x2_t yv = vld1q_f64(y + i);
        float64x2_t nx = vfmaq_f64(vmulq_f64(sv, yv), cv, xv);
        float64x2_t ny = vfmsq_f64(vmulq_f64(cv, yv), sv, xv);
        vst1q_f64(x + i, nx);
        vst1q_f64(y + i, ny);
    }
    for (; i < n; ++i) {
        double xi = x[i];
        double yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = c * yi - s * xi;
    }
}

// No gather on NEON; plain loop keeps the table in cache anyway.
double gather_sum_neon(const double* table, const std::uint32_t* idx, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += table[idx[i]];
    return acc;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    }
    double out = vaddvq_f64(acc);
    for (; i < n; ++i) out += a[i] * b[i];
    return out;
}

double max_abs2_neon(const double* re, const double* im, std::size_t n) {
    float64x2_t best = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t rv = vld1q_f64(re + i);
        float64x2_t iv = vld1q_f64(im + i);
        float64x2_t m = vfmaq_f64(vmulq_f64(iv, iv), rv, rv);
        best = vmaxq_f64(best, m);
    }
    double out = vmaxvq_f64(best);
    for (; i < n; ++i) {
        double m = re[i] * re[i] + im[i] * im[i];
        if (m > out) out = m;
    }
    return out;
}

constexpr Backend kNeon{"neon", rotate_pair_neon, gather_sum_neon, dot_neon, max_abs2_neon};

}  // namespace

const Backend* neon_backend() { return &kNeon; }

}  // namespace ffil::kernels

#else

namespace ffil::kernels {
const Backend* neon_backend() { return nullptr; }
}  // namespace ffil::kernels

#endif

#include "ffil/kernels.hpp"

namespace ffil::kernels {
namespace {

void rotate_pair_scalar(double* x, double* y, std::size_t n, double c, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        double xi = x[i];
        double yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = c * yi - s * xi;
    }
}

double gather_sum_scalar(const double* table, const std::uint32_t* idx, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += table[idx[i]];
    return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double max_abs2_scalar(const double* re, const double* im, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m = re[i] * re[i] + im[i] * im[i];
        if (m > best) best = m;
    }
    return best;
}

constexpr Backend kScalar{"scalar", rotate_pair_scalar, gather_sum_scalar, dot_scalar,
                          max_abs2_scalar};

}  // namespace

const Backend& scalar_backend() { return kScalar; }

}  // namespace ffil::kernels

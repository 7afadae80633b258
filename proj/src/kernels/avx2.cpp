#include "ffil/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace ffil::kernels {
namespace {

void rotate_pair_avx2(double* x, double* y, std::size_t n, double c, double s) {
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        __m256d yv = _mm256_loadu_pd(y + i);
        // c*x + s*y and c*y - s*x
        __m256d nx = _mm256_fmadd_pd(cv, xv, _mm256_mul_pd(sv, yv));
        __m256d ny = _mm256_fnmadd_pd(sv, xv, _mm256_mul_pd(cv, yv));
        _mm256_storeu_pd(x + i, nx);
        _mm256_storeu_pd(y + i, ny);
    }
    for (; i < n; ++i) {
        double xi = x[i];
        double yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = c * yi - s * xi;
    }
}

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double gather_sum_avx2(const double* table, const std::uint32_t* idx, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i iv = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
        __m256d vals = _mm256_i32gather_pd(table, iv, 8);
        acc = _mm256_add_pd(acc, vals);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += table[idx[i]];
    return hsum(acc) + tail;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d av = _mm256_loadu_pd(a + i);
        __m256d bv = _mm256_loadu_pd(b + i);
        acc = _mm256_fmadd_pd(av, bv, acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i];
    return hsum(acc) + tail;
}

double max_abs2_avx2(const double* re, const double* im, std::size_t n) {
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d rv = _mm256_loadu_pd(re + i);
        __m256d iv = _mm256_loadu_pd(im + i);
        __m256d m = _mm256_fmadd_pd(rv, rv, _mm256_mul_pd(iv, iv));
        best = _mm256_max_pd(best, m);
    }
    __m128d lo = _mm256_castpd256_pd128(best);
    __m128d hi = _mm256_extractf128_pd(best, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    double out = _mm_cvtsd_f64(_mm_max_sd(lo, shuf));
    for (; i < n; ++i) {
        double m = re[i] * re[i] + im[i] * im[i];
        if (m > out) out = m;
    }
    return out;
}

constexpr Backend kAvx2{"avx2", rotate_pair_avx2, gather_sum_avx2, dot_avx2, max_abs2_avx2};

}  // namespace

const Backend* avx2_backend() { return &kAvx2; }

}  // namespace ffil::kernels

#else

namespace ffil::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace ffil::kernels

#endif

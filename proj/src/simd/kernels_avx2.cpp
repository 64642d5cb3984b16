// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include "qsc/simd/kernels.hpp"

#include <immintrin.h>

namespace qsc::simd::detail {

namespace {

// std::complex<double> is layout-compatible with double[2]; one __m256d holds two values.
inline const double *as_doubles(const cplx *p) { return reinterpret_cast<const double *>(p); }
inline double *as_doubles(cplx *p) { return reinterpret_cast<double *>(p); }

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double *a, const double *b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
    }
    for (; k + 4 <= n; k += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) sum += a[k] * b[k];
    return sum;
}

cplx weighted_sum_avx2(const double *w, const cplx *f, std::size_t n) {
    const double *fd = as_doubles(f);
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        // [w0, w0, w1, w1]
        const __m256d wv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w + k)), 0x50);
        acc = _mm256_fmadd_pd(wv, _mm256_loadu_pd(fd + 2 * k), acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    for (; k < n; ++k) {
        re += w[k] * f[k].real();
        im += w[k] * f[k].imag();
    }
    return {re, im};
}

void axpy_avx2(cplx alpha, const cplx *x, cplx *y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const double *xd = as_doubles(x);
    double *yd = as_doubles(y);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
        const __m256d xswap = _mm256_permute_pd(xv, 0x5);  // [xi, xr, ...]
        // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xswap));
        _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * k), prod));
    }
    for (; k < n; ++k) {
        const double xr = x[k].real();
        const double xi = x[k].imag();
        y[k] = {y[k].real() + (alpha.real() * xr - alpha.imag() * xi),
                y[k].imag() + (alpha.real() * xi + alpha.imag() * xr)};
    }
}

void gemm_avx2(std::size_t m, std::size_t k, std::size_t n, const cplx *a, const cplx *b, cplx *c) {
    for (std::size_t j = 0; j < n; ++j) {
        cplx *cj = c + j * m;
        for (std::size_t i = 0; i < m; ++i) cj[i] = 0.0;
        for (std::size_t p = 0; p < k; ++p) {
            axpy_avx2(b[p + j * k], a + p * m, cj, m);
        }
    }
}

}  // namespace

const KernelTable avx2_table{dot_avx2, weighted_sum_avx2, axpy_avx2, gemm_avx2};

}  // namespace qsc::simd::detail

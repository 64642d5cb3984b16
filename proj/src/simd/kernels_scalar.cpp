#include "qsc/simd/kernels.hpp"

namespace qsc::simd::detail {

namespace {

double dot_scalar(const double *a, const double *b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += a[k] * b[k];
    return sum;
}

cplx weighted_sum_scalar(const double *w, const cplx *f, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        re += w[k] * f[k].real();
        im += w[k] * f[k].imag();
    }
    return {re, im};
}

void axpy_scalar(cplx alpha, const cplx *x, cplx *y, std::size_t n) {
    const double ar = alpha.real();
    const double ai = alpha.imag();
    for (std::size_t k = 0; k < n; ++k) {
        const double xr = x[k].real();
        const double xi = x[k].imag();
        y[k] = {y[k].real() + (ar * xr - ai * xi), y[k].imag() + (ar * xi + ai * xr)};
    }
}

void gemm_scalar(std::size_t m, std::size_t k, std::size_t n, const cplx *a, const cplx *b, cplx *c) {
    for (std::size_t j = 0; j < n; ++j) {
        cplx *cj = c + j * m;
        for (std::size_t i = 0; i < m; ++i) cj[i] = 0.0;
        for (std::size_t p = 0; p < k; ++p) {
            axpy_scalar(b[p + j * k], a + p * m, cj, m);
        }
    }
}

}  // namespace

const KernelTable scalar_table{dot_scalar, weighted_sum_scalar, axpy_scalar, gemm_scalar};

}  // namespace qsc::simd::detail

#pragma once
// Data-parallel inner loops with a scalar reference and an AVX2/FMA variant.
// The variant is picked once at runtime from CPUID; setting QSC_SIMD=scalar in
// the environment forces the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qsc::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// Whether the variant was compiled in and the CPU supports it.
bool available(Isa isa);

/// The variant used by the free functions below.
Isa active_isa();

struct KernelTable {
    double (*dot)(const double *a, const double *b, std::size_t n);
    // sum_k w[k] * f[k]
    cplx (*weighted_sum)(const double *w, const cplx *f, std::size_t n);
    // y += alpha * x
    void (*axpy)(cplx alpha, const cplx *x, cplx *y, std::size_t n);
    // C = A * B, column-major, A is m x k, B is k x n
    void (*gemm)(std::size_t m, std::size_t k, std::size_t n, const cplx *a, const cplx *b, cplx *c);
};

/// Kernel table for a specific variant; throws if it is not available.
const KernelTable &kernels(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);
cplx weighted_sum(std::span<const double> w, std::span<const cplx> f);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx *a, const cplx *b, cplx *c);

namespace detail {
extern const KernelTable scalar_table;
#if defined(QSC_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace qsc::simd

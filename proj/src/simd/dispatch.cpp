#include "qsc/simd/kernels.hpp"

#include "qsc/error.hpp"

#include <cstdlib>
#include <string>

namespace qsc::simd {

std::string_view to_string(Isa isa) {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool available(Isa isa) {
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(QSC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

const KernelTable &kernels(Isa isa) {
    if (!available(isa)) {
        throw InputError("SIMD variant '" + std::string(to_string(isa)) + "' is not available on this machine");
    }
#if defined(QSC_HAVE_AVX2)
    if (isa == Isa::avx2) return detail::avx2_table;
#endif
    return detail::scalar_table;
}

namespace {

Isa select_isa() {
    if (const char *forced = std::getenv("QSC_SIMD"); forced != nullptr && std::string_view(forced) == "scalar") {
        return Isa::scalar;
    }
    return available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

const KernelTable &active_table() {
    static const KernelTable &table = kernels(active_isa());
    return table;
}

}  // namespace

Isa active_isa() {
    static const Isa isa = select_isa();
    return isa;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InputError("dot: length mismatch");
    return active_table().dot(a.data(), b.data(), a.size());
}

cplx weighted_sum(std::span<const double> w, std::span<const cplx> f) {
    if (w.size() != f.size()) throw InputError("weighted_sum: length mismatch");
    return active_table().weighted_sum(w.data(), f.data(), w.size());
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    if (x.size() != y.size()) throw InputError("axpy: length mismatch");
    active_table().axpy(alpha, x.data(), y.data(), x.size());
}

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx *a, const cplx *b, cplx *c) {
    active_table().gemm(m, k, n, a, b, c);
}

}  // namespace qsc::simd

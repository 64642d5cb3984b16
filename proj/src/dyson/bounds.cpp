#include "qsc/dyson.hpp"
#include "qsc/error.hpp"

#include <cmath>
#include <functional>

namespace qsc {

double pule_bound_gaussian(int n2, double kappa_abs, double t) {
    if (n2 < 0) throw InputError("pair count must be non-negative");
    if (!(kappa_abs >= 0.0) || !(t >= 0.0)) throw InputError("Pule bound needs kappa' >= 0 and t >= 0");
    const double base = kappa_abs * std::max(t, 1.0);
    double value = 1.0;
    for (int k = 1; k <= n2; ++k) value *= base / k;
    return value;
}

double xi_bound(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) throw InputError("Xi(A, B) arguments must not be NaN");
    if (!(a < 0.0)) {
        throw DomainError("Xi(A, B) needs e^A = ||kappa E11|| < 1, i.e. A < 0; got A = " + std::to_string(a));
    }
    return std::exp(std::exp(a + b) / (1.0 - std::exp(a)));
}

double xi_restricted_sum(double a, double b, int n) {
    if (n < 0) throw InputError("restricted sum needs n >= 0");
    // Enumerate multiplicities n_j (block size j) with sum_j j n_j = n.
    double total = 0.0;
    std::function<void(int, int, int, double)> visit = [&](int j, int remaining, int blocks, double inv_factorials) {
        if (remaining == 0) {
            total += std::exp(a * n + b * blocks) * inv_factorials;
            return;
        }
        if (j > remaining) return;
        double weight = 1.0;
        for (int count = 0; count * j <= remaining; ++count) {
            if (count > 0) weight /= count;
            visit(j + 1, remaining - count * j, blocks + count, inv_factorials * weight);
        }
    };
    visit(1, n, 0, 1.0);
    return total;
}

PuleCheck pule_check(const KernelSpec &k, int vertices, double lambda, double t) {
    if (vertices < 0 || vertices > kMaxDiagramIntegralVertices) {
        throw EnumerationBoundError("Pule check supports up to " + std::to_string(kMaxDiagramIntegralVertices) +
                                    " vertices");
    }
    const ScaledKernel scaled(k.absolute(), lambda);
    PuleCheck out{vertices, lambda, t, 0.0, pule_bound_gaussian(vertices / 2, k.abs_half_integral(), t)};
    if (vertices == 0) {
        out.measured = 1.0;
        return out;
    }
    for (const auto &d : enumerate_pair_partitions(vertices)) {
        out.measured += std::abs(diagram_integral(d, scaled, t));
    }
    return out;
}

}  // namespace qsc

#include "qsc/quadrature.hpp"

#include "qsc/error.hpp"
#include "qsc/simd/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

namespace qsc {

namespace {

// Nodes on [-1, 1] in increasing order; Gauss weights are zero at the
// Kronrod-only nodes.
constexpr std::array<double, 15> kNodes = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851, -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788, -0.586087235467691130294144845693013, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,  0.586087235467691130294144845693013,
    0.741531185599394439863864773280788,  0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr std::array<double, 15> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

constexpr std::array<double, 15> kGaussWeights = {
    0.0, 0.129484966168869693270611432679082, 0.0, 0.279705391489276667901467771423780,
    0.0, 0.381830050505118944950369775488975, 0.0, 0.417959183673469387755102040816327,
    0.0, 0.381830050505118944950369775488975, 0.0, 0.279705391489276667901467771423780,
    0.0, 0.129484966168869693270611432679082, 0.0};

struct Segment {
    double a;
    double b;
    cplx value;
    double error;

    bool operator<(const Segment &other) const { return error < other.error; }
};

Segment gauss_kronrod(const ComplexFunction &f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    std::array<cplx, 15> values;
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
        values[k] = f(mid + half * kNodes[k]);
    }
    const cplx kronrod = half * simd::weighted_sum(kKronrodWeights, values);
    const cplx gauss = half * simd::weighted_sum(kGaussWeights, values);
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const ComplexFunction &f, double a, double b, const QuadratureOptions &options) {
    QuadratureResult result;
    if (a == b) {
        result.converged = true;
        return result;
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw InputError("integrate: finite limits required (use integrate_to_infinity)");
    }
    std::priority_queue<Segment> queue;
    Segment first = gauss_kronrod(f, a, b);
    cplx total = first.value;
    double error = first.error;
    queue.push(first);
    result.evaluations = 15;
    int intervals = 1;
    while (error > std::max(options.abs_tol, options.rel_tol * std::abs(total)) && intervals < options.max_intervals) {
        const Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        result.evaluations += 30;
        ++intervals;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    // Re-sum to shed the drift from incremental updates.
    total = 0.0;
    error = 0.0;
    while (!queue.empty()) {
        total += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    result.value = total;
    result.error_estimate = error;
    result.converged = error <= std::max(options.abs_tol, options.rel_tol * std::abs(total));
    return result;
}

QuadratureResult integrate_to_infinity(const ComplexFunction &f, double a, const QuadratureOptions &options) {
    const ComplexFunction mapped = [&f, a](double x) -> cplx {
        if (x >= 1.0) return 0.0;
        const double one_minus = 1.0 - x;
        return f(a + x / one_minus) / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, options);
}

}  // namespace qsc

#include "qsc/dyson.hpp"
#include "qsc/error.hpp"

#include <algorithm>
#include <cmath>

namespace qsc {

namespace {

// Above this |a| t max(w) the Taylor series of the divided difference starts
// to cancel; below it the difference quotients do.
constexpr double kTaylorRadius = 4.0;
constexpr int kTaylorTerms = 80;

cplx divided_difference_taylor(const std::vector<int> &points, cplx a, double t) {
    const int order = static_cast<int>(points.size()) - 1;
    // h[k] = complete homogeneous symmetric polynomial of degree k in the scaled points a t w.
    std::vector<cplx> h(kTaylorTerms + 1, 0.0);
    h[0] = 1.0;
    for (int w : points) {
        const cplx y = a * t * static_cast<double>(w);
        for (int k = 1; k <= kTaylorTerms; ++k) h[static_cast<std::size_t>(k)] += y * h[static_cast<std::size_t>(k - 1)];
    }
    // sum_k h_k / (order + k)!
    double inv_factorial = 1.0;
    for (int k = 2; k <= order; ++k) inv_factorial /= k;
    cplx sum = 0.0;
    for (int k = 0; k <= kTaylorTerms; ++k) {
        sum += h[static_cast<std::size_t>(k)] * inv_factorial;
        inv_factorial /= (order + k + 1);
    }
    return std::pow(t, order) * sum;
}

cplx divided_difference_recursion(const std::vector<int> &points, cplx a, double t) {
    const std::size_t count = points.size();
    std::vector<cplx> dd(count);
    for (std::size_t i = 0; i < count; ++i) dd[i] = std::exp(a * t * static_cast<double>(points[i]));
    double power_over_factorial = 1.0;  // t^r / r!
    for (std::size_t r = 1; r < count; ++r) {
        power_over_factorial *= t / static_cast<double>(r);
        for (std::size_t i = 0; i + r < count; ++i) {
            const int lo = points[i];
            const int hi = points[i + r];
            if (lo == hi) {
                dd[i] = power_over_factorial * std::exp(a * t * static_cast<double>(lo));
            } else {
                dd[i] = (dd[i + 1] - dd[i]) / (a * static_cast<double>(hi - lo));
            }
        }
    }
    return dd[0];
}

}  // namespace

cplx simplex_exponential_integral(std::span<const int> weights, cplx a, double t, DividedDifferenceMethod method) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InputError("simplex integral needs a finite t >= 0");
    }
    if (t == 0.0) {
        return weights.empty() ? 1.0 : 0.0;
    }
    std::vector<int> points(weights.begin(), weights.end());
    points.push_back(0);
    std::sort(points.begin(), points.end());
    const double radius = std::abs(a) * t * static_cast<double>(std::max(std::abs(points.front()), std::abs(points.back())));
    if (method == DividedDifferenceMethod::automatic) {
        method = radius <= kTaylorRadius ? DividedDifferenceMethod::taylor : DividedDifferenceMethod::recursion;
    }
    if (method == DividedDifferenceMethod::recursion && a == cplx(0.0)) {
        method = DividedDifferenceMethod::taylor;
    }
    return method == DividedDifferenceMethod::taylor ? divided_difference_taylor(points, a, t)
                                                     : divided_difference_recursion(points, a, t);
}

std::vector<int> gap_weights(const GoldstoneDiagram &d) {
    std::vector<int> w(static_cast<std::size_t>(d.size()), 0);
    // t_i - t_j = sum of gaps m = j+1..i
    for (const auto &e : d.edges()) {
        for (int m = e.earlier + 1; m <= e.later; ++m) ++w[static_cast<std::size_t>(m - 1)];
    }
    return w;
}

namespace {

void check_diagram_size(const GoldstoneDiagram &d) {
    if (d.size() > kMaxDiagramIntegralVertices) {
        throw EnumerationBoundError("diagram integrals are limited to " + std::to_string(kMaxDiagramIntegralVertices) +
                                    " vertices, got " + std::to_string(d.size()));
    }
}

class NestedSimplexQuadrature {
  public:
    NestedSimplexQuadrature(const GoldstoneDiagram &d, const ComplexFunction &kernel, double rel_tol)
        : kernel_(kernel), times_(static_cast<std::size_t>(d.size()) + 1, 0.0),
          partners_(static_cast<std::size_t>(d.size()) + 1) {
        for (const auto &e : d.edges()) partners_[static_cast<std::size_t>(e.earlier)].push_back(e.later);
        options_.rel_tol = rel_tol;
        options_.abs_tol = 1e-14;
        options_.max_intervals = 400;
    }

    // Integrates t_k over [0, upper] with t_{k+1..n} already fixed.
    cplx level(int k, double upper) {
        if (k == 0) return 1.0;
        const ComplexFunction integrand = [this, k](double s) -> cplx {
            times_[static_cast<std::size_t>(k)] = s;
            cplx factor = 1.0;
            for (int later : partners_[static_cast<std::size_t>(k)]) {
                factor *= kernel_(times_[static_cast<std::size_t>(later)] - s);
            }
            if (factor == cplx(0.0)) return 0.0;
            return factor * level(k - 1, s);
        };
        return integrate(integrand, 0.0, upper, options_).value;
    }

  private:
    const ComplexFunction &kernel_;
    std::vector<double> times_;
    std::vector<std::vector<int>> partners_;
    QuadratureOptions options_;
};

}  // namespace

cplx diagram_integral_quadrature(const GoldstoneDiagram &d, const ComplexFunction &kernel, double t, double rel_tol) {
    check_diagram_size(d);
    if (!(t >= 0.0)) throw InputError("diagram integral needs t >= 0");
    if (t == 0.0) return 0.0;
    NestedSimplexQuadrature q(d, kernel, rel_tol);
    return q.level(d.size(), t);
}

cplx diagram_integral(const GoldstoneDiagram &d, const ScaledKernel &k, double t) {
    check_diagram_size(d);
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("diagram integral needs a finite t >= 0");
    if (t == 0.0) return 0.0;
    if (!k.base().is_exponential()) {
        const ComplexFunction kernel = [&k](double u) { return k(u); };
        return diagram_integral_quadrature(d, kernel, t, 1e-6);
    }
    const auto &e = k.base().exponential_params();
    const double l2 = k.lambda() * k.lambda();
    // On u > 0: G_lambda(u) = (c / lambda^2) exp(a u)
    const cplx a = cplx(-1.0 / e.tau, e.omega) / l2;
    const double prefactor = std::pow(e.amplitude / l2, static_cast<double>(d.edges().size()));
    const auto w = gap_weights(d);
    return prefactor * simplex_exponential_integral(w, a, t);
}

cplx markov_limit_prediction(const GoldstoneDiagram &d, cplx kappa, double t) {
    if (!is_time_consecutive(d)) return 0.0;
    const auto blocks = static_cast<int>(d.blocks().block_count());
    double volume = 1.0;  // t^m / m!
    for (int k = 1; k <= blocks; ++k) volume *= t / k;
    return std::pow(kappa, static_cast<int>(d.edges().size())) * volume;
}

}  // namespace qsc

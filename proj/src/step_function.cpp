#include "qsc/step_function.hpp"

#include "qsc/error.hpp"

#include <algorithm>
#include <cmath>

namespace qsc {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<cplx> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2) {
        throw InputError("step function needs at least two breakpoints");
    }
    if (breakpoints_.front() != 0.0) {
        throw InputError("step function domain must start at 0");
    }
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        if (!(breakpoints_[k] > breakpoints_[k - 1]) || !std::isfinite(breakpoints_[k])) {
            throw InputError("step function breakpoints must be finite and strictly increasing");
        }
    }
    if (values_.size() + 1 != breakpoints_.size()) {
        throw InputError("step function needs one value per interval");
    }
    for (const auto &v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InputError("step function values must be finite");
        }
    }
}

StepFunction StepFunction::constant(double t, cplx value) {
    if (!(t > 0.0)) {
        throw InputError("step function horizon must be positive");
    }
    return StepFunction({0.0, t}, {value});
}

cplx StepFunction::operator()(double s) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s);
    if (it == breakpoints_.begin()) return values_.front();
    const auto k = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return values_[std::min(k, values_.size() - 1)];
}

StepFunction StepFunction::reversed() const {
    const double t = end();
    std::vector<double> b;
    b.reserve(breakpoints_.size());
    for (auto it = breakpoints_.rbegin(); it != breakpoints_.rend(); ++it) b.push_back(t - *it);
    b.front() = 0.0;
    b.back() = t;
    return StepFunction(std::move(b), std::vector<cplx>(values_.rbegin(), values_.rend()));
}

double StepFunction::sup_norm() const {
    double m = 0.0;
    for (const auto &v : values_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> common_breakpoints(const StepFunction &f, const StepFunction &g, double t) {
    if (!(t >= 0.0)) {
        throw InputError("horizon must be non-negative");
    }
    const double slack = 1e-12 * std::max(1.0, t);
    if (f.end() < t - slack || g.end() < t - slack) {
        throw InputError("step functions do not cover [0, t]");
    }
    std::vector<double> points{0.0, t};
    for (const auto *h : {&f, &g}) {
        for (double b : h->breakpoints()) {
            if (b > slack && b < t - slack) points.push_back(b);
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end(), [slack](double a, double b) { return b - a <= slack; }),
                 points.end());
    points.back() = t;
    return points;
}

cplx overlap_integral(const StepFunction &f, const StepFunction &g, double t) {
    const auto points = common_breakpoints(f, g, t);
    cplx sum = 0.0;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const double mid = 0.5 * (points[k] + points[k + 1]);
        sum += std::conj(f(mid)) * g(mid) * (points[k + 1] - points[k]);
    }
    return sum;
}

cplx coherent_normalization(const StepFunction &f, const StepFunction &g, double t) {
    return std::exp(overlap_integral(f, g, t));
}

}  // namespace qsc

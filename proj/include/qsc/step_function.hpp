#pragma once

#include "qsc/linalg.hpp"

#include <vector>

namespace qsc {

/// Piecewise-constant complex function on [0, t]: values[k] holds on
/// [breakpoints[k], breakpoints[k+1]).
class StepFunction {
  public:
    StepFunction(std::vector<double> breakpoints, std::vector<cplx> values);

    static StepFunction constant(double t, cplx value);
    static StepFunction zero(double t) { return constant(t, 0.0); }

    double end() const noexcept { return breakpoints_.back(); }
    const std::vector<double> &breakpoints() const noexcept { return breakpoints_; }
    const std::vector<cplx> &values() const noexcept { return values_; }

    /// Value at s; the right end of the domain takes the last value.
    cplx operator()(double s) const;

    /// s -> end() - s
    StepFunction reversed() const;

    /// Largest |value|.
    double sup_norm() const;

  private:
    std::vector<double> breakpoints_;
    std::vector<cplx> values_;
};

/// Sorted union of both breakpoint sets restricted to [0, t].
std::vector<double> common_breakpoints(const StepFunction &f, const StepFunction &g, double t);

/// \int_0^t conj(f) g
cplx overlap_integral(const StepFunction &f, const StepFunction &g, double t);

/// exp(\int_0^t conj(f) g), the coherent-vector overlap <e(f)|e(g)>.
cplx coherent_normalization(const StepFunction &f, const StepFunction &g, double t);

}  // namespace qsc

#pragma once
// Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.

#include "qsc/linalg.hpp"

#include <functional>

namespace qsc {

using ComplexFunction = std::function<cplx(double)>;

struct QuadratureResult {
    cplx value;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_intervals = 2000;
};

QuadratureResult integrate(const ComplexFunction &f, double a, double b, const QuadratureOptions &options = {});

/// \int_a^\infty f via u = a + x / (1 - x).
QuadratureResult integrate_to_infinity(const ComplexFunction &f, double a, const QuadratureOptions &options = {});

}  // namespace qsc

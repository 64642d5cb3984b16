#pragma once
// Shared fixtures: seeded random families and independent reference integrators.

#include "qsc/coefficients.hpp"
#include "qsc/linalg.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace qsc::test {

inline Matrix random_matrix(std::mt19937_64 &rng, int d, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    Matrix m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = cplx(n(rng), n(rng));
    return m;
}

inline Matrix random_hermitian(std::mt19937_64 &rng, int d, double scale = 1.0) {
    const Matrix m = random_matrix(rng, d, scale);
    return 0.5 * (m + m.adjoint());
}

inline cplx random_kappa(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> re(0.1, 1.0), im(-1.0, 1.0);
    return {re(rng), im(rng)};
}

/// Hermitian family with ||kappa E11|| rescaled to target_norm.
inline CoefficientFamily random_family(std::mt19937_64 &rng, int d, cplx kappa, double target_norm) {
    MatrixQuad e;
    e[0][0] = random_hermitian(rng, d);
    e[0][1] = random_matrix(rng, d, 0.7);
    e[1][0] = e[0][1].adjoint();
    Matrix e11 = random_hermitian(rng, d);
    const double norm = (kappa * e11).jacobiSvd().singularValues()(0);
    e[1][1] = e11 * (target_norm / norm);
    return CoefficientFamily(std::move(e));
}

/// The d = 1 family E00 = 0, E01 = E10 = 1, E11 = 0.
inline CoefficientFamily unit_emission_family() {
    MatrixQuad e;
    for (auto &row : e)
        for (auto &m : row) m = Matrix::Zero(1, 1);
    e[0][1](0, 0) = 1.0;
    e[1][0](0, 0) = 1.0;
    return CoefficientFamily(std::move(e));
}

/// Composite Gauss-Legendre on [a, b]: `panels` panels of 10 nodes each.
inline cplx gauss_legendre(const std::function<cplx(double)> &f, double a, double b, int panels) {
    static const double x[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244, 0.8650633666889845,
                                0.9739065285171717};
    static const double w[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                                0.0666713443086881};
    cplx sum = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h, half = 0.5 * h;
        for (int k = 0; k < 5; ++k) sum += w[k] * half * (f(mid - half * x[k]) + f(mid + half * x[k]));
    }
    return sum;
}

/// Integral over t > t_n > ... > t_1 > 0 of integrand(times), nested Gauss-Legendre
/// with the outermost (latest) time first.  times[k] is t_{k+1}.
inline cplx simplex_integral(int n, double t, int panels, const std::function<cplx(const std::vector<double> &)> &g) {
    std::vector<double> times(static_cast<std::size_t>(n));
    std::function<cplx(int, double)> level = [&](int k, double upper) -> cplx {
        if (k < 0) return g(times);
        return gauss_legendre(
            [&](double s) {
                times[static_cast<std::size_t>(k)] = s;
                return level(k - 1, s);
            },
            0.0, upper, panels);
    };
    if (n == 0) return 1.0;
    return level(n - 1, t);
}

/// Classical RK4 for M' = K(s) M, M(0) = 1, with K piecewise constant between
/// the given breakpoints.
inline Matrix rk4_evolution(const std::function<Matrix(double)> &generator, int d, double t, int steps) {
    Matrix m = Matrix::Identity(d, d);
    const double h = t / steps;
    for (int k = 0; k < steps; ++k) {
        const double s = k * h;
        const Matrix k1 = generator(s + 1e-14) * m;
        const Matrix k2 = generator(s + 0.5 * h) * (m + 0.5 * h * k1);
        const Matrix k3 = generator(s + 0.5 * h) * (m + 0.5 * h * k2);
        const Matrix k4 = generator(s + h - 1e-14) * (m + h * k3);
        m += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return m;
}

}  // namespace qsc::test

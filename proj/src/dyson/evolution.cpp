#include "qsc/dyson.hpp"
#include "qsc/error.hpp"

#include <algorithm>
#include <cmath>

namespace qsc {

Matrix coherent_generator(const ItoCoefficients &l, cplx f_value, cplx g_value) {
    const cplx fbar = std::conj(f_value);
    return l(0, 0) + g_value * l(0, 1) + fbar * l(1, 0) + (fbar * g_value) * l(1, 1);
}

namespace {

struct Interval {
    double length;
    cplx f;
    cplx g;
};

std::vector<Interval> intervals_of_constancy(const StepFunction &f, const StepFunction &g, double t) {
    const auto points = common_breakpoints(f, g, t);
    std::vector<Interval> out;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const double mid = 0.5 * (points[k] + points[k + 1]);
        out.push_back({points[k + 1] - points[k], f(mid), g(mid)});
    }
    return out;
}

void check_horizon(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InputError("evolution horizon must be a finite t >= 0");
    }
}

// sum_{n > n_max} x^n / n!
double exponential_tail(double x, int n_max) {
    double term = 1.0;
    for (int n = 1; n <= n_max + 1; ++n) term *= x / n;
    double sum = 0.0;
    for (int n = n_max + 1; n < n_max + 2000; ++n) {
        sum += term;
        if (term <= 1e-17 * sum && n > x) break;
        term *= x / (n + 1);
    }
    return sum;
}

}  // namespace

SeriesMatrixElement series_matrix_element(const ItoCoefficients &l, const StepFunction &f, const StepFunction &g,
                                          double t, int n_max) {
    check_horizon(t);
    if (n_max < 0 || n_max > kMaxSeriesOrder) {
        throw InputError("series order must lie in 0.." + std::to_string(kMaxSeriesOrder));
    }
    const int d = l.dim();
    const auto pieces = intervals_of_constancy(f, g, t);

    // orders[k] holds the degree-k part of the truncated time-ordered exponential.
    std::vector<Matrix> orders(static_cast<std::size_t>(n_max) + 1, Matrix::Zero(d, d));
    orders[0] = Matrix::Identity(d, d);
    std::vector<Matrix> powers(static_cast<std::size_t>(n_max) + 1);
    for (const auto &piece : pieces) {
        const Matrix x = piece.length * coherent_generator(l, piece.f, piece.g);
        powers[0] = Matrix::Identity(d, d);
        for (int m = 1; m <= n_max; ++m) {
            powers[static_cast<std::size_t>(m)] = multiply(x, powers[static_cast<std::size_t>(m - 1)]) / m;
        }
        for (int k = n_max; k >= 1; --k) {
            Matrix updated = orders[static_cast<std::size_t>(k)];
            for (int m = 1; m <= k; ++m) {
                updated += multiply(powers[static_cast<std::size_t>(m)], orders[static_cast<std::size_t>(k - m)]);
            }
            orders[static_cast<std::size_t>(k)] = std::move(updated);
        }
    }
    SeriesMatrixElement out{Matrix::Zero(d, d), 0.0};
    for (const auto &m : orders) out.value += m;

    double c = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            double sup = 0.0;
            for (const auto &piece : pieces) {
                const double fa = a == 1 ? std::abs(piece.f) : 1.0;
                const double gb = b == 1 ? std::abs(piece.g) : 1.0;
                sup = std::max(sup, fa * gb);
            }
            c = std::max(c, sup * spectral_norm(l(a, b)));
        }
    }
    c *= 4.0;
    out.tail_bound = exponential_tail(c * t, n_max);
    return out;
}

Matrix ode_matrix_element(const ItoCoefficients &l, const StepFunction &f, const StepFunction &g, double t) {
    check_horizon(t);
    const int d = l.dim();
    Matrix m = Matrix::Identity(d, d);
    for (const auto &piece : intervals_of_constancy(f, g, t)) {
        m = multiply(expm(piece.length * coherent_generator(l, piece.f, piece.g)), m);
    }
    return m;
}

}  // namespace qsc

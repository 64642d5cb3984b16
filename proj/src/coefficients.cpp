#include "qsc/coefficients.hpp"

#include "qsc/error.hpp"

#include <algorithm>
#include <cmath>

namespace qsc {

namespace {

const cplx kI{0.0, 1.0};

Matrix &at(MatrixQuad &q, int a, int b) { return q[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

void require_same_dim(const Matrix &a, const Matrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InputError(std::string(what) + ": dimension mismatch");
    }
}

}  // namespace

MatrixQuad zero_quad(int d) {
    MatrixQuad q;
    for (auto &row : q)
        for (auto &m : row) m = Matrix::Zero(d, d);
    return q;
}

DampingConstant::DampingConstant(cplx kappa) : kappa_(kappa) {
    if (!(gamma() > 0.0) || !std::isfinite(kappa.imag())) {
        throw DomainError("damping constant needs gamma = 2 Re(kappa) > 0");
    }
}

CoefficientFamily::CoefficientFamily(MatrixQuad e) : e_(std::move(e)) {
    const auto d = e_[0][0].rows();
    if (d < 1) {
        throw InputError("coefficient family needs d >= 1");
    }
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            if (at(e_, a, b).rows() != d || at(e_, a, b).cols() != d) {
                throw InputError("coefficient E" + std::to_string(a) + std::to_string(b) + " is not " +
                                 std::to_string(d) + "x" + std::to_string(d));
            }
        }
    }
    for (int a = 0; a < 2; ++a) {
        for (int b = a; b < 2; ++b) {
            const double defect = (at(e_, a, b).adjoint() - at(e_, b, a)).cwiseAbs().maxCoeff();
            if (!(defect <= kHermitianTolerance)) {
                const auto ab = std::to_string(a) + std::to_string(b);
                const auto ba = std::to_string(b) + std::to_string(a);
                throw NonHermitianFamily("E" + ab + "^dagger = E" + ba);
            }
        }
    }
}

ItoCoefficients adjoint(const ItoCoefficients &l) {
    ItoCoefficients out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) at(out.l, a, b) = l(b, a).adjoint();
    return out;
}

ItoConversion ito_convert(const CoefficientFamily &e, const DampingConstant &k) {
    const int d = e.dim();
    const cplx kappa = k.kappa();
    const Matrix resolvent_arg = Matrix::Identity(d, d) + kI * kappa * e(1, 1);
    if (smallest_singular_value(resolvent_arg) < kResolventTolerance) {
        throw DomainError("1 + i kappa E11 is singular (smallest singular value below 1e-12)");
    }
    const Matrix resolvent = resolvent_arg.partialPivLu().inverse();

    ItoConversion out;
    out.kappa_e11_norm = spectral_norm(kappa * e(1, 1));
    out.series_condition_violated = out.kappa_e11_norm >= 1.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            at(out.coefficients.l, a, b) = -kI * e(a, b) - kappa * multiply(multiply(e(a, 1), resolvent), e(1, b));
        }
    }
    return out;
}

ItoCoefficients ito_coefficients(const CoefficientFamily &e, const DampingConstant &k) {
    return ito_convert(e, k).coefficients;
}

ItoSeries ito_coefficients_series(const CoefficientFamily &e, const DampingConstant &k, int r_max) {
    if (r_max < 1) {
        throw InputError("ito_coefficients_series needs r_max >= 1");
    }
    const int d = e.dim();
    const cplx kappa = k.kappa();
    const double q = spectral_norm(kappa * e(1, 1));
    if (!(q < 1.0)) {
        throw DomainError("scattering series diverges: requires ||kappa E11|| < 1, got " + std::to_string(q));
    }
    // sum_{r=0}^{r_max-1} (-i kappa E11)^r
    const Matrix step = -kI * kappa * e(1, 1);
    Matrix power = Matrix::Identity(d, d);
    Matrix partial = Matrix::Zero(d, d);
    for (int r = 0; r < r_max; ++r) {
        partial += power;
        power = multiply(power, step);
    }

    ItoSeries out;
    const double tail = std::pow(q, r_max) / (1.0 - q);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            at(out.coefficients.l, a, b) = -kI * e(a, b) - kappa * multiply(multiply(e(a, 1), partial), e(1, b));
            const double c = std::abs(kappa) * spectral_norm(e(a, 1)) * spectral_norm(e(1, b));
            out.error_bound = std::max(out.error_bound, c * tail);
        }
    }
    return out;
}

double unitarity_residual(const ItoCoefficients &l, double gamma) {
    const auto d = l(0, 0).rows();
    double worst = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            if (l(a, b).rows() != d || l(a, b).cols() != d) {
                throw InputError("unitarity_residual: dimension mismatch");
            }
            const Matrix r = l(a, b) + l(b, a).adjoint() + gamma * multiply(l(1, a).adjoint(), l(1, b));
            worst = std::max(worst, spectral_norm(r));
        }
    }
    return worst;
}

ItoSymbol::ItoSymbol(int d) : constant_(Matrix::Zero(d, d)), x_(zero_quad(d)) {}

ItoSymbol::ItoSymbol(Matrix constant, MatrixQuad differentials)
    : constant_(std::move(constant)), x_(std::move(differentials)) {
    if (constant_.rows() != constant_.cols()) {
        throw InputError("Ito symbol coefficients must be square");
    }
    for (const auto &row : x_)
        for (const auto &m : row) require_same_dim(constant_, m, "Ito symbol");
}

ItoSymbol ItoSymbol::differential(int a, int b, const Matrix &coefficient) {
    ItoSymbol s(static_cast<int>(coefficient.rows()));
    at(s.x_, a, b) = coefficient;
    return s;
}

ItoSymbol ItoSymbol::operator+(const ItoSymbol &other) const {
    require_same_dim(constant_, other.constant_, "Ito symbol sum");
    ItoSymbol out(constant_ + other.constant_, x_);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) at(out.x_, a, b) += other(a, b);
    return out;
}

ItoSymbol ItoSymbol::adjoint() const {
    ItoSymbol out(constant_.adjoint(), x_);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) at(out.x_, a, b) = (*this)(b, a).adjoint();
    return out;
}

double ItoSymbol::distance(const ItoSymbol &other) const {
    require_same_dim(constant_, other.constant_, "Ito symbol distance");
    double worst = (constant_ - other.constant_).cwiseAbs().maxCoeff();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) worst = std::max(worst, ((*this)(a, b) - other(a, b)).cwiseAbs().maxCoeff());
    return worst;
}

MatrixQuad ito_correction(const ItoSymbol &x, const ItoSymbol &y) {
    require_same_dim(x.constant(), y.constant(), "ito_correction");
    MatrixQuad out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) at(out, a, b) = multiply(x(a, 1), y(1, b));
    return out;
}

ItoSymbol ito_multiply(const ItoSymbol &x, const ItoSymbol &y) {
    require_same_dim(x.constant(), y.constant(), "ito_multiply");
    const MatrixQuad correction = ito_correction(x, y);
    ItoSymbol out(multiply(x.constant(), y.constant()), correction);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            Matrix &m = at(out.x_, a, b);
            m += multiply(x.constant(), y(a, b));
            m += multiply(x(a, b), y.constant());
        }
    }
    return out;
}

}  // namespace qsc

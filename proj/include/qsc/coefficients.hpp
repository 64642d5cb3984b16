#pragma once
// Interaction coefficients E_{ab}, Ito coefficients L_{ab} and the quantum Ito
// table.  Indices a, b run over {0, 1}: 0 is "no field leg", 1 is one leg.

#include "qsc/linalg.hpp"

#include <array>

namespace qsc {

/// Four d x d matrices indexed [a][b].
using MatrixQuad = std::array<std::array<Matrix, 2>, 2>;

MatrixQuad zero_quad(int d);

class DampingConstant {
  public:
    /// Requires gamma = 2 Re(kappa) > 0.
    explicit DampingConstant(cplx kappa);

    cplx kappa() const noexcept { return kappa_; }
    double gamma() const noexcept { return 2.0 * kappa_.real(); }

  private:
    cplx kappa_;
};

inline constexpr double kHermitianTolerance = 1e-12;

class CoefficientFamily {
  public:
    /// Validates square d x d blocks and E_{ab}^dagger = E_{ba} to 1e-12.
    explicit CoefficientFamily(MatrixQuad e);

    int dim() const noexcept { return static_cast<int>(e_[0][0].rows()); }
    const Matrix &operator()(int a, int b) const { return e_.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b)); }
    const MatrixQuad &matrices() const noexcept { return e_; }

  private:
    MatrixQuad e_;
};

struct ItoCoefficients {
    MatrixQuad l;

    int dim() const { return static_cast<int>(l[0][0].rows()); }
    const Matrix &operator()(int a, int b) const { return l.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b)); }
};

/// The family with L'_{ab} = L_{ba}^dagger.
ItoCoefficients adjoint(const ItoCoefficients &l);

inline constexpr double kResolventTolerance = 1e-12;

struct ItoConversion {
    ItoCoefficients coefficients;
    double kappa_e11_norm = 0.0;   // spectral norm of kappa E11
    bool series_condition_violated = false;  // ||kappa E11|| >= 1
};

/// L_{ab} = -i E_{ab} - kappa E_{a1} (1 + i kappa E11)^{-1} E_{1b}.
/// Throws DomainError if 1 + i kappa E11 has smallest singular value below 1e-12.
ItoConversion ito_convert(const CoefficientFamily &e, const DampingConstant &k);
ItoCoefficients ito_coefficients(const CoefficientFamily &e, const DampingConstant &k);

struct ItoSeries {
    ItoCoefficients coefficients;
    /// max over (a, b) of c_{ab} ||kappa E11||^{r_max},
    /// c_{ab} = |kappa| ||E_{a1}|| ||E_{1b}|| / (1 - ||kappa E11||).
    double error_bound = 0.0;
};

/// The resolvent expanded as sum_{r < r_max} (-i kappa E11)^r.  Requires ||kappa E11|| < 1.
ItoSeries ito_coefficients_series(const CoefficientFamily &e, const DampingConstant &k, int r_max);

/// max_{a,b} || L_{ab} + L_{ba}^dagger + gamma L_{1a}^dagger L_{1b} ||
double unitarity_residual(const ItoCoefficients &l, double gamma);

/// c + x_{ab} dLambda^{ab}
class ItoSymbol {
  public:
    explicit ItoSymbol(int d);
    ItoSymbol(Matrix constant, MatrixQuad differentials);

    static ItoSymbol differential(int a, int b, const Matrix &coefficient);

    int dim() const { return static_cast<int>(constant_.rows()); }
    const Matrix &constant() const noexcept { return constant_; }
    const Matrix &operator()(int a, int b) const {
        return x_.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b));
    }
    const MatrixQuad &differentials() const noexcept { return x_; }

    ItoSymbol operator+(const ItoSymbol &other) const;
    /// Constant -> C^dagger, x_{ab} -> x_{ba}^dagger.
    ItoSymbol adjoint() const;

    /// Largest entrywise difference across all five coefficients.
    double distance(const ItoSymbol &other) const;

  private:
    friend ItoSymbol ito_multiply(const ItoSymbol &x, const ItoSymbol &y);

    Matrix constant_;
    MatrixQuad x_;
};

/// Product under dLambda^{a1} dLambda^{1b} = dLambda^{ab}, all other
/// differential products zero.
ItoSymbol ito_multiply(const ItoSymbol &x, const ItoSymbol &y);

/// The Ito correction terms x_{a1} y_{1b}.
MatrixQuad ito_correction(const ItoSymbol &x, const ItoSymbol &y);

}  // namespace qsc

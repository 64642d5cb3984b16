#pragma once
// Markov-limit numerics: two-point kernels and their lambda scaling, vacuum
// Goldstone diagram integrals over the time-ordered simplex, coherent matrix
// elements of the Ito evolution (truncated series and exact ODE), and the
// summability bounds for the diagram series.

#include "qsc/coefficients.hpp"
#include "qsc/partitions.hpp"
#include "qsc/quadrature.hpp"
#include "qsc/step_function.hpp"

#include <span>
#include <variant>
#include <vector>

namespace qsc {

/// G(u) = c e^{-|u|/tau} e^{i omega u}; c real so that G(-u) = G(u)^*.
struct ExponentialKernel {
    double amplitude;
    double tau;
    double omega;
};

/// samples[k] = G(k h) for k >= 0, linear in between, zero past the table;
/// negative arguments use G(-u) = G(u)^*.
struct TabulatedKernel {
    double step;
    std::vector<cplx> samples;
};

struct KernelMoments {
    double gamma;  // \int_{-inf}^{inf} G
    cplx kappa;    // \int_0^inf G
};

class KernelSpec {
  public:
    /// Throws DomainError unless tau > 0 and gamma > 0.
    static KernelSpec exponential(double amplitude, double tau, double omega = 0.0);
    static KernelSpec tabulated(double step, std::vector<cplx> samples);

    cplx operator()(double u) const;

    bool is_exponential() const noexcept { return std::holds_alternative<ExponentialKernel>(params_); }
    const ExponentialKernel &exponential_params() const { return std::get<ExponentialKernel>(params_); }
    const TabulatedKernel &tabulated_params() const { return std::get<TabulatedKernel>(params_); }

    /// The kernel |G|, in the same family.
    KernelSpec absolute() const;

    /// \int_0^inf |G|
    double abs_half_integral() const;

  private:
    using Params = std::variant<ExponentialKernel, TabulatedKernel>;
    explicit KernelSpec(Params params) : params_(std::move(params)) {}
    Params params_;
};

/// Closed form for the exponential family, adaptive quadrature (abs tol 1e-10)
/// over the table otherwise.
KernelMoments kernel_moments(const KernelSpec &k);

/// G_lambda(u) = lambda^{-2} G(u / lambda^2)
class ScaledKernel {
  public:
    ScaledKernel(KernelSpec base, double lambda);

    cplx operator()(double u) const;
    const KernelSpec &base() const noexcept { return base_; }
    double lambda() const noexcept { return lambda_; }

  private:
    KernelSpec base_;
    double lambda_;
};

inline constexpr int kMaxDiagramIntegralVertices = 6;

enum class DividedDifferenceMethod { automatic, taylor, recursion };

/// \int_{s_m >= 0, sum s_m <= t} exp(a sum_m w_m s_m) ds, i.e. the divided
/// difference of x -> e^{t x} at the points {a w_1, ..., a w_n, 0}.
cplx simplex_exponential_integral(std::span<const int> weights, cplx a, double t,
                                  DividedDifferenceMethod method = DividedDifferenceMethod::automatic);

/// Number of edges spanning each gap t_m - t_{m-1}, m = 1..n (t_0 = 0).
std::vector<int> gap_weights(const GoldstoneDiagram &d);

/// \int_{t > t_n > ... > t_1 > 0} prod_{(i,j)} G_lambda(t_i - t_j).  Exact for
/// exponential kernels; iterated adaptive quadrature (rel tol 1e-6) otherwise.
cplx diagram_integral(const GoldstoneDiagram &d, const ScaledKernel &k, double t);

/// Iterated adaptive quadrature for any kernel, innermost time first.
cplx diagram_integral_quadrature(const GoldstoneDiagram &d, const ComplexFunction &kernel, double t,
                                 double rel_tol = 1e-6);

/// kappa^{#edges} t^m / m! for time-consecutive diagrams with m blocks, 0 otherwise.
cplx markov_limit_prediction(const GoldstoneDiagram &d, cplx kappa, double t);

/// K(s) = sum_{a,b} conj(f(s))^a L_{ab} g(s)^b
Matrix coherent_generator(const ItoCoefficients &l, cplx f_value, cplx g_value);

inline constexpr int kMaxSeriesOrder = 24;

struct SeriesMatrixElement {
    Matrix value;
    double tail_bound;
};

/// sum_{n <= n_max} of the time-ordered iterated integrals of K, exact on each
/// interval of constancy; tail_bound = sum_{n > n_max} (c t)^n / n! with
/// c = 4 max_{a,b} sup_s |f^*(s)^a g(s)^b| ||L_{ab}||.
SeriesMatrixElement series_matrix_element(const ItoCoefficients &l, const StepFunction &f, const StepFunction &g,
                                          double t, int n_max);

/// Ordered product of exp(K_j h_j) over the intervals of constancy, later on the left.
Matrix ode_matrix_element(const ItoCoefficients &l, const StepFunction &f, const StepFunction &g, double t);

/// |kappa'|^{n2} max(t, 1)^{n2} / n2!
double pule_bound_gaussian(int n2, double kappa_abs, double t);

/// exp(e^{A+B} / (1 - e^A)); DomainError unless A < 0.
double xi_bound(double a, double b);

/// sum over (n_1, n_2, ...) with sum_j j n_j = n of exp(sum_j (A j + B) n_j) / prod_j n_j!
double xi_restricted_sum(double a, double b, int n);

struct PuleCheck {
    int vertices;
    double lambda;
    double t;
    double measured;  // sum over pair diagrams of |integral| with kernel |G_lambda|
    double bound;
    bool holds() const { return measured <= bound; }
};

PuleCheck pule_check(const KernelSpec &k, int vertices, double lambda, double t);

struct MarkovRow {
    std::size_t diagram;
    std::string label;  // compact diagram form
    double lambda;
    cplx integral;
    double limit_prediction;  // |kappa^{#edges}| t^m / m!, or 0
    double slope;             // log-log slope against the previous lambda; NaN on the first row
};

inline const std::vector<double> kDefaultLambdaGrid{1.0, 0.5, 0.25, 0.125, 0.0625};

/// Rows ordered by (diagram, lambda order as given).  Diagrams limited to n <= 5.
std::vector<MarkovRow> markov_scan(const KernelSpec &k, std::span<const GoldstoneDiagram> diagrams,
                                   std::span<const double> lambdas, double t);

/// Least-squares slope of log|y| against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace qsc

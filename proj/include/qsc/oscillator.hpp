#pragma once
// Zero-dimensional field theory: vacuum moments and characteristic functions of
// q = z a^dagger + z^* a and N = (a + z)^dagger (a + z) as sums over diagrams,
// with a truncated-Fock matrix oracle for cross-checks.

#include "qsc/linalg.hpp"
#include "qsc/partitions.hpp"

#include <span>
#include <vector>

namespace qsc {

struct Amplitude {
    cplx z{1.0, 0.0};

    double abs2() const noexcept { return std::norm(z); }
};

class TruncatedOscillator {
  public:
    explicit TruncatedOscillator(int dim);

    int dim() const noexcept { return dim_; }
    const Matrix &lowering() const noexcept { return lowering_; }
    const Matrix &raising() const noexcept { return raising_; }

    /// z a^dagger + z^* a
    Matrix field(Amplitude z) const;
    /// (a^dagger + z^*)(a + z)
    Matrix number(Amplitude z) const;

  private:
    int dim_;
    Matrix lowering_;
    Matrix raising_;
};

/// Polynomial in |z|^2: coefficients[m] multiplies |z|^{2m}.
struct ZPolynomial {
    std::vector<BigInt> coefficients;

    double evaluate(double abs_z2) const;
    /// Drops trailing zero coefficients.
    ZPolynomial &normalize();
    friend bool operator==(const ZPolynomial &, const ZPolynomial &) = default;
};

inline constexpr int kMaxMomentQOrder = 16;
inline constexpr int kMaxMomentNOrder = 14;

/// |z|^{2m} (2m)!/(2^m m!) for n = 2m, zero for odd n.
ZPolynomial moment_q_closed_form(int n);
/// One |z|^2 per contraction pair, summed over all pair partitions.
ZPolynomial moment_q_diagram_sum(int n);
double moment_q(int n, Amplitude z);

/// sum_m S(n, m) |z|^{2m}
ZPolynomial moment_N_stirling(int n);
/// One |z|^2 per block, summed over all set partitions (n <= 14, slow past 11).
ZPolynomial moment_N_partition_sum(int n);
double moment_N(int n, Amplitude z);

/// <Omega| exp(i t q) Omega> = exp(-t^2 |z|^2 / 2)
cplx char_q(double t, Amplitude z);
/// <Omega| exp(i t N) Omega> = exp(|z|^2 (e^{it} - 1))
cplx char_N(double t, Amplitude z);
/// exp(sum_{n=1}^{terms} (it)^n |z|^2 / n!): every cumulant equals |z|^2.
cplx char_N_cumulant_series(double t, Amplitude z, int terms);

/// Moment of order n rebuilt from cumulants (cumulants[k] is the order-k cumulant,
/// index 0 unused) by summing products over set partitions.
double moment_from_cumulants(int n, std::span<const double> cumulants);

enum class Symbol { a, adag, z, zconj };

using OperatorWord = std::vector<Symbol>;
/// A sum of words with unit coefficients.
using OperatorSum = std::vector<OperatorWord>;

OperatorSum q_operator();
OperatorSum number_operator();

/// Number of a / a^dagger symbols in a word.
int operator_length(const OperatorWord &word);

/// (vacuum, vacuum) entry of the word's matrix product on TruncatedOscillator(dim).
/// Requires dim >= operator_length(word) + 2 so truncation cannot reach the vacuum entry.
cplx vacuum_moment_numeric(const OperatorWord &word, int dim, Amplitude z);
/// Same for a product of operator sums, e.g. four copies of q_operator() for q^4.
cplx vacuum_moment_numeric(std::span<const OperatorSum> factors, int dim, Amplitude z);

/// <Omega| exp(i t X) Omega> for the Hermitian truncated matrix X.
cplx vacuum_exponential_numeric(const Matrix &hermitian, double t);

}  // namespace qsc

#pragma once
// Small dense complex matrices.  Decompositions come from Eigen; plain products
// go through the runtime-dispatched SIMD gemm.

#include <Eigen/Dense>

#include <complex>

namespace qsc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A * B via the dispatched gemm kernel.
Matrix multiply(const Matrix &a, const Matrix &b);

/// Largest singular value.
double spectral_norm(const Matrix &a);
double smallest_singular_value(const Matrix &a);

/// General matrix exponential (scaling and squaring with Pade approximants).
Matrix expm(const Matrix &a);

/// exp(i * s * H) for Hermitian H, by eigendecomposition.
Matrix hermitian_expm(const Matrix &hermitian, double s);

/// max |A - A^dagger| entrywise.
double hermitian_defect(const Matrix &a);

}  // namespace qsc

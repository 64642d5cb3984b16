#include "qsc/linalg.hpp"

#include "qsc/error.hpp"
#include "qsc/simd/kernels.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace qsc {

Matrix multiply(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows()) {
        throw InputError("matrix product dimension mismatch");
    }
    Matrix c(a.rows(), b.cols());
    simd::gemm(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()),
               static_cast<std::size_t>(b.cols()), a.data(), b.data(), c.data());
    return c;
}

double spectral_norm(const Matrix &a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

double smallest_singular_value(const Matrix &a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

Matrix expm(const Matrix &a) {
    if (a.rows() != a.cols()) {
        throw InputError("matrix exponential of a non-square matrix");
    }
    return a.exp();
}

Matrix hermitian_expm(const Matrix &hermitian, double s) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(hermitian);
    const Eigen::VectorXd &w = eig.eigenvalues();
    Vector phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        phases(k) = std::exp(cplx(0.0, s * w(k)));
    }
    const Matrix &v = eig.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

double hermitian_defect(const Matrix &a) {
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace qsc

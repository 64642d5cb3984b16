#include "qsc/oscillator.hpp"

#include "qsc/error.hpp"

#include <algorithm>
#include <cmath>

namespace qsc {

TruncatedOscillator::TruncatedOscillator(int dim) : dim_(dim) {
    if (dim < 1) {
        throw InputError("oscillator truncation dimension must be positive");
    }
    lowering_ = Matrix::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) {
        lowering_(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    raising_ = lowering_.adjoint();
}

Matrix TruncatedOscillator::field(Amplitude z) const { return z.z * raising_ + std::conj(z.z) * lowering_; }

Matrix TruncatedOscillator::number(Amplitude z) const {
    const Matrix id = Matrix::Identity(dim_, dim_);
    return multiply(raising_ + std::conj(z.z) * id, lowering_ + z.z * id);
}

double ZPolynomial::evaluate(double abs_z2) const {
    double sum = 0.0;
    for (std::size_t m = coefficients.size(); m-- > 0;) {
        sum = sum * abs_z2 + coefficients[m].convert_to<double>();
    }
    return sum;
}

ZPolynomial &ZPolynomial::normalize() {
    while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
    return *this;
}

namespace {

void check_order(int n, int max, const char *what) {
    if (n < 0 || n > max) {
        throw EnumerationBoundError(std::string(what) + " requires 0 <= n <= " + std::to_string(max) + ", got " +
                                    std::to_string(n));
    }
}

}  // namespace

ZPolynomial moment_q_closed_form(int n) {
    check_order(n, kMaxMomentQOrder, "moment_q");
    ZPolynomial p;
    if (n % 2 != 0) return p;
    const int m = n / 2;
    p.coefficients.assign(static_cast<std::size_t>(m) + 1, 0);
    BigInt num = 1;
    for (int k = 2; k <= n; ++k) num *= k;
    BigInt den = 1;
    for (int k = 0; k < m; ++k) den *= 2;
    for (int k = 2; k <= m; ++k) den *= k;
    p.coefficients[static_cast<std::size_t>(m)] = num / den;
    return p;
}

ZPolynomial moment_q_diagram_sum(int n) {
    check_order(n, kMaxMomentQOrder, "moment_q");
    ZPolynomial p;
    if (n == 0) {
        p.coefficients = {1};
        return p;
    }
    for (const auto &d : enumerate_pair_partitions(n)) {
        const auto pairs = d.edges().size();
        if (p.coefficients.size() <= pairs) p.coefficients.resize(pairs + 1, 0);
        p.coefficients[pairs] += 1;
    }
    return p.normalize();
}

double moment_q(int n, Amplitude z) { return moment_q_diagram_sum(n).evaluate(z.abs2()); }

ZPolynomial moment_N_stirling(int n) {
    check_order(n, kMaxMomentNOrder, "moment_N");
    ZPolynomial p;
    p.coefficients = stirling2_row(n);
    return p.normalize();
}

ZPolynomial moment_N_partition_sum(int n) {
    check_order(n, kMaxMomentNOrder, "moment_N");
    ZPolynomial p;
    if (n == 0) {
        p.coefficients = {1};
        return p;
    }
    p.coefficients.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto &partition : enumerate_set_partitions(n)) {
        p.coefficients[partition.block_count()] += 1;
    }
    return p.normalize();
}

double moment_N(int n, Amplitude z) { return moment_N_stirling(n).evaluate(z.abs2()); }

cplx char_q(double t, Amplitude z) { return {std::exp(-0.5 * t * t * z.abs2()), 0.0}; }

cplx char_N(double t, Amplitude z) { return std::exp(z.abs2() * (std::exp(cplx(0.0, t)) - 1.0)); }

cplx char_N_cumulant_series(double t, Amplitude z, int terms) {
    cplx exponent = 0.0;
    cplx power = 1.0;
    for (int n = 1; n <= terms; ++n) {
        power *= cplx(0.0, t) / static_cast<double>(n);
        exponent += power * z.abs2();
    }
    return std::exp(exponent);
}

double moment_from_cumulants(int n, std::span<const double> cumulants) {
    if (n == 0) return 1.0;
    if (static_cast<int>(cumulants.size()) <= n) {
        throw InputError("moment_from_cumulants needs cumulants up to order n");
    }
    double sum = 0.0;
    for (const auto &p : enumerate_set_partitions(n)) {
        double term = 1.0;
        for (const auto &block : p.blocks()) term *= cumulants[block.size()];
        sum += term;
    }
    return sum;
}

OperatorSum q_operator() { return {{Symbol::z, Symbol::adag}, {Symbol::zconj, Symbol::a}}; }

OperatorSum number_operator() {
    return {{Symbol::adag, Symbol::a}, {Symbol::z, Symbol::adag}, {Symbol::zconj, Symbol::a}, {Symbol::z, Symbol::zconj}};
}

int operator_length(const OperatorWord &word) {
    return static_cast<int>(
        std::count_if(word.begin(), word.end(), [](Symbol s) { return s == Symbol::a || s == Symbol::adag; }));
}

namespace {

Matrix word_matrix(const OperatorWord &word, const TruncatedOscillator &osc, Amplitude z) {
    Matrix m = Matrix::Identity(osc.dim(), osc.dim());
    cplx scalar = 1.0;
    for (Symbol s : word) {
        switch (s) {
        case Symbol::a: m = multiply(m, osc.lowering()); break;
        case Symbol::adag: m = multiply(m, osc.raising()); break;
        case Symbol::z: scalar *= z.z; break;
        case Symbol::zconj: scalar *= std::conj(z.z); break;
        }
    }
    return scalar * m;
}

void check_dimension(int length, int dim) {
    if (dim < length + 2) {
        throw InputError("truncation dimension " + std::to_string(dim) + " too small for " + std::to_string(length) +
                         " ladder operators (need at least " + std::to_string(length + 2) + ")");
    }
}

}  // namespace

cplx vacuum_moment_numeric(const OperatorWord &word, int dim, Amplitude z) {
    if (word.size() > 20) {
        throw InputError("operator word longer than 20 symbols");
    }
    check_dimension(operator_length(word), dim);
    const TruncatedOscillator osc(dim);
    return word_matrix(word, osc, z)(0, 0);
}

cplx vacuum_moment_numeric(std::span<const OperatorSum> factors, int dim, Amplitude z) {
    int length = 0;
    for (const auto &factor : factors) {
        int longest = 0;
        for (const auto &word : factor) longest = std::max(longest, operator_length(word));
        length += longest;
    }
    check_dimension(length, dim);
    const TruncatedOscillator osc(dim);
    Matrix product = Matrix::Identity(dim, dim);
    for (const auto &factor : factors) {
        Matrix sum = Matrix::Zero(dim, dim);
        for (const auto &word : factor) sum += word_matrix(word, osc, z);
        product = multiply(product, sum);
    }
    return product(0, 0);
}

cplx vacuum_exponential_numeric(const Matrix &hermitian, double t) {
    if (hermitian.rows() != hermitian.cols() || hermitian.rows() == 0) {
        throw InputError("vacuum_exponential_numeric needs a non-empty square matrix");
    }
    if (hermitian_defect(hermitian) > 1e-12) throw InputError("vacuum_exponential_numeric needs a Hermitian matrix");
    return hermitian_expm(hermitian, t)(0, 0);
}

}  // namespace qsc

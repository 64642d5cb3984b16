#include "qsc/dyson.hpp"
#include "qsc/error.hpp"

#include <cmath>

namespace qsc {

KernelSpec KernelSpec::exponential(double amplitude, double tau, double omega) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError("exponential kernel needs tau > 0 (non-integrable otherwise)");
    }
    if (!std::isfinite(amplitude) || !std::isfinite(omega)) {
        throw InputError("exponential kernel parameters must be finite");
    }
    if (!(amplitude > 0.0)) {
        throw DomainError("exponential kernel needs gamma > 0, i.e. a positive amplitude");
    }
    return KernelSpec(ExponentialKernel{amplitude, tau, omega});
}

KernelSpec KernelSpec::tabulated(double step, std::vector<cplx> samples) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw DomainError("tabulated kernel needs a positive step");
    }
    if (samples.size() < 2) {
        throw InputError("tabulated kernel needs at least two samples");
    }
    for (const auto &s : samples) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw InputError("tabulated kernel samples must be finite");
        }
    }
    if (std::abs(samples.front().imag()) > 1e-12) {
        throw InputError("tabulated kernel needs a real value at u = 0 (G(-u) = G(u)^*)");
    }
    samples.front() = samples.front().real();
    KernelSpec spec(TabulatedKernel{step, std::move(samples)});
    if (!(kernel_moments(spec).gamma > 0.0)) {
        throw DomainError("tabulated kernel needs gamma > 0");
    }
    return spec;
}

namespace {

cplx tabulated_value(const TabulatedKernel &k, double u) {
    const double x = u / k.step;
    const auto last = static_cast<double>(k.samples.size() - 1);
    if (x > last) return 0.0;
    const double lower = std::floor(x);
    const auto i = static_cast<std::size_t>(lower);
    if (i + 1 >= k.samples.size()) return k.samples.back();
    const double frac = x - lower;
    return (1.0 - frac) * k.samples[i] + frac * k.samples[i + 1];
}

}  // namespace

cplx KernelSpec::operator()(double u) const {
    const double r = std::abs(u);
    cplx value;
    if (const auto *e = std::get_if<ExponentialKernel>(&params_)) {
        value = e->amplitude * std::exp(cplx(-r / e->tau, e->omega * r));
    } else {
        value = tabulated_value(std::get<TabulatedKernel>(params_), r);
    }
    return u < 0.0 ? std::conj(value) : value;
}

KernelSpec KernelSpec::absolute() const {
    if (const auto *e = std::get_if<ExponentialKernel>(&params_)) {
        return KernelSpec(ExponentialKernel{std::abs(e->amplitude), e->tau, 0.0});
    }
    auto table = std::get<TabulatedKernel>(params_);
    for (auto &s : table.samples) s = std::abs(s);
    return KernelSpec(std::move(table));
}

double KernelSpec::abs_half_integral() const {
    if (const auto *e = std::get_if<ExponentialKernel>(&params_)) {
        return std::abs(e->amplitude) * e->tau;
    }
    const auto &table = std::get<TabulatedKernel>(params_);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < table.samples.size(); ++k) {
        const double a = table.step * static_cast<double>(k);
        sum += integrate([this](double u) -> cplx { return std::abs((*this)(u)); }, a, a + table.step).value.real();
    }
    return sum;
}

KernelMoments kernel_moments(const KernelSpec &k) {
    if (k.is_exponential()) {
        const auto &e = k.exponential_params();
        const double wt = e.omega * e.tau;
        return {2.0 * e.amplitude * e.tau / (1.0 + wt * wt), e.amplitude * e.tau / cplx(1.0, -wt)};
    }
    const auto &table = k.tabulated_params();
    const auto intervals = table.samples.size() - 1;
    QuadratureOptions options;
    options.abs_tol = 1e-10 / static_cast<double>(intervals);
    options.rel_tol = 0.0;
    const ComplexFunction g = [&k](double u) { return k(u); };
    cplx kappa = 0.0;
    cplx whole = 0.0;
    for (std::size_t i = 0; i < intervals; ++i) {
        const double a = table.step * static_cast<double>(i);
        const double b = a + table.step;
        kappa += integrate(g, a, b, options).value;
        whole += integrate(g, -b, -a, options).value;
    }
    whole += kappa;
    return {whole.real(), kappa};
}

ScaledKernel::ScaledKernel(KernelSpec base, double lambda) : base_(std::move(base)), lambda_(lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InputError("kernel scale lambda must be positive");
    }
}

cplx ScaledKernel::operator()(double u) const {
    const double l2 = lambda_ * lambda_;
    return base_(u / l2) / l2;
}

}  // namespace qsc

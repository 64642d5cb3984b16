#include "qsc/toyfock.hpp"

#include "qsc/dyson.hpp"
#include "qsc/error.hpp"
#include "qsc/simd/kernels.hpp"

#include <cmath>

namespace qsc {

SlotLattice::SlotLattice(double horizon, int slots) : horizon_(horizon), slots_(slots) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InputError("slot lattice horizon must be positive");
    if (slots < 1) throw InputError("slot lattice needs at least one slot");
}

Matrix slot_transfer(const ItoCoefficients &l, cplx f_k, cplx g_k, double dt, SlotPropagator mode) {
    if (!(dt > 0.0)) throw InputError("slot width must be positive");
    const int d = l.dim();
    if (mode == SlotPropagator::exponential) {
        return expm(dt * coherent_generator(l, f_k, g_k));
    }
    const cplx fbar = std::conj(f_k);
    const cplx weights[2][2] = {{1.0, g_k}, {fbar, fbar * g_k}};
    Matrix t = Matrix::Identity(d, d);
    const auto n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            simd::axpy(dt * weights[a][b], std::span<const cplx>(l(a, b).data(), n), std::span<cplx>(t.data(), n));
        }
    }
    return t;
}

TransferChain::TransferChain(int d) : product_(Matrix::Identity(d, d)) {}

void TransferChain::append(Matrix transfer) {
    if (transfer.rows() != product_.rows() || transfer.cols() != product_.cols()) {
        throw InputError("transfer matrix dimension mismatch");
    }
    product_ = multiply(transfer, product_);
    slots_.push_back(std::move(transfer));
}

void TransferChain::extend(const TransferChain &later) {
    if (later.product_.rows() != product_.rows()) {
        throw InputError("transfer chain dimension mismatch");
    }
    product_ = multiply(later.product_, product_);
    slots_.insert(slots_.end(), later.slots_.begin(), later.slots_.end());
}

namespace {

void check_alignment(const StepFunction &h, const SlotLattice &lattice, const char *name) {
    const double dt = lattice.dt();
    for (double b : h.breakpoints()) {
        if (b >= lattice.horizon() * (1.0 - 1e-12)) break;
        const double x = b / dt;
        if (std::abs(x - std::round(x)) > 1e-9 * std::max(1.0, x)) {
            throw AlignmentError(std::string("breakpoint ") + std::to_string(b) + " of " + name +
                                 " is not on the slot lattice (dt = " + std::to_string(dt) + "); refine the lattice");
        }
    }
}

}  // namespace

TransferChain build_transfer_chain(const ItoCoefficients &l, const StepFunction &f, const StepFunction &g,
                                   const SlotLattice &lattice, int first, int last, SlotPropagator mode) {
    if (first < 0 || last > lattice.slots() || first > last) {
        throw InputError("slot range outside the lattice");
    }
    const double dt = lattice.dt();
    TransferChain chain(l.dim());
    for (int k = first; k < last; ++k) {
        const double mid = lattice.slot_start(k) + 0.5 * dt;
        chain.append(slot_transfer(l, f(mid), g(mid), dt, mode));
    }
    return chain;
}

CoherentMatrixElement coherent_matrix_element(const ItoCoefficients &l, const StepFunction &f, const StepFunction &g,
                                              const SlotLattice &lattice, SlotPropagator mode) {
    const double t = lattice.horizon();
    const double slack = 1e-12 * t;
    if (f.end() < t - slack || g.end() < t - slack) {
        throw InputError("step functions do not cover the lattice horizon");
    }
    check_alignment(f, lattice, "f");
    check_alignment(g, lattice, "g");

    const auto chain = build_transfer_chain(l, f, g, lattice, 0, lattice.slots(), mode);
    double c = 0.0;
    const double dt = lattice.dt();
    for (int k = 0; k < lattice.slots(); ++k) {
        const double mid = lattice.slot_start(k) + 0.5 * dt;
        c = std::max(c, spectral_norm(coherent_generator(l, f(mid), g(mid))));
    }
    const double n = lattice.slots();
    const double growth = std::exp(c * t);
    const double bound = mode == SlotPropagator::first_order
                             ? n * 0.5 * (c * dt) * (c * dt) * std::exp(c * dt) * growth
                             : n * 1e-13 * growth;
    return {chain.product(), coherent_normalization(f, g, t), dt, bound};
}

std::vector<ConvergenceRow> convergence_scan(const ItoCoefficients &l, const StepFunction &f, const StepFunction &g,
                                             double t, const std::vector<int> &slot_counts, SlotPropagator mode) {
    for (std::size_t i = 1; i < slot_counts.size(); ++i) {
        if (slot_counts[i] <= slot_counts[i - 1]) throw InputError("slot counts must be increasing");
    }
    const Matrix reference = ode_matrix_element(l, f, g, t);
    std::vector<ConvergenceRow> rows;
    for (int slots : slot_counts) {
        const SlotLattice lattice(t, slots);
        const auto element = coherent_matrix_element(l, f, g, lattice, mode);
        rows.push_back({slots, lattice.dt(), spectral_norm(element.transfer - reference)});
    }
    return rows;
}

}  // namespace qsc

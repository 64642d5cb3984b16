#pragma once
// Discrete-time oracle for the Ito evolution: one noise slot per time step,
// coherent slot states contracted to a chain of system-space transfer matrices.

#include "qsc/coefficients.hpp"
#include "qsc/step_function.hpp"

#include <vector>

namespace qsc {

class SlotLattice {
  public:
    SlotLattice(double horizon, int slots);

    double horizon() const noexcept { return horizon_; }
    int slots() const noexcept { return slots_; }
    double dt() const noexcept { return horizon_ / slots_; }
    /// Left end of slot k.
    double slot_start(int k) const noexcept { return k * dt(); }

  private:
    double horizon_;
    int slots_;
};

enum class SlotPropagator {
    first_order,  // 1 + K dt
    exponential,  // exp(K dt)
};

/// 1 + (f_k^{*a} L_{ab} g_k^b) dt, or its exponential.
Matrix slot_transfer(const ItoCoefficients &l, cplx f_k, cplx g_k, double dt,
                     SlotPropagator mode = SlotPropagator::first_order);

/// Per-slot transfer matrices and their ordered product T_{n-1} ... T_1 T_0.
class TransferChain {
  public:
    explicit TransferChain(int d);

    void append(Matrix transfer);
    /// Appends another chain's slots after this one's.
    void extend(const TransferChain &later);

    std::size_t size() const noexcept { return slots_.size(); }
    const Matrix &slot(std::size_t k) const { return slots_.at(k); }
    const Matrix &product() const noexcept { return product_; }

  private:
    std::vector<Matrix> slots_;
    Matrix product_;
};

/// Builds the chain over lattice slots [first, last).
TransferChain build_transfer_chain(const ItoCoefficients &l, const StepFunction &f, const StepFunction &g,
                                   const SlotLattice &lattice, int first, int last,
                                   SlotPropagator mode = SlotPropagator::first_order);

struct CoherentMatrixElement {
    Matrix transfer;      // <u| transfer |v> times normalization is the full matrix element
    cplx normalization;   // exp(\int_0^t conj(f) g)
    double dt;
    double error_bound;   // bound on || transfer - exact time-ordered exponential ||
};

/// Throws AlignmentError if a breakpoint of f or g is not a lattice point.
CoherentMatrixElement coherent_matrix_element(const ItoCoefficients &l, const StepFunction &f, const StepFunction &g,
                                              const SlotLattice &lattice,
                                              SlotPropagator mode = SlotPropagator::first_order);

struct ConvergenceRow {
    int slots;
    double dt;
    double deviation;  // spectral norm against the exact ODE solution
};

std::vector<ConvergenceRow> convergence_scan(const ItoCoefficients &l, const StepFunction &f, const StepFunction &g,
                                             double t, const std::vector<int> &slot_counts,
                                             SlotPropagator mode = SlotPropagator::first_order);

}  // namespace qsc

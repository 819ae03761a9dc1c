#ifndef KLEIN_KRYLOV_HPP
#define KLEIN_KRYLOV_HPP

#include "klein/fock.hpp"
#include "klein/hamiltonian.hpp"

namespace klein {

struct KrylovOptions {
    double tol = 1e-10;     // per-step accuracy of the exponential action
    int max_dim = 60;       // Krylov subspace cap before the step is split
    double cutoff_guard = 1e-6;  // top-level occupation limit
};

// exp(-i H dt) applied n_steps times via a Lanczos subspace with adaptive
// dimension. Throws CutoffOverflowError (with step index and occupancy)
// if the truncation guard trips mid-run.
FockVector propagate(const FockVector& state, const HamiltonianSpec& h,
                     double dt, int n_steps, const KrylovOptions& opts = {});

// Single exponential action on a raw vector; used by state preparation.
Eigen::VectorXcd expm_action(const Eigen::SparseMatrix<Complex>& h,
                             const Eigen::VectorXcd& v, double t,
                             const KrylovOptions& opts = {});

}  // namespace klein

#endif  // KLEIN_KRYLOV_HPP

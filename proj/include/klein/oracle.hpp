#ifndef KLEIN_ORACLE_HPP
#define KLEIN_ORACLE_HPP

#include "klein/dirac_params.hpp"
#include "klein/fock.hpp"
#include "klein/spinor.hpp"

namespace klein {
namespace oracle {

// Dense-matrix reference propagator exp(-i H t) v via Pade scaling and
// squaring. Deliberately a different algorithm from the Lanczos fast path.
// Dimension capped at 256.
Eigen::VectorXcd dense_expm_propagate(const Eigen::VectorXcd& state,
                                      const Eigen::MatrixXcd& hamiltonian,
                                      double t);

// Exact free-particle evolution: per-momentum 2x2 diagonalization. Ground
// truth for the split-operator path at any dt.
SpinorField free_dirac_momentum_solution(const SpinorField& spinor,
                                         const DiracParams& params, double t);

struct CoherentReference {
    Complex alpha;
    Eigen::VectorXcd amplitudes;  // Poissonian Fock amplitudes
    // Characteristic function <e^{i k x}> = exp(i k <x>) exp(-k^2/2)
    // for this state (<x> = 2 Re alpha, Delta = 1).
    double characteristic_real(double k) const;
    double characteristic_imag(double k) const;
};

// Closed-form coherent state |alpha> on `cutoff` levels. Requires
// |alpha|^2 well below the cutoff.
CoherentReference coherent_state_reference(Complex alpha, int cutoff);

}  // namespace oracle
}  // namespace klein

#endif  // KLEIN_ORACLE_HPP

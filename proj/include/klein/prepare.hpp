#ifndef KLEIN_PREPARE_HPP
#define KLEIN_PREPARE_HPP

#include "klein/fock.hpp"
#include "klein/hamiltonian.hpp"

namespace klein {

// Phase-space convention, fixed once: a coherent state |alpha> has
//   <x> = 2 Re(alpha)   (x = a + a^dag, Delta = 1)
//   <p> = Im(alpha)     (p = i(a^dag - a)/2, hbar = 1)
// so a momentum kick p0 corresponds to alpha = i p0 and mean phonon
// number p0^2.
inline Complex alpha_from_xp(double x, double p) { return Complex(x / 2.0, p); }

struct PrepRecipe {
    enum class Kind { MomentumKick, Prep2, Prep2PlusKick } kind;
    // Qubit2 preparation: sigma_x +1 eigenstate for linear potentials,
    // sigma_z +1 eigenstate for quadratic ones.
    enum class Qubit2 { SigmaXPlus, SigmaZPlus } qubit2 = Qubit2::SigmaXPlus;
    double p0 = 0.0;           // kick momentum (hbar/Delta)
    double duration_us = 16.0; // prep-2 pulse length
};

// Starting point: oscillator ground state, both qubits in (|0>+|1>)/sqrt(2)
// except the Prep2 recipes, which start qubit1 in |0> per the pulse scheme.
// Displacements are realized by Krylov exponentiation of the corresponding
// drive Hamiltonians, not by closed-form amplitudes (those live in the
// oracle module).
FockVector prepare_initial(const IonParams& ion, const PrepRecipe& recipe);

}  // namespace klein

#endif  // KLEIN_PREPARE_HPP

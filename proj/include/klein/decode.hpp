#ifndef KLEIN_DECODE_HPP
#define KLEIN_DECODE_HPP

#include "klein/fock.hpp"
#include "klein/spinor.hpp"

namespace klein {

// Harmonic-oscillator eigenfunctions psi_n(x) for x = (a + a^dag) Delta,
// i.e. psi_0 = (2 pi)^(-1/4) exp(-x^2/4) with Delta = 1. Row n holds
// psi_n sampled on the grid.
Eigen::MatrixXd hermite_table(const Grid& grid, int n_levels);

struct DecodedState {
    SpinorField spinor;      // valid only when qubit2_pure
    VectorXd density;        // always valid: diagonal of the motional state
    bool qubit2_pure = false;
    double qubit2_purity = 0.0;
};

// Position-space decode of a FockVector. When qubit2's reduced state is
// pure beyond 1 - 1e-3 it is projected out and the exact two-component
// spinor (paired with the qubit1 basis) is returned; otherwise only the
// motional density is trustworthy and qubit2_pure is cleared.
DecodedState decode_spinor(const FockVector& state, const Grid& grid);

// Projection of a spinor onto the truncated Fock basis (used by the
// round-trip checks and by Dirac-side reconstruction inputs).
FockVector encode_spinor(const SpinorField& spinor, int cutoff);

}  // namespace klein

#endif  // KLEIN_DECODE_HPP

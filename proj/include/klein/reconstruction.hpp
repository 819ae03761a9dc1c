#ifndef KLEIN_RECONSTRUCTION_HPP
#define KLEIN_RECONSTRUCTION_HPP

#include <string>

#include "klein/fock.hpp"
#include "klein/spinor.hpp"

namespace klein {

// Measured probe fringes <sigma_z^(2)>(k) for the two qubit2 preparations.
// k runs uniformly from 0 to k_max (1/Delta).
struct FringeScan {
    VectorXd k_values;
    VectorXd sin_signal;  // qubit2 prepared in (|0>+|1>)/sqrt(2)
    VectorXd cos_signal;  // qubit2 prepared in |1>
};

// Signs relating the raw <sigma_z> fringes to the characteristic function
// <e^{i k x}> = cos_sign * cos_signal + i * sin_sign * sin_signal. Fixed
// once against the dense N=20 oracle and frozen (regression-tested).
inline constexpr double kCosSignalSign = -1.0;
inline constexpr double kSinSignalSign = -1.0;

struct UndersampledScanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Probe protocol: qubit2 is prepared, the joint qubit2 (x) motion state
// evolves under exp(-i k x sigma_y^(2) / 2), and <sigma_z^(2)> is read
// out. Exact in the position eigenbasis of the truncated x operator.
// `rho_motion` is the reduced motional density operator (trace 1).
FringeScan acquire_fringes(const Eigen::MatrixXcd& rho_motion, double k_max,
                           int n_k);

struct InvertedDensity {
    VectorXd density;        // clipped at 0 and renormalized
    VectorXd raw;            // pre-clip Fourier output (diagnostics)
    double negativity = 0.0; // integrated magnitude of the clipped ripple
};

// Fourier inversion of the fringe data onto the grid. Throws
// UndersampledScanError if the k spacing cannot cover the grid extent.
InvertedDensity invert_fringes(const FringeScan& scan, const Grid& grid);

struct FilterResult {
    FockVector state;       // renormalized post-selected state
    double probability = 0.0;
    // Clear when qubit1 is not in (approximately) sigma_x-diagonal form,
    // i.e. the pi/2 mapping pulse does not cleanly separate the branches.
    bool internal_ok = true;
};

// pi/2 pulse on qubit1 mapping the sigma_x eigenstates to the measurement
// basis, followed by projection. `branch` is the energy branch to keep;
// `momentum_sign` is the sign of <p> of the packet being filtered (branch
// and internal sigma_x eigenvalue coincide only up to that sign).
FilterResult filter_energy_branch(const FockVector& state, int branch,
                                  int momentum_sign = +1);

// Gaussian-windowed local momentum expectation <p>(x); the color-scale
// companion of the density panels.
VectorXd branch_momentum_profile(const SpinorField& spinor,
                                 double window = 1.0);

void write_fringe_csv(const FringeScan& scan, const std::string& path);
FringeScan read_fringe_csv(const std::string& path);

}  // namespace klein

#endif  // KLEIN_RECONSTRUCTION_HPP

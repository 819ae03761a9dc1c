#include "klein/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace klein {
namespace oracle {

Eigen::VectorXcd dense_expm_propagate(const Eigen::VectorXcd& state,
                                      const Eigen::MatrixXcd& hamiltonian,
                                      double t) {
    if (hamiltonian.rows() > 256)
        throw std::invalid_argument("dense_expm_propagate: dimension > 256");
    if (hamiltonian.rows() != hamiltonian.cols() ||
        hamiltonian.rows() != state.size())
        throw std::invalid_argument("dense_expm_propagate: shape mismatch");
    const Eigen::MatrixXcd gen = Complex(0.0, -t) * hamiltonian;
    return gen.exp() * state;
}

SpinorField free_dirac_momentum_solution(const SpinorField& spinor,
                                         const DiracParams& params, double t) {
    if (params.potential != PotentialKind::None)
        throw std::invalid_argument(
            "free_dirac_momentum_solution: potential must be None");
    const Grid& grid = spinor.grid;
    VectorXcd up, lp;
    to_momentum_space(spinor, up, lp);
    for (int k = 0; k < grid.n(); ++k) {
        const double cp = params.c * grid.p()[k];
        const double e = std::hypot(cp, params.mc2);
        const double th = e * t;
        const double co = std::cos(th);
        const double si = e > 0.0 ? std::sin(th) / e : 0.0;
        const Complex mi(0.0, -1.0);
        const Complex uu = up[k], ll = lp[k];
        up[k] = co * uu + mi * si * (params.mc2 * uu + cp * ll);
        lp[k] = co * ll + mi * si * (cp * uu - params.mc2 * ll);
    }
    return from_momentum_space(grid, up, lp, spinor.time + t);
}

double CoherentReference::characteristic_real(double k) const {
    return std::cos(k * 2.0 * alpha.real()) * std::exp(-k * k / 2.0);
}

double CoherentReference::characteristic_imag(double k) const {
    return std::sin(k * 2.0 * alpha.real()) * std::exp(-k * k / 2.0);
}

CoherentReference coherent_state_reference(Complex alpha, int cutoff) {
    if (std::norm(alpha) > 0.25 * cutoff)
        throw std::invalid_argument(
            "coherent_state_reference: |alpha|^2 too close to cutoff");
    CoherentReference ref;
    ref.alpha = alpha;
    ref.amplitudes.resize(cutoff);
    // c_n = e^{-|a|^2/2} a^n / sqrt(n!), built by the stable ratio recurrence.
    Complex c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < cutoff; ++n) {
        ref.amplitudes[n] = c;
        c *= alpha / std::sqrt(n + 1.0);
    }
    return ref;
}

}  // namespace oracle
}  // namespace klein

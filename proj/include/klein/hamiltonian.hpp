#ifndef KLEIN_HAMILTONIAN_HPP
#define KLEIN_HAMILTONIAN_HPP

#include <Eigen/Sparse>
#include <vector>

#include "klein/analytic.hpp"
#include "klein/fock.hpp"

namespace klein {

enum class PauliAxis { I, X, Y, Z };
enum class OscCoupling { Identity, Position, Momentum };
enum class LambDickeMode { Ideal, Corrected };
enum class Scenario { Free, Linear, Quadratic };

// One product term strength * sigma_axis^(ion) * O(a, a^dag).
struct HamiltonianTerm {
    int ion = 1;  // 1 or 2
    PauliAxis axis = PauliAxis::Z;
    OscCoupling coupling = OscCoupling::Identity;
    double strength = 0.0;  // rad/us
};

struct HamiltonianSpec {
    std::vector<HamiltonianTerm> terms;
    int cutoff = 0;
    LambDickeMode lamb_dicke_mode = LambDickeMode::Ideal;
    double eta = 0.0;  // used only in Corrected mode

    // Sparse matrix in the FockVector product basis. Hermitian to 1e-12.
    Eigen::SparseMatrix<Complex> assemble() const;
};

// Assembles the drive Hamiltonians:
//   Free/Linear:  c sigma_x^(1) p + mc2 sigma_z^(1) [+ g sigma_x^(2) x]
//   Quadratic:    ... + eta*omega_tilde2 sigma_x^(2) x + omega2 sigma_z^(2)
// with x = a + a^dag (Delta = 1) and p = i(a^dag - a)/2 (hbar = 1).
HamiltonianSpec build_hamiltonian(const IonParams& ion, Scenario scenario,
                                  LambDickeMode mode = LambDickeMode::Ideal);

// Same terms with sideband couplings carrying the exact n-dependent
// matrix elements: the <n+1| ladder element sqrt(n+1) is scaled by
// f_n = exp(-eta^2/2) L_n^1(eta^2) / (n+1), which -> 1 as eta -> 0.
HamiltonianSpec lamb_dicke_corrected_couplings(const IonParams& ion,
                                               Scenario scenario);

// The n -> n+1 sideband correction factor f_n above.
double lamb_dicke_factor(int n, double eta);

// Preparation pulse generator H = -eta * omega_prep2 * x * sigma_x^(1);
// the sign is the bichromatic phase choice that pairs the +1 eigenstate of
// sigma_x^(1) with positive momentum.
HamiltonianSpec build_prep_hamiltonian(const IonParams& ion);

// Momentum-kick generator: propagating this for 1 us applies exp(i p0 x),
// displacing <p> by +p0.
HamiltonianSpec build_kick_hamiltonian(double p0, int cutoff);

}  // namespace klein

#endif  // KLEIN_HAMILTONIAN_HPP

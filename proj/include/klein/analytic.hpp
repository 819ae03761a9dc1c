#ifndef KLEIN_ANALYTIC_HPP
#define KLEIN_ANALYTIC_HPP

#include <stdexcept>

#include "klein/dirac_params.hpp"
#include "klein/units.hpp"

namespace klein {

// Laboratory-side knobs. All frequencies are angular, in rad/us; use
// rad_per_us_from_kHz when reading values quoted in kHz.
struct IonParams {
    double eta = 0.044;        // Lamb-Dicke parameter
    double delta_nm = 7.0;     // ground-state width in nm; metadata only
    double omega_tilde1 = 0.0; // bichromatic Rabi frequency, ion 1
    double omega1 = 0.0;       // half the overall detuning (rest-mass term)
    double omega_tilde2 = 0.0; // bichromatic Rabi frequency, ion 2
    double omega2 = 0.0;       // detuning of the ion-2 drive (quadratic case)
    double omega_prep2 = 0.0;  // preparation-pulse Rabi frequency
    int fock_cutoff = 256;

    void validate() const {
        if (!(eta > 0.0 && eta < 0.3))
            throw std::invalid_argument("IonParams: eta outside (0, 0.3)");
        if (omega_tilde1 < 0 || omega1 < 0 || omega_tilde2 < 0 || omega2 < 0 ||
            omega_prep2 < 0)
            throw std::invalid_argument("IonParams: negative frequency");
        if (fock_cutoff < 8)
            throw std::invalid_argument("IonParams: fock_cutoff < 8");
    }
};

// c := 2 eta omega_tilde1 (Delta/us), mc^2 := omega1.
// Linear slope g = eta * omega_tilde2; quadratic curvature
// q = eta^2 omega_tilde2^2 / (2 omega2).
DiracParams map_ion_to_dirac(const IonParams& ion, PotentialKind kind);

// Landau-Zener adiabaticity parameter Gamma = (mc^2)^2 / (2 c g).
double klein_gamma(double mc2, double c, double g);

// Same quantity from raw laboratory frequencies:
// Gamma = omega1^2 / (4 eta^2 omega_tilde1 omega_tilde2).
double ion_gamma(const IonParams& ion);

// P_tunnel = exp(-2 pi Gamma).
double tunnel_prob_analytic(double gamma);

}  // namespace klein

#endif  // KLEIN_ANALYTIC_HPP

#include "klein/analytic.hpp"

#include <cmath>

namespace klein {

DiracParams map_ion_to_dirac(const IonParams& ion, PotentialKind kind) {
    ion.validate();
    DiracParams d;
    d.c = 2.0 * ion.eta * ion.omega_tilde1;
    d.mc2 = ion.omega1;
    d.potential = kind;
    switch (kind) {
        case PotentialKind::None:
            d.strength = 0.0;
            break;
        case PotentialKind::Linear:
            d.strength = ion.eta * ion.omega_tilde2;
            break;
        case PotentialKind::Quadratic: {
            if (!(ion.omega2 > 0.0))
                throw std::invalid_argument(
                    "map_ion_to_dirac: quadratic mapping needs omega2 > 0");
            d.strength = ion.eta * ion.eta * ion.omega_tilde2 * ion.omega_tilde2 /
                         (2.0 * ion.omega2);
            break;
        }
    }
    return d;
}

double klein_gamma(double mc2, double c, double g) {
    if (!(g > 0.0)) throw std::invalid_argument("klein_gamma: g must be positive");
    return mc2 * mc2 / (2.0 * c * g);
}

double ion_gamma(const IonParams& ion) {
    if (!(ion.omega_tilde1 > 0.0) || !(ion.omega_tilde2 > 0.0))
        throw std::invalid_argument("ion_gamma: omega_tilde1/2 must be positive");
    return ion.omega1 * ion.omega1 /
           (4.0 * ion.eta * ion.eta * ion.omega_tilde1 * ion.omega_tilde2);
}

double tunnel_prob_analytic(double gamma) {
    if (gamma < 0.0)
        throw std::invalid_argument("tunnel_prob_analytic: Gamma must be >= 0");
    return std::exp(-kTwoPi * gamma);  // underflows to exact 0 for large Gamma
}

}  // namespace klein

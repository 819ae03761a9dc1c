#ifndef KLEIN_DIRAC_PARAMS_HPP
#define KLEIN_DIRAC_PARAMS_HPP

#include <stdexcept>

namespace klein {

enum class PotentialKind { None, Linear, Quadratic };

// Simulated-physics parameters of H = c p sigma_x + mc^2 sigma_z + phi(x).
// c in Delta/us, mc2 in rad/us; strength is g (rad/us per Delta) for a
// linear potential phi = g x, or q (rad/us per Delta^2) for phi = q x^2.
struct DiracParams {
    double c = 0.0;
    double mc2 = 0.0;
    PotentialKind potential = PotentialKind::None;
    double strength = 0.0;

    double phi(double x) const {
        switch (potential) {
            case PotentialKind::None: return 0.0;
            case PotentialKind::Linear: return strength * x;
            case PotentialKind::Quadratic: return strength * x * x;
        }
        return 0.0;
    }

    void validate() const {
        if (!(c > 0.0)) throw std::invalid_argument("DiracParams: c must be positive");
        if (mc2 < 0.0) throw std::invalid_argument("DiracParams: mc2 must be >= 0");
        if (potential == PotentialKind::Linear && strength < 0.0)
            throw std::invalid_argument("DiracParams: linear slope g must be >= 0");
    }
};

}  // namespace klein

#endif  // KLEIN_DIRAC_PARAMS_HPP

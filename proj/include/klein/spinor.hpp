#ifndef KLEIN_SPINOR_HPP
#define KLEIN_SPINOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "klein/grid.hpp"

namespace klein {

using Complex = std::complex<double>;
using VectorXcd = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;

// Two-component wavefunction on a position grid. Operations return new
// values; a SpinorField is never mutated in place by the library.
struct SpinorField {
    Grid grid;
    VectorXcd upper;  // paired with qubit basis state (1,0)
    VectorXcd lower;  // paired with qubit basis state (0,1)
    double time = 0.0;  // us

    double norm_squared() const {
        return (upper.squaredNorm() + lower.squaredNorm()) * grid.dx();
    }

    VectorXd density() const {
        return (upper.cwiseAbs2() + lower.cwiseAbs2());
    }

    double mean_x() const {
        double s = 0.0;
        const auto& xs = grid.x();
        for (int j = 0; j < grid.n(); ++j)
            s += xs[j] * (std::norm(upper[j]) + std::norm(lower[j]));
        return s * grid.dx() / norm_squared();
    }

    // <sigma_x> of the internal state, weighted over the grid.
    double mean_sigma_x() const {
        double s = 0.0;
        for (int j = 0; j < grid.n(); ++j)
            s += 2.0 * std::real(std::conj(upper[j]) * lower[j]);
        return s * grid.dx() / norm_squared();
    }

    SpinorField normalized() const {
        SpinorField out = *this;
        double n = std::sqrt(norm_squared());
        if (n <= 0.0) throw std::runtime_error("SpinorField: zero norm");
        out.upper /= n;
        out.lower /= n;
        return out;
    }
};

struct GridTooNarrowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gaussian wavepacket exp(i p0 x) exp(-(x-x0)^2 / (4 width^2)) with the
// given internal 2-vector, normalized. Throws GridTooNarrowError if the
// boundary density exceeds `tail_tol`.
SpinorField make_gaussian_spinor(const Grid& grid, double x0, double p0,
                                 double width, Complex internal_upper,
                                 Complex internal_lower,
                                 double tail_tol = 1e-12);

// Initial state of the quadratic-potential experiments: a ground-state
// Gaussian whose sigma_x = +1 (-1) internal component carries momentum
// +lambda (-lambda), optionally boosted by an extra overall momentum.
// This is the continuum image of the bichromatic x*sigma_x preparation
// pulse acting on internal state (1,0).
SpinorField make_prep_spinor(const Grid& grid, double lambda,
                             double extra_p0 = 0.0);

// <p> via FFT (hbar/Delta units).
double mean_p(const SpinorField& s);

// Momentum-space amplitudes (FFT convention of the propagator); weight of
// mode k is |amp|^2 * dx / n.
void to_momentum_space(const SpinorField& s, VectorXcd& upper_p,
                       VectorXcd& lower_p);
SpinorField from_momentum_space(const Grid& grid, const VectorXcd& upper_p,
                                const VectorXcd& lower_p, double time);

}  // namespace klein

#endif  // KLEIN_SPINOR_HPP

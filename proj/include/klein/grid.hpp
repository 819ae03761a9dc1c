#ifndef KLEIN_GRID_HPP
#define KLEIN_GRID_HPP

#include <stdexcept>
#include <vector>

#include "klein/units.hpp"

namespace klein {

// Uniform position grid together with its discrete Fourier dual.
// Positions are in units of Delta, momenta in hbar/Delta. n_points must be
// a power of two (radix-2 FFT path in the propagator).
class Grid {
public:
    Grid() : Grid(16, -1.0, 1.0) {}

    Grid(int n_points, double x_min, double x_max)
        : n_(n_points), x_min_(x_min), x_max_(x_max) {
        if (n_points < 16 || (n_points & (n_points - 1)) != 0)
            throw std::invalid_argument("Grid: n_points must be a power of two >= 16");
        if (!(x_max > x_min))
            throw std::invalid_argument("Grid: x_max must exceed x_min");
        dx_ = (x_max - x_min) / n_;
        dp_ = kTwoPi / (n_ * dx_);
        x_.resize(n_);
        p_.resize(n_);
        for (int j = 0; j < n_; ++j) {
            x_[j] = x_min + j * dx_;
            // FFT ordering: non-negative frequencies first.
            p_[j] = (j < n_ / 2) ? j * dp_ : (j - n_) * dp_;
        }
    }

    int n() const { return n_; }
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double dx() const { return dx_; }
    double dp() const { return dp_; }
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& p() const { return p_; }

    bool operator==(const Grid& o) const {
        return n_ == o.n_ && x_min_ == o.x_min_ && x_max_ == o.x_max_;
    }

private:
    int n_;
    double x_min_, x_max_, dx_, dp_;
    std::vector<double> x_, p_;
};

// Shipped default: wide enough for >150 mean phonons plus packet motion.
inline Grid default_grid() { return Grid(2048, -64.0, 64.0); }

}  // namespace klein

#endif  // KLEIN_GRID_HPP

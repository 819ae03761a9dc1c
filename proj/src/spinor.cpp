#include "klein/spinor.hpp"

#include <unsupported/Eigen/FFT>

namespace klein {

namespace {

// One FFT engine per thread; plans are cached per transform size.
Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

void fft_forward(const VectorXcd& in, VectorXcd& out) {
    out.resize(in.size());
    fft_engine().fwd(out.data(), in.data(), in.size());
}

void fft_inverse(const VectorXcd& in, VectorXcd& out) {
    out.resize(in.size());
    fft_engine().inv(out.data(), in.data(), in.size());
}

}  // namespace

SpinorField make_gaussian_spinor(const Grid& grid, double x0, double p0,
                                 double width, Complex internal_upper,
                                 Complex internal_lower, double tail_tol) {
    if (!(width > 0.0))
        throw std::invalid_argument("make_gaussian_spinor: width must be positive");
    const int n = grid.n();
    SpinorField s{grid, VectorXcd(n), VectorXcd(n), 0.0};
    const double inorm = std::sqrt(std::norm(internal_upper) + std::norm(internal_lower));
    if (inorm <= 0.0)
        throw std::invalid_argument("make_gaussian_spinor: zero internal vector");
    const Complex iu = internal_upper / inorm;
    const Complex il = internal_lower / inorm;
    for (int j = 0; j < n; ++j) {
        const double x = grid.x()[j];
        const double arg = (x - x0) / (2.0 * width);
        const Complex amp = std::exp(Complex(-arg * arg, p0 * x));
        s.upper[j] = iu * amp;
        s.lower[j] = il * amp;
    }
    SpinorField out = s.normalized();
    const double edge = std::max(out.density()[0], out.density()[n - 1]);
    if (edge > tail_tol)
        throw GridTooNarrowError("make_gaussian_spinor: boundary density " +
                                 std::to_string(edge) + " exceeds tolerance");
    return out;
}

SpinorField make_prep_spinor(const Grid& grid, double lambda, double extra_p0) {
    const int n = grid.n();
    SpinorField s{grid, VectorXcd(n), VectorXcd(n), 0.0};
    for (int j = 0; j < n; ++j) {
        const double x = grid.x()[j];
        const Complex boost = std::exp(Complex(0.0, extra_p0 * x));
        const double gauss = std::exp(-x * x / 4.0);
        // (|+x> e^{+i lambda x} + |-x> e^{-i lambda x}) / sqrt(2)
        s.upper[j] = boost * gauss * std::cos(lambda * x);
        s.lower[j] = boost * gauss * Complex(0.0, 1.0) * std::sin(lambda * x);
    }
    return s.normalized();
}

void to_momentum_space(const SpinorField& s, VectorXcd& upper_p,
                       VectorXcd& lower_p) {
    fft_forward(s.upper, upper_p);
    fft_forward(s.lower, lower_p);
}

SpinorField from_momentum_space(const Grid& grid, const VectorXcd& upper_p,
                                const VectorXcd& lower_p, double time) {
    SpinorField s{grid, VectorXcd(grid.n()), VectorXcd(grid.n()), time};
    fft_inverse(upper_p, s.upper);
    fft_inverse(lower_p, s.lower);
    return s;
}

double mean_p(const SpinorField& s) {
    VectorXcd up, lp;
    to_momentum_space(s, up, lp);
    const auto& ps = s.grid.p();
    double num = 0.0, den = 0.0;
    for (int k = 0; k < s.grid.n(); ++k) {
        const double w = std::norm(up[k]) + std::norm(lp[k]);
        num += ps[k] * w;
        den += w;
    }
    return num / den;
}

}  // namespace klein

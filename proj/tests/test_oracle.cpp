#include <doctest.h>

#include <cmath>
#include <complex>

#include "klein/oracle.hpp"
#include "klein/spinor.hpp"
#include "klein/units.hpp"

using namespace klein;
using oracle::coherent_state_reference;
using oracle::dense_expm_propagate;
using oracle::free_dirac_momentum_solution;

TEST_CASE("coherent reference reproduces the Poisson amplitudes") {
    const Complex alpha(1.2, -0.7);
    const auto ref = coherent_state_reference(alpha, 64);
    CHECK(ref.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));

    // Direct formula for a few low n, no recurrence.
    double fact = 1.0;
    for (int n = 0; n < 6; ++n) {
        if (n > 0) fact *= n;
        const Complex direct = std::exp(-0.5 * std::norm(alpha)) *
                               std::pow(alpha, n) / std::sqrt(fact);
        CHECK(std::abs(ref.amplitudes[n] - direct) < 1e-14);
    }

    // <n> = |alpha|^2.
    double mean_n = 0.0;
    for (int n = 0; n < 64; ++n) mean_n += n * std::norm(ref.amplitudes[n]);
    CHECK(mean_n == doctest::Approx(std::norm(alpha)).epsilon(1e-10));
}

TEST_CASE("coherent reference rejects amplitudes too close to the cutoff") {
    CHECK_THROWS_AS(coherent_state_reference(Complex(4.0, 0.0), 32),
                    std::invalid_argument);
}

TEST_CASE("characteristic function has the right k = 0 limit and envelope") {
    const auto ref = coherent_state_reference(Complex(0.8, 0.3), 64);
    CHECK(ref.characteristic_real(0.0) == doctest::Approx(1.0));
    CHECK(ref.characteristic_imag(0.0) == doctest::Approx(0.0));
    // <x> = 2 Re alpha = 1.6, vacuum envelope exp(-k^2/2).
    const double k = 0.9;
    CHECK(ref.characteristic_real(k) ==
          doctest::Approx(std::cos(1.6 * k) * std::exp(-k * k / 2.0)));
    CHECK(ref.characteristic_imag(k) ==
          doctest::Approx(std::sin(1.6 * k) * std::exp(-k * k / 2.0)));
}

TEST_CASE("characteristic function matches a direct Fock-basis sum") {
    // <e^{ikx}> evaluated by exponentiating x = a + a^dag densely.
    const Complex alpha(0.9, 0.0);
    const int cutoff = 48;
    const auto ref = coherent_state_reference(alpha, cutoff);
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    for (int n = 0; n + 1 < cutoff; ++n) {
        x(n, n + 1) = std::sqrt(n + 1.0);
        x(n + 1, n) = std::sqrt(n + 1.0);
    }
    for (double k : {0.3, 0.8, 1.7}) {
        // exp(ikx) = exp(-i (-k x) * 1).
        const Eigen::VectorXcd kicked =
            dense_expm_propagate(ref.amplitudes, -k * x, 1.0);
        const Complex chi = ref.amplitudes.dot(kicked);
        CHECK(chi.real() == doctest::Approx(ref.characteristic_real(k)).epsilon(1e-8));
        CHECK(chi.imag() == doctest::Approx(ref.characteristic_imag(k)).epsilon(1e-8));
    }
}

TEST_CASE("dense propagator reproduces a two-level Rabi rotation") {
    Eigen::MatrixXcd h(2, 2);
    const double omega = 0.37;
    h << 0.0, omega, omega, 0.0;  // omega sigma_x
    Eigen::VectorXcd v(2);
    v << 1.0, 0.0;
    const double t = 2.3;
    const Eigen::VectorXcd out = dense_expm_propagate(v, h, t);
    CHECK(std::abs(out[0] - std::cos(omega * t)) < 1e-12);
    CHECK(std::abs(out[1] - Complex(0.0, -std::sin(omega * t))) < 1e-12);
    CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dense propagator rejects oversized or mismatched inputs") {
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(300, 300);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(300);
    CHECK_THROWS_AS(dense_expm_propagate(v, big, 1.0), std::invalid_argument);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(3);
    CHECK_THROWS_AS(dense_expm_propagate(w, h, 1.0), std::invalid_argument);
}

TEST_CASE("free momentum solution: massless positive-energy packet moves at c") {
    const Grid g = default_grid();
    DiracParams p;
    p.c = 0.01;
    p.mc2 = 0.0;
    p.potential = PotentialKind::None;
    // sigma_x = +1 internal state: group velocity +c for every momentum.
    const SpinorField s0 =
        make_gaussian_spinor(g, 0.0, 2.0, 1.0, 1.0 / std::sqrt(2.0),
                             1.0 / std::sqrt(2.0));
    const SpinorField s1 = free_dirac_momentum_solution(s0, p, 2000.0);
    CHECK(s1.norm_squared() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s1.mean_x() == doctest::Approx(p.c * 2000.0).epsilon(1e-6));
    CHECK(mean_p(s1) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("free momentum solution: pure mass term is a Rabi rotation") {
    const Grid g = default_grid();
    DiracParams p;
    p.c = 1e-30;  // negligible kinetic term, same code path
    p.mc2 = rad_per_us_from_kHz(1.3);
    p.potential = PotentialKind::None;
    const SpinorField s0 = make_gaussian_spinor(g, 0.0, 0.0, 1.0, 1.0, 0.0);
    const double t = 137.0;
    const SpinorField s1 = free_dirac_momentum_solution(s0, p, t);
    // (1,0) is a sigma_z eigenstate: only a phase, density unchanged.
    CHECK((s1.density() - s0.density()).cwiseAbs().maxCoeff() < 1e-10);
    const double phase_upper = std::arg(s1.upper[g.n() / 2] / s0.upper[g.n() / 2]);
    const double expect = -std::remainder(p.mc2 * t, 2.0 * kPi);
    CHECK(std::remainder(phase_upper - (-p.mc2 * t), 2.0 * kPi) ==
          doctest::Approx(0.0).epsilon(1e-8));
    (void)expect;
}

TEST_CASE("free momentum solution refuses a potential") {
    const Grid g = default_grid();
    DiracParams p;
    p.c = 0.01;
    p.mc2 = 0.0;
    p.potential = PotentialKind::Linear;
    p.strength = 0.01;
    const SpinorField s0 = make_gaussian_spinor(g, 0.0, 0.0, 1.0, 1.0, 0.0);
    CHECK_THROWS_AS(free_dirac_momentum_solution(s0, p, 1.0),
                    std::invalid_argument);
}

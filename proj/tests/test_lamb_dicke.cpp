#include <doctest.h>

#include <cmath>

#include "klein/hamiltonian.hpp"
#include "klein/oracle.hpp"
#include "klein/units.hpp"

using namespace klein;

namespace {

IonParams linear_ion(double eta, int cutoff) {
    IonParams ion;
    ion.eta = eta;
    ion.omega1 = rad_per_us_from_kHz(1.3);
    ion.omega_tilde1 = rad_per_us_from_kHz(17.5);
    ion.omega_tilde2 = rad_per_us_from_kHz(22.0);
    ion.fock_cutoff = cutoff;
    return ion;
}

}  // namespace

TEST_CASE("correction factor -> 1 as eta -> 0, for all reachable n") {
    for (int n : {0, 1, 10, 50, 150}) {
        CHECK(std::abs(lamb_dicke_factor(n, 1e-6) - 1.0) < 1e-9);
    }
}

TEST_CASE("correction factor shrinks the high-n sideband elements") {
    const double eta = 0.044;
    double prev = lamb_dicke_factor(0, eta);
    CHECK(prev < 1.0);
    for (int n = 1; n <= 200; ++n) {
        const double f = lamb_dicke_factor(n, eta);
        CHECK(f < prev);  // monotone decay until the Laguerre zero
        CHECK(f > 0.0);   // first zero of L_n^1(eta^2) is far above n = 200
        prev = f;
    }
}

TEST_CASE("correction factor matches the exact displacement matrix element") {
    // <n+1| e^{i eta x} |n> = i eta sqrt(n+1) f_n with x = a + a^dag,
    // checked against a dense exponential at a hard point (n = 150).
    const int cutoff = 256;
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    for (int n = 0; n + 1 < cutoff; ++n) {
        x(n, n + 1) = std::sqrt(n + 1.0);
        x(n + 1, n) = std::sqrt(n + 1.0);
    }
    for (double eta : {0.044, 0.15, 0.29}) {
        for (int n : {0, 5, 60, 150}) {
            Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(cutoff);
            basis[n] = 1.0;
            // e^{i eta x} = exp(-i (-eta x) * 1).
            const Eigen::VectorXcd kicked =
                oracle::dense_expm_propagate(basis, -eta * x, 1.0);
            const Complex element = kicked[n + 1];
            const Complex expect =
                Complex(0.0, eta) * std::sqrt(n + 1.0) *
                lamb_dicke_factor(n, eta);
            CHECK(std::abs(element - expect) < 1e-9);
        }
    }
}

TEST_CASE("corrected couplings collapse onto the ideal ones at tiny eta") {
    IonParams ion = linear_ion(1e-5, 24);
    // Keep c and g finite while eta -> 0 by scaling the Rabi rates up.
    ion.omega_tilde1 *= 0.044 / ion.eta;
    ion.omega_tilde2 *= 0.044 / ion.eta;
    const Eigen::MatrixXcd ideal(
        build_hamiltonian(ion, Scenario::Linear, LambDickeMode::Ideal).assemble());
    const Eigen::MatrixXcd corr(
        lamb_dicke_corrected_couplings(ion, Scenario::Linear).assemble());
    const double scale = ideal.cwiseAbs().maxCoeff();
    CHECK((ideal - corr).cwiseAbs().maxCoeff() / scale < 1e-8);
}

TEST_CASE("at the experimental eta the corrected drive is measurably softer") {
    IonParams ion = linear_ion(0.044, 64);
    const Eigen::MatrixXcd ideal(
        build_hamiltonian(ion, Scenario::Linear, LambDickeMode::Ideal).assemble());
    const Eigen::MatrixXcd corr(
        lamb_dicke_corrected_couplings(ion, Scenario::Linear).assemble());
    // The n = 50 sideband element is reduced by about f_50 ~ 0.95.
    const int j = FockVector::index(0, 0, 50, 64);
    const int k = FockVector::index(0, 1, 51, 64);  // sigma_x^(2) x flips q2
    const double ratio = std::abs(corr(j, k)) / std::abs(ideal(j, k));
    CHECK(ratio == doctest::Approx(lamb_dicke_factor(50, 0.044)).epsilon(1e-12));
    CHECK(ratio < 0.98);
    CHECK(ratio > 0.90);
}

#include "klein/hamiltonian.hpp"

#include <cmath>

namespace klein {

namespace {

// Generalized Laguerre polynomial L_n^1 evaluated by the three-term
// recurrence; x = eta^2 is tiny so this is well conditioned.
double laguerre1(int n, double x) {
    if (n == 0) return 1.0;
    double lm1 = 1.0;          // L_0^1
    double l = 2.0 - x;        // L_1^1
    for (int k = 1; k < n; ++k) {
        const double lp1 = ((2.0 * k + 2.0 - x) * l - (k + 1.0) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

Complex pauli_element(PauliAxis axis, int row, int col) {
    switch (axis) {
        case PauliAxis::I: return row == col ? 1.0 : 0.0;
        case PauliAxis::X: return row != col ? 1.0 : 0.0;
        case PauliAxis::Y:
            if (row == 0 && col == 1) return Complex(0.0, -1.0);
            if (row == 1 && col == 0) return Complex(0.0, 1.0);
            return 0.0;
        case PauliAxis::Z: return row == col ? (row == 0 ? 1.0 : -1.0) : 0.0;
    }
    return 0.0;
}

}  // namespace

double lamb_dicke_factor(int n, double eta) {
    const double x = eta * eta;
    return std::exp(-x / 2.0) * laguerre1(n, x) / (n + 1.0);
}

Eigen::SparseMatrix<Complex> HamiltonianSpec::assemble() const {
    const int n = cutoff;
    const int dim = 4 * n;
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(terms.size() * dim * 2);

    for (const HamiltonianTerm& term : terms) {
        if (term.strength == 0.0) continue;
        // Oscillator matrix elements: list of (row n_r, col n_c, value).
        for (int q1r = 0; q1r < 2; ++q1r)
            for (int q1c = 0; q1c < 2; ++q1c)
                for (int q2r = 0; q2r < 2; ++q2r)
                    for (int q2c = 0; q2c < 2; ++q2c) {
                        const Complex p1 = term.ion == 1
                                               ? pauli_element(term.axis, q1r, q1c)
                                               : (q1r == q1c ? 1.0 : 0.0);
                        const Complex p2 = term.ion == 2
                                               ? pauli_element(term.axis, q2r, q2c)
                                               : (q2r == q2c ? 1.0 : 0.0);
                        const Complex qfac = term.strength * p1 * p2;
                        if (qfac == Complex(0.0)) continue;
                        switch (term.coupling) {
                            case OscCoupling::Identity:
                                for (int m = 0; m < n; ++m)
                                    trip.emplace_back(
                                        FockVector::index(q1r, q2r, m, n),
                                        FockVector::index(q1c, q2c, m, n), qfac);
                                break;
                            case OscCoupling::Position:
                            case OscCoupling::Momentum:
                                for (int m = 0; m + 1 < n; ++m) {
                                    double elem = std::sqrt(m + 1.0);
                                    if (lamb_dicke_mode == LambDickeMode::Corrected)
                                        elem *= lamb_dicke_factor(m, eta);
                                    Complex raise, lower;
                                    if (term.coupling == OscCoupling::Position) {
                                        raise = elem;  // <m+1| x |m>
                                        lower = elem;
                                    } else {
                                        raise = Complex(0.0, 0.5) * elem;  // <m+1| p |m>
                                        lower = Complex(0.0, -0.5) * elem;
                                    }
                                    trip.emplace_back(
                                        FockVector::index(q1r, q2r, m + 1, n),
                                        FockVector::index(q1c, q2c, m, n),
                                        qfac * raise);
                                    trip.emplace_back(
                                        FockVector::index(q1r, q2r, m, n),
                                        FockVector::index(q1c, q2c, m + 1, n),
                                        qfac * lower);
                                }
                                break;
                        }
                    }
    }
    Eigen::SparseMatrix<Complex> h(dim, dim);
    h.setFromTriplets(trip.begin(), trip.end());
    return h;
}

HamiltonianSpec build_hamiltonian(const IonParams& ion, Scenario scenario,
                                  LambDickeMode mode) {
    ion.validate();
    HamiltonianSpec spec;
    spec.cutoff = ion.fock_cutoff;
    spec.lamb_dicke_mode = mode;
    spec.eta = ion.eta;
    // Free Dirac part: c sigma_x^(1) p + mc2 sigma_z^(1).
    spec.terms.push_back({1, PauliAxis::X, OscCoupling::Momentum,
                          2.0 * ion.eta * ion.omega_tilde1});
    spec.terms.push_back({1, PauliAxis::Z, OscCoupling::Identity, ion.omega1});
    switch (scenario) {
        case Scenario::Free:
            break;
        case Scenario::Linear:
            spec.terms.push_back({2, PauliAxis::X, OscCoupling::Position,
                                  ion.eta * ion.omega_tilde2});
            break;
        case Scenario::Quadratic:
            if (!(ion.omega2 > 0.0))
                throw std::invalid_argument(
                    "build_hamiltonian: quadratic scenario needs omega2 > 0");
            spec.terms.push_back({2, PauliAxis::X, OscCoupling::Position,
                                  ion.eta * ion.omega_tilde2});
            spec.terms.push_back({2, PauliAxis::Z, OscCoupling::Identity,
                                  ion.omega2});
            break;
    }
    return spec;
}

HamiltonianSpec lamb_dicke_corrected_couplings(const IonParams& ion,
                                               Scenario scenario) {
    return build_hamiltonian(ion, scenario, LambDickeMode::Corrected);
}

HamiltonianSpec build_prep_hamiltonian(const IonParams& ion) {
    ion.validate();
    HamiltonianSpec spec;
    spec.cutoff = ion.fock_cutoff;
    spec.terms.push_back({1, PauliAxis::X, OscCoupling::Position,
                          -ion.eta * ion.omega_prep2});
    return spec;
}

HamiltonianSpec build_kick_hamiltonian(double p0, int cutoff) {
    HamiltonianSpec spec;
    spec.cutoff = cutoff;
    spec.terms.push_back({1, PauliAxis::I, OscCoupling::Position, -p0});
    return spec;
}

}  // namespace klein

#ifndef KLEIN_FOCK_HPP
#define KLEIN_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace klein {

using Complex = std::complex<double>;

// Joint state of qubit1 (x) qubit2 (x) oscillator, truncated at `cutoff`
// number states. Basis index: ((q1*2 + q2) * cutoff) + n, with q = 0 the
// upper internal level (1,0) and q = 1 the lower (0,1).
struct FockVector {
    int cutoff = 0;
    Eigen::VectorXcd amp;
    double time = 0.0;  // us

    static int index(int q1, int q2, int n, int cutoff) {
        return (q1 * 2 + q2) * cutoff + n;
    }
    Complex& at(int q1, int q2, int n) { return amp[index(q1, q2, n, cutoff)]; }
    Complex at(int q1, int q2, int n) const { return amp[index(q1, q2, n, cutoff)]; }

    int dim() const { return 4 * cutoff; }
    double norm() const { return amp.norm(); }

    // Occupation summed over the top 5% of Fock levels; must stay < 1e-6
    // for the truncation to be trusted.
    double top_level_occupation() const {
        const int guard = std::max(1, cutoff / 20);
        double s = 0.0;
        for (int q1 = 0; q1 < 2; ++q1)
            for (int q2 = 0; q2 < 2; ++q2)
                for (int n = cutoff - guard; n < cutoff; ++n)
                    s += std::norm(at(q1, q2, n));
        return s;
    }

    double mean_phonon() const {
        double s = 0.0;
        for (int q1 = 0; q1 < 2; ++q1)
            for (int q2 = 0; q2 < 2; ++q2)
                for (int n = 0; n < cutoff; ++n)
                    s += n * std::norm(at(q1, q2, n));
        return s / amp.squaredNorm();
    }

    // Reduced motional density operator (qubits traced out).
    Eigen::MatrixXcd motional_density() const {
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(cutoff, cutoff);
        for (int q1 = 0; q1 < 2; ++q1)
            for (int q2 = 0; q2 < 2; ++q2) {
                const auto block = amp.segment((q1 * 2 + q2) * cutoff, cutoff);
                rho.noalias() += block * block.adjoint();
            }
        return rho;
    }

    // Reduced 2x2 density matrix of one qubit (which = 1 or 2).
    Eigen::Matrix2cd qubit_density(int which) const {
        Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int other = 0; other < 2; ++other) {
                    const int qa1 = which == 1 ? a : other;
                    const int qa2 = which == 1 ? other : a;
                    const int qb1 = which == 1 ? b : other;
                    const int qb2 = which == 1 ? other : b;
                    Complex s = 0.0;
                    for (int n = 0; n < cutoff; ++n)
                        s += at(qa1, qa2, n) * std::conj(at(qb1, qb2, n));
                    rho(a, b) += s;
                }
        return rho;
    }
};

// Ground state of the oscillator with both qubits in (|0> + |1>)/sqrt(2).
FockVector fock_ground_state(int cutoff);

// Ground state with explicit qubit amplitudes.
FockVector fock_product_state(int cutoff, Complex q1_up, Complex q1_down,
                              Complex q2_up, Complex q2_down);

struct CutoffOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace klein

#endif  // KLEIN_FOCK_HPP

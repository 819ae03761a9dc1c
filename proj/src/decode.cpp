#include "klein/decode.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace klein {

Eigen::MatrixXd hermite_table(const Grid& grid, int n_levels) {
    const int nx = grid.n();
    Eigen::MatrixXd table(n_levels, nx);
    for (int j = 0; j < nx; ++j) {
        const double x = grid.x()[j];
        const double psi0 = std::pow(2.0 * kPi, -0.25) * std::exp(-x * x / 4.0);
        table(0, j) = psi0;
        if (n_levels > 1) table(1, j) = x * psi0;  // x/Delta * psi0 / sqrt(1)
        // Ladder recurrence: psi_{n+1} = (x psi_n - sqrt(n) psi_{n-1}) / sqrt(n+1).
        for (int n = 1; n + 1 < n_levels; ++n)
            table(n + 1, j) =
                (x * table(n, j) - std::sqrt((double)n) * table(n - 1, j)) /
                std::sqrt(n + 1.0);
    }
    return table;
}

DecodedState decode_spinor(const FockVector& state, const Grid& grid) {
    const int nc = state.cutoff;
    const Eigen::MatrixXd herm = hermite_table(grid, nc);

    DecodedState out;
    out.spinor = SpinorField{grid, VectorXcd::Zero(grid.n()),
                             VectorXcd::Zero(grid.n()), state.time};

    // Four position-space branches psi_{q1,q2}(x).
    Eigen::MatrixXcd branches(4, grid.n());
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2) {
            const auto block =
                state.amp.segment((q1 * 2 + q2) * nc, nc).transpose();
            branches.row(q1 * 2 + q2) = block * herm.cast<Complex>();
        }
    out.density = branches.cwiseAbs2().colwise().sum().real().transpose();
    const double total = out.density.sum() * grid.dx();
    if (total > 0.0) out.density /= total;

    const Eigen::Matrix2cd rho2 = state.qubit_density(2);
    out.qubit2_purity = std::real((rho2 * rho2).trace());
    out.qubit2_pure = out.qubit2_purity > 1.0 - 1e-3;
    if (out.qubit2_pure) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho2);
        const Eigen::Vector2cd chi = es.eigenvectors().col(1);  // dominant
        for (int q1 = 0; q1 < 2; ++q1) {
            VectorXcd comp = (std::conj(chi[0]) * branches.row(q1 * 2 + 0) +
                              std::conj(chi[1]) * branches.row(q1 * 2 + 1))
                                 .transpose();
            if (q1 == 0)
                out.spinor.upper = comp;
            else
                out.spinor.lower = comp;
        }
        out.spinor = out.spinor.normalized();
    }
    return out;
}

FockVector encode_spinor(const SpinorField& spinor, int cutoff) {
    const Grid& grid = spinor.grid;
    const Eigen::MatrixXd herm = hermite_table(grid, cutoff);
    FockVector v;
    v.cutoff = cutoff;
    v.time = spinor.time;
    v.amp = Eigen::VectorXcd::Zero(4 * cutoff);
    const double s = 1.0 / std::sqrt(2.0);
    const VectorXcd cu = herm.cast<Complex>() * spinor.upper * grid.dx();
    const VectorXcd cl = herm.cast<Complex>() * spinor.lower * grid.dx();
    for (int n = 0; n < cutoff; ++n) {
        v.at(0, 0, n) = s * cu[n];
        v.at(0, 1, n) = s * cu[n];
        v.at(1, 0, n) = s * cl[n];
        v.at(1, 1, n) = s * cl[n];
    }
    v.amp /= v.amp.norm();
    return v;
}

}  // namespace klein

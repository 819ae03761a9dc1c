#include "klein/krylov.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace klein {

namespace {

// One Lanczos exponential action exp(-i t H) v. Returns false if the
// subspace cap was reached without meeting the tolerance (caller splits
// the step).
bool lanczos_try(const Eigen::SparseMatrix<Complex>& h,
                 const Eigen::VectorXcd& v, double t, double tol, int max_dim,
                 Eigen::VectorXcd& out) {
    const double beta0 = v.norm();
    if (beta0 == 0.0) {
        out = v;
        return true;
    }
    const int dim = (int)v.size();
    const int m_cap = std::min(max_dim, dim);

    Eigen::MatrixXcd basis(dim, m_cap);
    std::vector<double> alpha, beta;  // tridiagonal entries
    basis.col(0) = v / beta0;

    int m = 0;
    Eigen::VectorXcd w;
    for (m = 1; m <= m_cap; ++m) {
        w = h * basis.col(m - 1);
        if (m > 1) w -= beta[m - 2] * basis.col(m - 2);
        const double a = std::real(basis.col(m - 1).dot(w));
        alpha.push_back(a);
        w -= a * basis.col(m - 1);
        // One round of reorthogonalization keeps the basis clean over
        // the modest subspace sizes used here.
        w -= basis.leftCols(m) * (basis.leftCols(m).adjoint() * w);
        const double b = w.norm();

        // Exponentiate the current tridiagonal projection.
        Eigen::MatrixXd tmat = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            tmat(i, i) = alpha[i];
            if (i + 1 < m) tmat(i, i + 1) = tmat(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tmat);
        Eigen::VectorXcd phases(m);
        for (int i = 0; i < m; ++i)
            phases[i] = std::exp(Complex(0.0, -t * es.eigenvalues()[i]));
        Eigen::VectorXcd small =
            es.eigenvectors().cast<Complex>() *
            (phases.array() * es.eigenvectors().row(0).transpose().cast<Complex>().array())
                .matrix();

        const double err = (m < dim) ? b * std::abs(small[m - 1]) * std::abs(t) : 0.0;
        if (b < 1e-14 || err < tol || m == m_cap) {
            if (b >= 1e-14 && err >= tol && m == m_cap) return false;
            out = beta0 * (basis.leftCols(m) * small);
            return true;
        }
        beta.push_back(b);
        basis.col(m) = w / b;
    }
    return false;
}

}  // namespace

Eigen::VectorXcd expm_action(const Eigen::SparseMatrix<Complex>& h,
                             const Eigen::VectorXcd& v, double t,
                             const KrylovOptions& opts) {
    Eigen::VectorXcd out;
    if (lanczos_try(h, v, t, opts.tol, opts.max_dim, out)) return out;
    // Subspace cap hit: split the interval and recurse.
    Eigen::VectorXcd half = expm_action(h, v, t / 2.0, opts);
    return expm_action(h, half, t / 2.0, opts);
}

FockVector propagate(const FockVector& state, const HamiltonianSpec& h,
                     double dt, int n_steps, const KrylovOptions& opts) {
    if (state.top_level_occupation() >= opts.cutoff_guard)
        throw CutoffOverflowError(
            "propagate: initial state already violates the cutoff guard");
    const Eigen::SparseMatrix<Complex> mat = h.assemble();
    FockVector cur = state;
    for (int step = 0; step < n_steps; ++step) {
        cur.amp = expm_action(mat, cur.amp, dt, opts);
        cur.time += dt;
        const double top = cur.top_level_occupation();
        if (top >= opts.cutoff_guard)
            throw CutoffOverflowError(
                "propagate: cutoff guard tripped at step " + std::to_string(step) +
                " (top occupation " + std::to_string(top) + ", <n> = " +
                std::to_string(cur.mean_phonon()) + ")");
    }
    return cur;
}

}  // namespace klein

#include "klein/reconstruction.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace klein {

namespace {

// Eigendecomposition of the truncated position operator x = a + a^dag.
struct PositionBasis {
    VectorXd x;           // eigenvalues
    Eigen::MatrixXd v;    // columns are eigenvectors (real tridiagonal)
};

PositionBasis position_basis(int cutoff) {
    Eigen::MatrixXd xop = Eigen::MatrixXd::Zero(cutoff, cutoff);
    for (int n = 0; n + 1 < cutoff; ++n)
        xop(n, n + 1) = xop(n + 1, n) = std::sqrt(n + 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xop);
    return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

FringeScan acquire_fringes(const Eigen::MatrixXcd& rho_motion, double k_max,
                           int n_k) {
    if (n_k < 2 || !(k_max > 0.0))
        throw std::invalid_argument("acquire_fringes: bad scan parameters");
    const int cutoff = (int)rho_motion.rows();
    const PositionBasis basis = position_basis(cutoff);

    // Diagonal of rho in the position eigenbasis.
    VectorXd weights(cutoff);
    for (int j = 0; j < cutoff; ++j) {
        const Eigen::VectorXcd col = basis.v.col(j).cast<Complex>();
        weights[j] = std::real(col.dot(rho_motion * col));
    }

    FringeScan scan;
    scan.k_values.resize(n_k);
    scan.sin_signal.resize(n_k);
    scan.cos_signal.resize(n_k);
    for (int i = 0; i < n_k; ++i) {
        const double k = k_max * i / (n_k - 1);
        scan.k_values[i] = k;
        // The probe exp(-i k x sigma_y / 2) is diagonal in x; for each
        // position eigenvalue the qubit rotates by theta = k x about y.
        // <sigma_z> after the rotation:
        //   preparation |1>        ->  -cos(theta)
        //   preparation (|0>+|1>)/sqrt2 -> -sin(theta)
        double sc = 0.0, ss = 0.0;
        for (int j = 0; j < cutoff; ++j) {
            const double th = k * basis.x[j];
            sc -= weights[j] * std::cos(th);
            ss -= weights[j] * std::sin(th);
        }
        scan.cos_signal[i] = sc;
        scan.sin_signal[i] = ss;
    }
    return scan;
}

InvertedDensity invert_fringes(const FringeScan& scan, const Grid& grid) {
    const int n_k = (int)scan.k_values.size();
    if (n_k < 2) throw UndersampledScanError("invert_fringes: too few samples");
    const double k_max = scan.k_values[n_k - 1];
    const double dk = scan.k_values[1] - scan.k_values[0];
    const double x_extent =
        std::max(std::abs(grid.x_min()), std::abs(grid.x_max()));
    if (kPi / dk < x_extent)
        throw UndersampledScanError(
            "invert_fringes: k spacing too coarse for the grid extent");
    (void)k_max;

    InvertedDensity out;
    out.raw.resize(grid.n());
    // rho(x) = (1/pi) Int_0^kmax [C(k) cos(kx) + S(k) sin(kx)] dk with
    // C, S the characteristic-function components (sign-corrected).
    for (int j = 0; j < grid.n(); ++j) {
        const double x = grid.x()[j];
        double acc = 0.0;
        for (int i = 0; i < n_k; ++i) {
            const double k = scan.k_values[i];
            const double c = kCosSignalSign * scan.cos_signal[i];
            const double s = kSinSignalSign * scan.sin_signal[i];
            const double w = (i == 0 || i == n_k - 1) ? 0.5 : 1.0;  // trapezoid
            acc += w * (c * std::cos(k * x) + s * std::sin(k * x));
        }
        out.raw[j] = acc * dk / kPi;
    }
    out.density = out.raw.cwiseMax(0.0);
    out.negativity = (out.density - out.raw).sum() * grid.dx();
    const double total = out.density.sum() * grid.dx();
    if (total > 0.0) out.density /= total;
    return out;
}

FilterResult filter_energy_branch(const FockVector& state, int branch,
                                  int momentum_sign) {
    const int nc = state.cutoff;
    const double s = 1.0 / std::sqrt(2.0);
    // Internal sigma_x eigenvalue carried by the requested branch.
    const int internal = branch * momentum_sign >= 0 ? 0 : 1;

    // Flag states whose qubit1 is not sigma_x-diagonal: the mapping pulse
    // then mixes the branches instead of separating them.
    const Eigen::Matrix2cd rho1 = state.qubit_density(1);
    Eigen::Matrix2cd had;
    had << s, s, s, -s;
    const Eigen::Matrix2cd rho1x = had * rho1 * had;
    const bool internal_ok = std::abs(rho1x(0, 1)) < 0.05;

    FilterResult result;
    result.internal_ok = internal_ok;
    result.state = state;
    result.state.amp.setZero();
    double prob = 0.0;
    // pi/2 pulse then projection == projection onto the sigma_x eigenstate.
    const double sign = internal == 0 ? 1.0 : -1.0;
    for (int q2 = 0; q2 < 2; ++q2)
        for (int n = 0; n < nc; ++n) {
            const Complex proj =
                s * (state.at(0, q2, n) + sign * state.at(1, q2, n));
            prob += std::norm(proj);
            // Collapsed qubit1 left in the mapped measurement state.
            result.state.at(internal, q2, n) = proj;
        }
    result.probability = prob / state.amp.squaredNorm();
    if (prob > 0.0) result.state.amp /= result.state.amp.norm();
    return result;
}

VectorXd branch_momentum_profile(const SpinorField& spinor, double window) {
    const Grid& grid = spinor.grid;
    const int n = grid.n();
    const double dx = grid.dx();

    // Probability current density j(x) = Im(psi^dag dpsi/dx) and density,
    // both smoothed by a Gaussian window before taking the ratio.
    VectorXd current(n), dens = spinor.density();
    for (int j = 0; j < n; ++j) {
        const int jm = (j + n - 1) % n, jp = (j + 1) % n;
        const Complex du = (spinor.upper[jp] - spinor.upper[jm]) / (2.0 * dx);
        const Complex dl = (spinor.lower[jp] - spinor.lower[jm]) / (2.0 * dx);
        current[j] = std::imag(std::conj(spinor.upper[j]) * du +
                               std::conj(spinor.lower[j]) * dl);
    }

    const int half = std::max(1, (int)std::ceil(4.0 * window / dx));
    std::vector<double> kernel(2 * half + 1);
    double ksum = 0.0;
    for (int i = -half; i <= half; ++i) {
        kernel[i + half] = std::exp(-0.5 * (i * dx) * (i * dx) / (window * window));
        ksum += kernel[i + half];
    }
    for (double& v : kernel) v /= ksum;

    VectorXd cs = VectorXd::Zero(n), ds = VectorXd::Zero(n);
    for (int j = 0; j < n; ++j)
        for (int i = -half; i <= half; ++i) {
            const int idx = std::clamp(j + i, 0, n - 1);
            cs[j] += kernel[i + half] * current[idx];
            ds[j] += kernel[i + half] * dens[idx];
        }

    const double floor_dens = 1e-9 * ds.maxCoeff();
    VectorXd profile = VectorXd::Zero(n);
    for (int j = 0; j < n; ++j)
        if (ds[j] > floor_dens) profile[j] = cs[j] / ds[j];
    return profile;
}

void write_fringe_csv(const FringeScan& scan, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_fringe_csv: cannot open " + path);
    f << "k,sin,cos\n" << std::setprecision(17);
    for (int i = 0; i < scan.k_values.size(); ++i)
        f << scan.k_values[i] << ',' << scan.sin_signal[i] << ','
          << scan.cos_signal[i] << '\n';
}

FringeScan read_fringe_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_fringe_csv: cannot open " + path);
    std::string line;
    std::getline(f, line);  // header
    std::vector<double> k, si, co;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double a, b, c;
        char comma;
        ss >> a >> comma >> b >> comma >> c;
        k.push_back(a);
        si.push_back(b);
        co.push_back(c);
    }
    FringeScan scan;
    scan.k_values = Eigen::Map<VectorXd>(k.data(), (Eigen::Index)k.size());
    scan.sin_signal = Eigen::Map<VectorXd>(si.data(), (Eigen::Index)si.size());
    scan.cos_signal = Eigen::Map<VectorXd>(co.data(), (Eigen::Index)co.size());
    return scan;
}

}  // namespace klein

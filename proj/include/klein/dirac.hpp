#ifndef KLEIN_DIRAC_HPP
#define KLEIN_DIRAC_HPP

#include <vector>

#include "klein/dirac_params.hpp"
#include "klein/spinor.hpp"

namespace klein {

struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotSeparatedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strang-split propagator: half-step of the diagonal potential phase in
// position space, exact 2x2 exponential of c p sigma_x + mc^2 sigma_z per
// momentum mode, half-step of the potential again. Second order in dt;
// the splitting error scales as dt^2 * [V,[V,K]] commutator norms, so keep
// dt * max(|phi'|*c, mc2) well below 1. Norm drift beyond 1e-6 aborts with
// the offending step index.
SpinorField evolve(const SpinorField& state, const DiracParams& params,
                   double dt, int n_steps);

// P_pm = (1 pm H_free(p)/E(p)) / 2 applied per momentum component. The
// returned field is NOT renormalized; its norm^2 is the branch population.
// At mc2 = 0 the p = 0 mode is split half/half between the branches.
SpinorField branch_project(const SpinorField& state, const DiracParams& params,
                           int sign);

double branch_population(const SpinorField& state, const DiracParams& params,
                         int sign);

// <H> = sum_p psi^dag (c p sigma_x + mc2 sigma_z) psi + sum_x phi(x) |psi|^2.
double mean_energy(const SpinorField& state, const DiracParams& params);

struct Frame {
    double time = 0.0;
    VectorXd density;        // integrates to 1
    VectorXd density_plus;   // positive-branch density
    VectorXd density_minus;  // negative-branch density
    double mean_x = 0.0;
    double mean_p = 0.0;
    double pop_plus = 0.0;
};

struct FrameSeries {
    Grid grid;
    DiracParams params;
    std::vector<Frame> frames;
};

Frame snapshot(const SpinorField& state, const DiracParams& params);

FrameSeries record_frames(const SpinorField& state, const DiracParams& params,
                          double dt, int n_steps, int frame_stride);

// Tunneling probability = negative-branch population of the final frame.
// Precondition: the reflected and transmitted parts have separated, i.e.
// integral of min(density_plus, density_minus) < overlap_tol. Throws
// NotSeparatedError otherwise.
double tunnel_probability(const FrameSeries& series, double overlap_tol = 1e-3);

// Alternative definition: probability beyond the classical turning point
// x_t of the initial positive-branch packet (phi(x_t) = E_kin).
double tunnel_probability_position(const FrameSeries& series);

}  // namespace klein

#endif  // KLEIN_DIRAC_HPP

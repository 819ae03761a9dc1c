#include "klein/dirac.hpp"

#include <algorithm>
#include <cmath>

namespace klein {

namespace {

struct KineticTable {
    // exp(-i dt H_free(p)) = cos(th) I - i sin(th) (c p sigma_x + mc2 sigma_z)/E
    std::vector<double> cos_th, sx, sz;  // sx = sin(th) c p / E, sz = sin(th) mc2 / E
};

KineticTable make_kinetic_table(const Grid& grid, const DiracParams& params,
                                double dt) {
    KineticTable t;
    const int n = grid.n();
    t.cos_th.resize(n);
    t.sx.resize(n);
    t.sz.resize(n);
    for (int k = 0; k < n; ++k) {
        const double cp = params.c * grid.p()[k];
        const double e = std::hypot(cp, params.mc2);
        const double th = e * dt;
        t.cos_th[k] = std::cos(th);
        if (e > 0.0) {
            const double s = std::sin(th) / e;
            t.sx[k] = s * cp;
            t.sz[k] = s * params.mc2;
        } else {
            t.sx[k] = t.sz[k] = 0.0;
        }
    }
    return t;
}

void apply_kinetic(const KineticTable& t, VectorXcd& u, VectorXcd& l) {
    const Complex mi(0.0, -1.0);
    for (int k = 0; k < u.size(); ++k) {
        const Complex uu = u[k], ll = l[k];
        u[k] = t.cos_th[k] * uu + mi * (t.sz[k] * uu + t.sx[k] * ll);
        l[k] = t.cos_th[k] * ll + mi * (t.sx[k] * uu - t.sz[k] * ll);
    }
}

}  // namespace

SpinorField evolve(const SpinorField& state, const DiracParams& params,
                   double dt, int n_steps) {
    params.validate();
    const Grid& grid = state.grid;
    const int n = grid.n();

    VectorXcd half_phase(n);
    for (int j = 0; j < n; ++j)
        half_phase[j] = std::exp(Complex(0.0, -params.phi(grid.x()[j]) * dt / 2.0));
    const KineticTable kin = make_kinetic_table(grid, params, dt);

    SpinorField cur = state;
    for (int step = 0; step < n_steps; ++step) {
        cur.upper.array() *= half_phase.array();
        cur.lower.array() *= half_phase.array();
        VectorXcd up, lp;
        to_momentum_space(cur, up, lp);
        apply_kinetic(kin, up, lp);
        cur = from_momentum_space(grid, up, lp, cur.time);
        cur.upper.array() *= half_phase.array();
        cur.lower.array() *= half_phase.array();
        cur.time += dt;
        if (std::abs(cur.norm_squared() - 1.0) > 1e-6)
            throw InstabilityError("evolve: norm drift at step " +
                                   std::to_string(step));
    }
    return cur;
}

SpinorField branch_project(const SpinorField& state, const DiracParams& params,
                           int sign) {
    const Grid& grid = state.grid;
    VectorXcd up, lp;
    to_momentum_space(state, up, lp);
    const double s = sign >= 0 ? 1.0 : -1.0;
    for (int k = 0; k < grid.n(); ++k) {
        const double cp = params.c * grid.p()[k];
        const double e = std::hypot(cp, params.mc2);
        const Complex uu = up[k], ll = lp[k];
        if (e > 0.0) {
            up[k] = 0.5 * (uu + s * (params.mc2 * uu + cp * ll) / e);
            lp[k] = 0.5 * (ll + s * (cp * uu - params.mc2 * ll) / e);
        } else {
            // Degenerate p = 0 mode at mc2 = 0: use the sigma_x
            // eigenprojectors so idempotence and completeness both hold;
            // a sigma_z basis state splits its population half/half.
            up[k] = 0.5 * (uu + s * ll);
            lp[k] = 0.5 * (ll + s * uu);
        }
    }
    return from_momentum_space(grid, up, lp, state.time);
}

double branch_population(const SpinorField& state, const DiracParams& params,
                         int sign) {
    return branch_project(state, params, sign).norm_squared() /
           state.norm_squared();
}

double mean_energy(const SpinorField& state, const DiracParams& params) {
    const Grid& grid = state.grid;
    VectorXcd up, lp;
    to_momentum_space(state, up, lp);
    double kinetic = 0.0, wsum = 0.0;
    for (int k = 0; k < grid.n(); ++k) {
        const double cp = params.c * grid.p()[k];
        kinetic += cp * 2.0 * std::real(std::conj(up[k]) * lp[k]) +
                   params.mc2 * (std::norm(up[k]) - std::norm(lp[k]));
        wsum += std::norm(up[k]) + std::norm(lp[k]);
    }
    kinetic /= wsum;
    double potential = 0.0;
    const VectorXd d = state.density();
    for (int j = 0; j < grid.n(); ++j) potential += params.phi(grid.x()[j]) * d[j];
    potential *= grid.dx() / state.norm_squared();
    return kinetic + potential;
}

Frame snapshot(const SpinorField& state, const DiracParams& params) {
    Frame f;
    f.time = state.time;
    f.density = state.density();
    const SpinorField plus = branch_project(state, params, +1);
    const SpinorField minus = branch_project(state, params, -1);
    f.density_plus = plus.density();
    f.density_minus = minus.density();
    f.mean_x = state.mean_x();
    f.mean_p = mean_p(state);
    f.pop_plus = plus.norm_squared() / state.norm_squared();
    return f;
}

FrameSeries record_frames(const SpinorField& state, const DiracParams& params,
                          double dt, int n_steps, int frame_stride) {
    if (frame_stride <= 0)
        throw std::invalid_argument("record_frames: frame_stride must be positive");
    FrameSeries series{state.grid, params, {}};
    SpinorField cur = state;
    series.frames.push_back(snapshot(cur, params));
    int done = 0;
    while (done < n_steps) {
        const int chunk = std::min(frame_stride, n_steps - done);
        cur = evolve(cur, params, dt, chunk);
        done += chunk;
        series.frames.push_back(snapshot(cur, params));
    }
    return series;
}

double tunnel_probability(const FrameSeries& series, double overlap_tol) {
    const Frame& last = series.frames.back();
    double overlap = 0.0, pop_minus = 0.0;
    for (int j = 0; j < series.grid.n(); ++j) {
        overlap += std::min(last.density_plus[j], last.density_minus[j]);
        pop_minus += last.density_minus[j];
    }
    overlap *= series.grid.dx();
    pop_minus *= series.grid.dx();
    if (overlap >= overlap_tol)
        throw NotSeparatedError("tunnel_probability: branch overlap " +
                                std::to_string(overlap));
    return std::clamp(pop_minus, 0.0, 1.0);
}

double tunnel_probability_position(const FrameSeries& series) {
    const DiracParams& p = series.params;
    if (p.potential == PotentialKind::None) return 0.0;
    const Frame& first = series.frames.front();
    const double e0 = std::hypot(p.c * first.mean_p, p.mc2) + p.phi(first.mean_x);
    const double barrier = e0 - p.mc2;  // phi(x_t) at the classical turning point
    if (barrier <= 0.0) return 0.0;
    double x_t;
    if (p.potential == PotentialKind::Linear)
        x_t = barrier / p.strength;
    else
        x_t = std::sqrt(barrier / p.strength);
    const Frame& last = series.frames.back();
    double prob = 0.0;
    for (int j = 0; j < series.grid.n(); ++j)
        if (series.grid.x()[j] > x_t) prob += last.density[j];
    return std::clamp(prob * series.grid.dx(), 0.0, 1.0);
}

}  // namespace klein

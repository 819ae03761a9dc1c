#include <doctest.h>

#include <cmath>

#include "klein/analytic.hpp"
#include "klein/dirac.hpp"
#include "klein/oracle.hpp"

using namespace klein;

namespace {

DiracParams fig2_params(double omega_tilde2_kHz,
                        PotentialKind kind = PotentialKind::Linear) {
    IonParams ion;
    ion.eta = 0.044;
    ion.omega1 = rad_per_us_from_kHz(1.3);
    ion.omega_tilde1 = rad_per_us_from_kHz(17.5);
    ion.omega_tilde2 = rad_per_us_from_kHz(omega_tilde2_kHz);
    ion.omega2 = rad_per_us_from_kHz(33.0);
    return map_ion_to_dirac(ion, omega_tilde2_kHz > 0.0 ? kind
                                                        : PotentialKind::None);
}

SpinorField fig2_initial(const Grid& g) {
    return make_gaussian_spinor(g, 0.0, 3.5, 1.0, 1.0, 1.0);
}

double overlap(const SpinorField& a, const SpinorField& b) {
    Complex s = 0.0;
    for (int j = 0; j < a.grid.n(); ++j)
        s += (std::conj(a.upper[j]) * b.upper[j] +
              std::conj(a.lower[j]) * b.lower[j]);
    return std::abs(s) * a.grid.dx();
}

}  // namespace

TEST_CASE("branch projectors: completeness, idempotence, initial purity") {
    const Grid g = default_grid();
    const DiracParams params = fig2_params(0.0);
    const SpinorField s = fig2_initial(g);

    const SpinorField plus = branch_project(s, params, +1);
    const SpinorField minus = branch_project(s, params, -1);

    SUBCASE("P+ + P- reassembles the state") {
        for (int j = 0; j < g.n(); ++j) {
            CHECK(std::abs(plus.upper[j] + minus.upper[j] - s.upper[j]) < 1e-12);
            CHECK(std::abs(plus.lower[j] + minus.lower[j] - s.lower[j]) < 1e-12);
        }
    }
    SUBCASE("projectors are idempotent") {
        const SpinorField pp = branch_project(plus, params, +1);
        CHECK((pp.upper - plus.upper).norm() < 1e-12);
        CHECK((pp.lower - plus.lower).norm() < 1e-12);
    }
    SUBCASE("fig2 initial state is dominated by positive energy") {
        CHECK(branch_population(s, params, +1) > 0.98);
    }
}

TEST_CASE("massless positive-momentum plane wave is a pure positive branch") {
    const Grid g(512, -32.0, 32.0);
    DiracParams params;
    params.c = 0.0097;
    params.mc2 = 0.0;
    // Wide packet at p0 = 4: essentially a plane wave; internal (1,1)/sqrt(2)
    // diagonalizes c p sigma_x with +E for p > 0.
    const SpinorField s = make_gaussian_spinor(g, 0.0, 4.0, 4.0, 1.0, 1.0);
    CHECK(branch_population(s, params, +1) == doctest::Approx(1.0).epsilon(1e-9));

    // Degenerate p = 0 mode handling: projectors still complete.
    const SpinorField rest = make_gaussian_spinor(g, 0.0, 0.0, 1.0, 1.0, 0.0);
    CHECK(branch_population(rest, params, +1) +
              branch_population(rest, params, -1) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("free evolution conserves norm, branch populations, <p>, <H>") {
    const Grid g = default_grid();
    const DiracParams params = fig2_params(0.0);
    const SpinorField s0 = fig2_initial(g);
    const double pop0 = branch_population(s0, params, +1);
    const double e0 = mean_energy(s0, params);

    const SpinorField s1 = evolve(s0, params, 1.0, 1500);
    CHECK(std::abs(s1.norm_squared() - 1.0) < 1e-9);
    CHECK(std::abs(branch_population(s1, params, +1) - pop0) < 1e-6);
    CHECK(std::abs(mean_p(s1) - 3.5) < 1e-6);
    CHECK(std::abs(mean_energy(s1, params) - e0) < 1e-6 * std::abs(e0));
}

TEST_CASE("ultra-relativistic packet advances at the speed of light") {
    const Grid g = default_grid();
    const DiracParams params = fig2_params(0.0);
    SpinorField s = fig2_initial(g);
    const double x0 = s.mean_x();
    s = evolve(s, params, 1.0, 1000);
    const double v = (s.mean_x() - x0) / 1000.0;
    // p0 = 3.5 >> mc = 0.84: group velocity within a few percent of c.
    CHECK(v == doctest::Approx(params.c).epsilon(0.05));
}

TEST_CASE("Ehrenfest relations for the linear slope") {
    const Grid g = default_grid();
    const DiracParams params = fig2_params(22.0);
    const SpinorField s0 = fig2_initial(g);
    const FrameSeries series = record_frames(s0, params, 1.0, 1000, 100);

    // d<p>/dt = -g from a finite-difference slope across frames.
    for (size_t i = 1; i + 1 < series.frames.size(); ++i) {
        const double dpdt = (series.frames[i + 1].mean_p -
                             series.frames[i - 1].mean_p) /
                            (series.frames[i + 1].time - series.frames[i - 1].time);
        CHECK(std::abs(dpdt + params.strength) < 1e-3 * params.strength);
    }
    // Energy stays constant with the potential on.
    const double e0 = mean_energy(s0, params);
    const SpinorField s1 = evolve(s0, params, 1.0, 1000);
    CHECK(std::abs(mean_energy(s1, params) - e0) < 1e-6 * std::abs(e0));
}

TEST_CASE("Ehrenfest velocity: d<x>/dt = c <sigma_x>") {
    const Grid g = default_grid();
    const DiracParams params = fig2_params(22.0);
    SpinorField s = evolve(fig2_initial(g), params, 1.0, 300);
    const double dt = 2.0;
    const SpinorField before = s;
    const SpinorField after = evolve(s, params, 1.0, (int)dt);
    const double dxdt = (after.mean_x() - before.mean_x()) / dt;
    const double expected = params.c * s.mean_sigma_x();
    CHECK(dxdt == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("split-operator matches the exact free solution") {
    const Grid g = default_grid();
    const DiracParams params = fig2_params(0.0);
    const SpinorField s0 = fig2_initial(g);
    const SpinorField split = evolve(s0, params, 1.0, 1500);
    const SpinorField exact =
        oracle::free_dirac_momentum_solution(s0, params, 1500.0);
    CHECK(overlap(split, exact) > 1.0 - 1e-8);
}

TEST_CASE("project-then-evolve commutes with evolve-then-project (free)") {
    const Grid g = default_grid();
    const DiracParams params = fig2_params(0.0);
    const SpinorField s0 = fig2_initial(g);
    const SpinorField a = oracle::free_dirac_momentum_solution(
        branch_project(s0, params, +1), params, 400.0);
    const SpinorField b = branch_project(
        oracle::free_dirac_momentum_solution(s0, params, 400.0), params, +1);
    CHECK((a.upper - b.upper).norm() * std::sqrt(g.dx()) < 1e-12);
    CHECK((a.lower - b.lower).norm() * std::sqrt(g.dx()) < 1e-12);
}

TEST_CASE("Strang splitting converges at second order") {
    const Grid g = default_grid();
    const DiracParams params = fig2_params(50.0);
    const SpinorField s0 = fig2_initial(g);
    const double T = 64.0;

    auto err_vs_ref = [&](double dt) {
        const SpinorField coarse = evolve(s0, params, dt, (int)(T / dt));
        const SpinorField ref = evolve(s0, params, dt / 4.0, (int)(4.0 * T / dt));
        return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap(coarse, ref)));
    };
    const double e1 = err_vs_ref(2.0);
    const double e2 = err_vs_ref(1.0);
    // Nominal order 2: halving dt shrinks the error by 4, within 20%.
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.20));
}

TEST_CASE("tunneling probabilities for the Fig. 2 slopes") {
    const Grid g = default_grid();

    SUBCASE("free run tunnels nothing") {
        const DiracParams params = fig2_params(0.0);
        const FrameSeries series =
            record_frames(fig2_initial(g), params, 1.0, 1500, 1500);
        CHECK(tunnel_probability(series) < 0.02);
    }
    SUBCASE("massless particle tunnels completely") {
        DiracParams params = fig2_params(50.0);
        params.mc2 = 0.0;
        const FrameSeries series =
            record_frames(fig2_initial(g), params, 1.0, 900, 900);
        CHECK(tunnel_probability(series) > 0.98);
    }
    SUBCASE("Fig. 2c slope lands on the Landau-Zener value") {
        const DiracParams params = fig2_params(50.0);
        const FrameSeries series =
            record_frames(fig2_initial(g), params, 1.0, 900, 900);
        CHECK(std::abs(tunnel_probability(series) - 0.21) < 0.05);
    }
    SUBCASE("unseparated packet is rejected") {
        const DiracParams params = fig2_params(50.0);
        const FrameSeries series =
            record_frames(fig2_initial(g), params, 1.0, 100, 100);
        CHECK_THROWS_AS(tunnel_probability(series), NotSeparatedError);
    }
}

TEST_CASE("ultra-relativistic limit ties the solver to the analytic formula") {
    const Grid g = default_grid();
    DiracParams params = fig2_params(22.0);
    params.mc2 /= 10.0;  // push far into the ultra-relativistic regime
    const double gamma = klein_gamma(params.mc2, params.c, params.strength);
    const FrameSeries series =
        record_frames(fig2_initial(g), params, 1.0, 1400, 1400);
    CHECK(std::abs(tunnel_probability(series) - tunnel_prob_analytic(gamma)) <
          0.02);
}

TEST_CASE("record_frames bookkeeping") {
    const Grid g = default_grid();
    const DiracParams params = fig2_params(0.0);
    const SpinorField s0 = fig2_initial(g);

    const FrameSeries two = record_frames(s0, params, 1.0, 100, 100);
    CHECK(two.frames.size() == 2);

    const FrameSeries series = record_frames(s0, params, 1.0, 300, 100);
    CHECK(series.frames.size() == 4);
    double prev_t = -1.0;
    for (const Frame& f : series.frames) {
        CHECK(f.time > prev_t);
        prev_t = f.time;
        CHECK(f.density.sum() * g.dx() == doctest::Approx(1.0).epsilon(1e-6));
        const double branch_total =
            (f.density_plus.sum() + f.density_minus.sum()) * g.dx();
        CHECK(branch_total == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(std::abs(f.mean_p - 3.5) < 1e-6);  // free run
    }
}

TEST_CASE("quadratic potential confines and the position variant reports") {
    const Grid g = default_grid();
    const DiracParams params = fig2_params(50.0, PotentialKind::Quadratic);
    // Fig. 3 rest mass.
    DiracParams p3 = params;
    p3.mc2 = rad_per_us_from_kHz(0.65);
    const SpinorField s0 = make_prep_spinor(g, 0.367, 0.23);
    // The turning-point dip in <x> near t ~ 1.5 ms is shallow because the
    // Klein-escaped tail keeps <x> biased positive, so sample it densely.
    const FrameSeries series = record_frames(s0, p3, 1.0, 1600, 20);
    // <x> oscillates: at least two sign changes.
    int sign_changes = 0;
    for (size_t i = 1; i < series.frames.size(); ++i)
        if ((series.frames[i].mean_x > 0) != (series.frames[i - 1].mean_x > 0))
            ++sign_changes;
    CHECK(sign_changes >= 2);
    CHECK(tunnel_probability_position(series) >= 0.0);
    CHECK(tunnel_probability_position(series) <= 1.0);
}

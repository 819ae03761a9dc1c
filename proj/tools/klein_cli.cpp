// Command-line front end: run scenarios, print the tunneling comparison
// table, emit frame data, lint configs, and run the convention oracles.

#include <CLI11.hpp>

#include <iostream>

#include "klein/decode.hpp"
#include "klein/krylov.hpp"
#include "klein/oracle.hpp"
#include "klein/scenario.hpp"

namespace {

using namespace klein;

int cmd_validate(const std::string& path) {
    try {
        const ScenarioConfig cfg = load_config(path);
        cfg.validate();
        std::cout << "ok: " << cfg.name << " (hash " << cfg.hash() << ")\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "invalid: " << e.what() << '\n';
        return 1;
    }
}

int cmd_run(const std::string& path, const std::string& engine,
            const std::string& out, const std::string& format,
            bool frames_only) {
    ScenarioConfig cfg = load_config(path);
    if (!engine.empty()) cfg.engine = engine;
    if (frames_only) {
        cfg.reconstruction = false;
        cfg.branch_filter = false;
    }
    const RunReport report = run_scenario(cfg);
    emit_frames(report, format, out);
    if (!frames_only)
        write_report_json(report, out + "/report.json");
    std::cout << cfg.name << " [" << cfg.engine << "] done in " << report.wall_ms
              << " ms";
    if (report.analytic_p) std::cout << ", analytic P = " << *report.analytic_p;
    if (report.tunnel_branch)
        std::cout << ", tunneling (branch) = " << *report.tunnel_branch;
    if (report.tunnel_position)
        std::cout << ", tunneling (position) = " << *report.tunnel_position;
    if (report.recon_l1)
        std::cout << ", reconstruction L1 = " << *report.recon_l1;
    std::cout << '\n';
    return 0;
}

int cmd_table(const std::vector<std::string>& paths,
              const std::vector<std::string>& engines, int threads) {
    std::vector<ScenarioConfig> configs;
    for (const std::string& p : paths) configs.push_back(load_config(p));
    const auto rows = tunneling_table(configs, engines, threads);
    std::cout << format_tunneling_table(rows);
    return 0;
}

// Convention-fixing cross checks; these must pass before the main suites
// mean anything.
int cmd_oracle() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok, double value) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " (" << value
                  << ")\n";
        if (!ok) ++failures;
    };

    {  // Krylov vs dense exponential, random Hermitian 64-dim.
        const int dim = 64;
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(dim, dim);
        const Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
        const Eigen::VectorXcd v0 = Eigen::VectorXcd::Random(dim).normalized();
        const Eigen::VectorXcd dense = oracle::dense_expm_propagate(v0, h, 10.0);
        Eigen::SparseMatrix<Complex> hs = h.sparseView();
        const Eigen::VectorXcd fast = expm_action(hs, v0, 10.0);
        const double overlap = std::abs(dense.dot(fast));
        check("krylov vs dense exponential overlap", overlap > 1.0 - 1e-10,
              overlap);
    }
    {  // Momentum-kick displacement vs closed-form coherent state.
        IonParams ion;
        ion.omega_tilde1 = rad_per_us_from_kHz(17.5);
        ion.omega1 = rad_per_us_from_kHz(1.3);
        ion.fock_cutoff = 64;
        PrepRecipe recipe{PrepRecipe::Kind::MomentumKick,
                          PrepRecipe::Qubit2::SigmaXPlus, 3.5, 0.0};
        const FockVector kicked = prepare_initial(ion, recipe);
        const auto ref = oracle::coherent_state_reference(
            alpha_from_xp(0.0, 3.5), ion.fock_cutoff);
        Complex ov = 0.0;
        // Motional overlap within the (s,s,s,s) internal sector.
        for (int n = 0; n < ion.fock_cutoff; ++n)
            ov += std::conj(ref.amplitudes[n]) * 2.0 * kicked.at(0, 0, n);
        check("momentum kick vs coherent reference", std::abs(ov) > 1.0 - 1e-9,
              std::abs(ov));
    }
    {  // Fringe signs against the coherent-state characteristic function.
        const auto ref = oracle::coherent_state_reference(
            alpha_from_xp(1.2, 0.0), 40);
        Eigen::MatrixXcd rho = ref.amplitudes * ref.amplitudes.adjoint();
        const FringeScan scan = acquire_fringes(rho, 4.0, 101);
        double max_err = 0.0;
        for (int i = 0; i < scan.k_values.size(); ++i) {
            const double k = scan.k_values[i];
            max_err = std::max(
                max_err, std::abs(kCosSignalSign * scan.cos_signal[i] -
                                  ref.characteristic_real(k)));
            max_err = std::max(
                max_err, std::abs(kSinSignalSign * scan.sin_signal[i] -
                                  ref.characteristic_imag(k)));
        }
        check("fringe sign convention", max_err < 1e-6, max_err);
    }
    {  // Split-operator vs exact free momentum-space solution.
        const Grid grid = default_grid();
        DiracParams params;
        params.c = 0.009676;
        params.mc2 = rad_per_us_from_kHz(1.3);
        const SpinorField s0 =
            make_gaussian_spinor(grid, 0.0, 3.5, 1.0, 1.0, 1.0);
        const SpinorField split = evolve(s0, params, 1.0, 1500);
        const SpinorField exact =
            oracle::free_dirac_momentum_solution(s0, params, 1500.0);
        Complex ov = 0.0;
        for (int j = 0; j < grid.n(); ++j)
            ov += (std::conj(exact.upper[j]) * split.upper[j] +
                   std::conj(exact.lower[j]) * split.lower[j]) *
                  grid.dx();
        check("split-operator vs free momentum solution", std::abs(ov) > 1.0 - 1e-8,
              std::abs(ov));
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Klein tunneling simulator: Dirac solver, two-ion emulator, "
                 "and measurement-protocol reconstruction"};
    app.require_subcommand(1);

    std::string config_path, engine, out = "out", format = "csv";
    int threads = 1;
    std::vector<std::string> config_paths;
    std::vector<std::string> engines{"dirac"};

    auto* run = app.add_subcommand("run", "Run one scenario and emit artifacts");
    run->add_option("--config", config_path, "scenario config file")->required();
    run->add_option("--engine", engine, "override engine (dirac|ion-ideal|ion-corrected)");
    run->add_option("--out", out, "output directory");
    run->add_option("--format", format, "csv or ndjson");

    auto* frames = app.add_subcommand("frames", "Emit frame data only");
    frames->add_option("--config", config_path)->required();
    frames->add_option("--engine", engine);
    frames->add_option("--out", out);
    frames->add_option("--format", format);

    auto* table =
        app.add_subcommand("table", "Tunneling comparison table over configs");
    table->add_option("--config", config_paths, "scenario config files")
        ->required();
    table->add_option("--engines", engines, "engines to include");
    table->add_option("--threads", threads, "worker threads");

    auto* validate = app.add_subcommand("validate", "Lint a config file");
    validate->add_option("--config", config_path)->required();

    app.add_subcommand("oracle", "Run convention cross-checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("run")) return cmd_run(config_path, engine, out, format, false);
        if (app.got_subcommand("frames")) return cmd_run(config_path, engine, out, format, true);
        if (app.got_subcommand("table")) return cmd_table(config_paths, engines, threads);
        if (app.got_subcommand("validate")) return cmd_validate(config_path);
        if (app.got_subcommand("oracle")) return cmd_oracle();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

#ifndef KLEIN_SCENARIO_HPP
#define KLEIN_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "klein/analytic.hpp"
#include "klein/dirac.hpp"
#include "klein/fock.hpp"
#include "klein/prepare.hpp"
#include "klein/reconstruction.hpp"

namespace klein {

// Flat key = value configuration with explicit units in the key names.
struct ScenarioConfig {
    std::string name = "unnamed";
    std::string engine = "dirac";  // dirac | ion-ideal | ion-corrected

    double eta = 0.044;
    double omega1_kHz = 1.3;
    double omega_tilde1_kHz = 17.5;
    double omega_tilde2_kHz = 0.0;
    double omega2_kHz = 0.0;
    double omega_prep2_kHz = 0.0;

    std::string potential = "none";  // none | linear | quadratic
    std::string prep = "kick";       // kick | prep2 | prep2_kick
    double p0 = 0.0;
    double prep_duration_us = 16.0;

    double duration_us = 1000.0;
    double dt_us = 1.0;
    int n_frames = 6;

    int grid_n = 2048;
    double grid_x_min = -64.0;
    double grid_x_max = 64.0;
    int fock_cutoff = 256;

    bool reconstruction = false;
    bool branch_filter = false;
    double recon_k_max = 6.0;
    int recon_n_k = 256;

    IonParams ion_params() const;
    PotentialKind potential_kind() const;
    DiracParams dirac_params() const;
    Grid grid() const { return Grid(grid_n, grid_x_min, grid_x_max); }
    PrepRecipe prep_recipe() const;

    // Canonical serialization (sorted keys) and its FNV-1a hash.
    std::string canonical_text() const;
    std::string hash() const;
    void validate() const;
};

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

struct RunReport {
    ScenarioConfig config;
    std::string config_hash;
    FrameSeries series;               // engine-agnostic frame data
    std::vector<VectorXd> local_p;    // per-frame momentum profiles
    bool branch_data_valid = true;    // false when the ion decode is density-only
    std::optional<double> tunnel_branch;
    std::optional<double> tunnel_position;
    std::optional<double> analytic_p;
    std::optional<double> recon_l1;   // inversion vs direct density, final frame
    std::optional<FringeScan> fringes;
    std::optional<double> filter_prob_plus, filter_prob_minus;
    std::optional<VectorXd> filtered_density_plus, filtered_density_minus;
    std::optional<FockVector> final_fock;  // ion engines only
    double wall_ms = 0.0;
};

RunReport run_scenario(const ScenarioConfig& config);

// One file per frame plus an index file; bit-stable for equal configs.
void emit_frames(const RunReport& report, const std::string& format,
                 const std::string& out_dir);
void write_report_json(const RunReport& report, const std::string& path);

struct TunnelingRow {
    double omega_tilde2_kHz = 0.0;
    double analytic_p = 0.0;
    std::optional<double> dirac_p;
    std::optional<double> ion_ideal_p;
    std::optional<double> ion_corrected_p;
    double paper_analytic = 0.0;   // quoted closed-form values
    double paper_numeric = 0.0;    // quoted numerical (curly-bracket) values
    double paper_measured = 0.0;   // experimental values, context only
};

std::vector<TunnelingRow> tunneling_table(
    const std::vector<ScenarioConfig>& configs,
    const std::vector<std::string>& engines, int threads = 1);

std::string format_tunneling_table(const std::vector<TunnelingRow>& rows);

}  // namespace klein

#endif  // KLEIN_SCENARIO_HPP

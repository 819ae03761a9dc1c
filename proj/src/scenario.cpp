#include "klein/scenario.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "klein/decode.hpp"
#include "klein/krylov.hpp"

namespace klein {

namespace fs = std::filesystem;
using json = nlohmann::json;

IonParams ScenarioConfig::ion_params() const {
    IonParams ion;
    ion.eta = eta;
    ion.omega1 = rad_per_us_from_kHz(omega1_kHz);
    ion.omega_tilde1 = rad_per_us_from_kHz(omega_tilde1_kHz);
    ion.omega_tilde2 = rad_per_us_from_kHz(omega_tilde2_kHz);
    ion.omega2 = rad_per_us_from_kHz(omega2_kHz);
    ion.omega_prep2 = rad_per_us_from_kHz(omega_prep2_kHz);
    ion.fock_cutoff = fock_cutoff;
    return ion;
}

PotentialKind ScenarioConfig::potential_kind() const {
    if (potential == "none") return PotentialKind::None;
    if (potential == "linear") return PotentialKind::Linear;
    if (potential == "quadratic") return PotentialKind::Quadratic;
    throw std::invalid_argument("ScenarioConfig: unknown potential '" +
                                potential + "'");
}

DiracParams ScenarioConfig::dirac_params() const {
    return map_ion_to_dirac(ion_params(), potential_kind());
}

PrepRecipe ScenarioConfig::prep_recipe() const {
    PrepRecipe recipe;
    if (prep == "kick")
        recipe.kind = PrepRecipe::Kind::MomentumKick;
    else if (prep == "prep2")
        recipe.kind = PrepRecipe::Kind::Prep2;
    else if (prep == "prep2_kick")
        recipe.kind = PrepRecipe::Kind::Prep2PlusKick;
    else
        throw std::invalid_argument("ScenarioConfig: unknown prep '" + prep + "'");
    recipe.qubit2 = potential_kind() == PotentialKind::Quadratic
                        ? PrepRecipe::Qubit2::SigmaZPlus
                        : PrepRecipe::Qubit2::SigmaXPlus;
    recipe.p0 = p0;
    recipe.duration_us = prep_duration_us;
    return recipe;
}

void ScenarioConfig::validate() const {
    ion_params().validate();
    (void)potential_kind();
    (void)prep_recipe();
    dirac_params().validate();
    (void)grid();
    if (engine != "dirac" && engine != "ion-ideal" && engine != "ion-corrected")
        throw std::invalid_argument("ScenarioConfig: unknown engine '" + engine +
                                    "'");
    if (!(duration_us > 0) || !(dt_us > 0))
        throw std::invalid_argument("ScenarioConfig: duration/dt must be positive");
    if (n_frames < 2)
        throw std::invalid_argument("ScenarioConfig: n_frames must be >= 2");
    if (potential_kind() == PotentialKind::Quadratic && !(omega2_kHz > 0))
        throw std::invalid_argument(
            "ScenarioConfig: quadratic potential needs omega2_kHz > 0");
    if ((prep == "prep2" || prep == "prep2_kick") && !(omega_prep2_kHz > 0))
        throw std::invalid_argument(
            "ScenarioConfig: prep2 recipes need omega_prep2_kHz > 0");
    if (recon_n_k < 2 || !(recon_k_max > 0))
        throw std::invalid_argument("ScenarioConfig: bad reconstruction scan");
}

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    return ss.str();
}

}  // namespace

std::string ScenarioConfig::canonical_text() const {
    std::map<std::string, std::string> kv{
        {"name", name},
        {"engine", engine},
        {"eta", fmt(eta)},
        {"omega1_kHz", fmt(omega1_kHz)},
        {"omega_tilde1_kHz", fmt(omega_tilde1_kHz)},
        {"omega_tilde2_kHz", fmt(omega_tilde2_kHz)},
        {"omega2_kHz", fmt(omega2_kHz)},
        {"omega_prep2_kHz", fmt(omega_prep2_kHz)},
        {"potential", potential},
        {"prep", prep},
        {"p0", fmt(p0)},
        {"prep_duration_us", fmt(prep_duration_us)},
        {"duration_us", fmt(duration_us)},
        {"dt_us", fmt(dt_us)},
        {"n_frames", std::to_string(n_frames)},
        {"grid_n", std::to_string(grid_n)},
        {"grid_x_min", fmt(grid_x_min)},
        {"grid_x_max", fmt(grid_x_max)},
        {"fock_cutoff", std::to_string(fock_cutoff)},
        {"reconstruction", reconstruction ? "on" : "off"},
        {"branch_filter", branch_filter ? "on" : "off"},
        {"recon_k_max", fmt(recon_k_max)},
        {"recon_n_k", std::to_string(recon_n_k)},
    };
    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    return out;
}

std::string ScenarioConfig::hash() const {
    // FNV-1a 64-bit over the canonical text.
    const std::string text = canonical_text();
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hashpos = line.find('#');
        if (hashpos != std::string::npos) line = line.substr(0, hashpos);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto flag = [&](const std::string& v) {
            if (v == "on" || v == "true") return true;
            if (v == "off" || v == "false") return false;
            throw std::invalid_argument("config: bad flag value '" + v + "'");
        };
        if (key == "name") cfg.name = val;
        else if (key == "engine") cfg.engine = val;
        else if (key == "eta") cfg.eta = std::stod(val);
        else if (key == "omega1_kHz") cfg.omega1_kHz = std::stod(val);
        else if (key == "omega_tilde1_kHz") cfg.omega_tilde1_kHz = std::stod(val);
        else if (key == "omega_tilde2_kHz") cfg.omega_tilde2_kHz = std::stod(val);
        else if (key == "omega2_kHz") cfg.omega2_kHz = std::stod(val);
        else if (key == "omega_prep2_kHz") cfg.omega_prep2_kHz = std::stod(val);
        else if (key == "potential") cfg.potential = val;
        else if (key == "prep") cfg.prep = val;
        else if (key == "p0") cfg.p0 = std::stod(val);
        else if (key == "prep_duration_us") cfg.prep_duration_us = std::stod(val);
        else if (key == "duration_us") cfg.duration_us = std::stod(val);
        else if (key == "dt_us") cfg.dt_us = std::stod(val);
        else if (key == "n_frames") cfg.n_frames = std::stoi(val);
        else if (key == "grid_n") cfg.grid_n = std::stoi(val);
        else if (key == "grid_x_min") cfg.grid_x_min = std::stod(val);
        else if (key == "grid_x_max") cfg.grid_x_max = std::stod(val);
        else if (key == "fock_cutoff") cfg.fock_cutoff = std::stoi(val);
        else if (key == "reconstruction") cfg.reconstruction = flag(val);
        else if (key == "branch_filter") cfg.branch_filter = flag(val);
        else if (key == "recon_k_max") cfg.recon_k_max = std::stod(val);
        else if (key == "recon_n_k") cfg.recon_n_k = std::stoi(val);
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_config: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

// <a> over all internal sectors; <x> = 2 Re, <p> = Im.
Complex mean_lowering(const FockVector& v) {
    Complex s = 0.0;
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int n = 0; n + 1 < v.cutoff; ++n)
                s += std::conj(v.at(q1, q2, n)) * std::sqrt(n + 1.0) *
                     v.at(q1, q2, n + 1);
    return s;
}

std::vector<int> frame_steps(const ScenarioConfig& cfg) {
    const int n_steps = (int)std::llround(cfg.duration_us / cfg.dt_us);
    std::vector<int> steps(cfg.n_frames);
    for (int i = 0; i < cfg.n_frames; ++i)
        steps[i] = (int)std::llround((double)n_steps * i / (cfg.n_frames - 1));
    return steps;
}

RunReport run_dirac(const ScenarioConfig& cfg) {
    RunReport report;
    report.config = cfg;
    const Grid grid = cfg.grid();
    const DiracParams params = cfg.dirac_params();
    const IonParams ion = cfg.ion_params();

    SpinorField state =
        cfg.prep == "kick"
            ? make_gaussian_spinor(grid, 0.0, cfg.p0, 1.0, 1.0, 1.0)
            : make_prep_spinor(grid,
                               ion.eta * ion.omega_prep2 * cfg.prep_duration_us,
                               cfg.prep == "prep2_kick" ? cfg.p0 : 0.0);

    report.series = FrameSeries{grid, params, {}};
    report.series.frames.push_back(snapshot(state, params));
    report.local_p.push_back(branch_momentum_profile(state));
    const std::vector<int> steps = frame_steps(cfg);
    for (size_t i = 1; i < steps.size(); ++i) {
        state = evolve(state, params, cfg.dt_us, steps[i] - steps[i - 1]);
        report.series.frames.push_back(snapshot(state, params));
        report.local_p.push_back(branch_momentum_profile(state));
    }

    if (cfg.reconstruction || cfg.branch_filter) {
        FockVector encoded = encode_spinor(state, cfg.fock_cutoff);
        report.final_fock = encoded;
    }
    return report;
}

RunReport run_ion(const ScenarioConfig& cfg) {
    RunReport report;
    report.config = cfg;
    const Grid grid = cfg.grid();
    const IonParams ion = cfg.ion_params();
    const DiracParams params = cfg.dirac_params();
    const Scenario scen = cfg.potential_kind() == PotentialKind::None
                              ? Scenario::Free
                              : (cfg.potential_kind() == PotentialKind::Linear
                                     ? Scenario::Linear
                                     : Scenario::Quadratic);
    const LambDickeMode mode = cfg.engine == "ion-corrected"
                                   ? LambDickeMode::Corrected
                                   : LambDickeMode::Ideal;
    const HamiltonianSpec h = build_hamiltonian(ion, scen, mode);

    FockVector state = prepare_initial(ion, cfg.prep_recipe());
    report.series = FrameSeries{grid, params, {}};

    auto take_frame = [&](const FockVector& fv) {
        const DecodedState dec = decode_spinor(fv, grid);
        Frame f;
        f.time = fv.time;
        f.density = dec.density;
        const Complex a = mean_lowering(fv);
        f.mean_x = 2.0 * a.real();
        f.mean_p = a.imag();
        if (dec.qubit2_pure) {
            const SpinorField plus = branch_project(dec.spinor, params, +1);
            const SpinorField minus = branch_project(dec.spinor, params, -1);
            f.density_plus = plus.density();
            f.density_minus = minus.density();
            f.pop_plus = plus.norm_squared();
            report.local_p.push_back(branch_momentum_profile(dec.spinor));
        } else {
            report.branch_data_valid = false;
            f.density_plus = VectorXd::Zero(grid.n());
            f.density_minus = VectorXd::Zero(grid.n());
            f.pop_plus = 0.0;
            report.local_p.push_back(VectorXd::Zero(grid.n()));
        }
        report.series.frames.push_back(f);
    };

    take_frame(state);
    const std::vector<int> steps = frame_steps(cfg);
    for (size_t i = 1; i < steps.size(); ++i) {
        state = propagate(state, h, cfg.dt_us, steps[i] - steps[i - 1]);
        take_frame(state);
    }
    report.final_fock = state;
    return report;
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& config) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report =
        config.engine == "dirac" ? run_dirac(config) : run_ion(config);
    report.config_hash = config.hash();

    // Analytic Landau-Zener prediction for linear slopes.
    if (config.potential_kind() == PotentialKind::Linear &&
        config.omega_tilde2_kHz > 0.0)
        report.analytic_p = tunnel_prob_analytic(ion_gamma(config.ion_params()));
    else if (config.potential_kind() == PotentialKind::Linear)
        report.analytic_p = 1.0;  // Gamma = 0

    if (report.branch_data_valid) {
        try {
            report.tunnel_branch = tunnel_probability(report.series);
        } catch (const NotSeparatedError&) {
            // Packet not separated (free runs, short runs): leave unset.
        }
        report.tunnel_position = tunnel_probability_position(report.series);
    }

    if (config.reconstruction && report.final_fock) {
        const Eigen::MatrixXcd rho = report.final_fock->motional_density();
        report.fringes =
            acquire_fringes(rho, config.recon_k_max, config.recon_n_k);
        const InvertedDensity inv =
            invert_fringes(*report.fringes, report.series.grid);
        report.recon_l1 =
            (inv.density - report.series.frames.back().density).cwiseAbs().sum() *
            report.series.grid.dx();
    }

    if (config.branch_filter && report.final_fock) {
        const int psign =
            report.series.frames.back().mean_p >= 0.0 ? +1 : -1;
        for (int branch : {+1, -1}) {
            const FilterResult res =
                filter_energy_branch(*report.final_fock, branch, psign);
            const DecodedState dec =
                decode_spinor(res.state, report.series.grid);
            if (branch > 0) {
                report.filter_prob_plus = res.probability;
                report.filtered_density_plus = dec.density;
            } else {
                report.filter_prob_minus = res.probability;
                report.filtered_density_minus = dec.density;
            }
        }
    }

    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return report;
}

namespace {

void write_frame_csv(const RunReport& r, size_t i, const std::string& path) {
    std::ofstream f(path);
    f << "x,density,density_plus,density_minus,local_p\n"
      << std::setprecision(17);
    const Frame& fr = r.series.frames[i];
    for (int j = 0; j < r.series.grid.n(); ++j)
        f << r.series.grid.x()[j] << ',' << fr.density[j] << ','
          << fr.density_plus[j] << ',' << fr.density_minus[j] << ','
          << r.local_p[i][j] << '\n';
}

void write_frame_ndjson(const RunReport& r, size_t i, const std::string& path) {
    std::ofstream f(path);
    f << std::setprecision(17);
    const Frame& fr = r.series.frames[i];
    for (int j = 0; j < r.series.grid.n(); ++j)
        f << "{\"x\":" << r.series.grid.x()[j] << ",\"density\":" << fr.density[j]
          << ",\"density_plus\":" << fr.density_plus[j]
          << ",\"density_minus\":" << fr.density_minus[j]
          << ",\"local_p\":" << r.local_p[i][j] << "}\n";
}

void write_density_csv(const Grid& grid, const VectorXd& density,
                       const std::string& path) {
    std::ofstream f(path);
    f << "x,density\n" << std::setprecision(17);
    for (int j = 0; j < grid.n(); ++j)
        f << grid.x()[j] << ',' << density[j] << '\n';
}

}  // namespace

void emit_frames(const RunReport& report, const std::string& format,
                 const std::string& out_dir) {
    if (format != "csv" && format != "ndjson")
        throw std::invalid_argument("emit_frames: format must be csv or ndjson");
    fs::create_directories(out_dir);
    std::ofstream index(fs::path(out_dir) / "index.csv");
    index << "frame,time_us,file\n" << std::setprecision(17);
    for (size_t i = 0; i < report.series.frames.size(); ++i) {
        std::ostringstream fname;
        fname << "frame_" << std::setw(3) << std::setfill('0') << i << '.'
              << format;
        const std::string path = (fs::path(out_dir) / fname.str()).string();
        if (format == "csv")
            write_frame_csv(report, i, path);
        else
            write_frame_ndjson(report, i, path);
        index << i << ',' << report.series.frames[i].time << ',' << fname.str()
              << '\n';
    }
    if (report.fringes)
        write_fringe_csv(*report.fringes,
                         (fs::path(out_dir) / "fringes.csv").string());
    if (report.filtered_density_plus)
        write_density_csv(report.series.grid, *report.filtered_density_plus,
                          (fs::path(out_dir) / "filtered_plus.csv").string());
    if (report.filtered_density_minus)
        write_density_csv(report.series.grid, *report.filtered_density_minus,
                          (fs::path(out_dir) / "filtered_minus.csv").string());
}

void write_report_json(const RunReport& report, const std::string& path) {
    json j;
    j["name"] = report.config.name;
    j["engine"] = report.config.engine;
    j["config_hash"] = report.config_hash;
    j["config"] = report.config.canonical_text();
    j["wall_ms"] = report.wall_ms;
    j["branch_data_valid"] = report.branch_data_valid;
    json times = json::array(), mean_x = json::array(), mean_p = json::array(),
         pop_plus = json::array();
    for (const Frame& f : report.series.frames) {
        times.push_back(f.time);
        mean_x.push_back(f.mean_x);
        mean_p.push_back(f.mean_p);
        pop_plus.push_back(f.pop_plus);
    }
    j["frame_times_us"] = times;
    j["mean_x"] = mean_x;
    j["mean_p"] = mean_p;
    j["pop_plus"] = pop_plus;
    if (report.analytic_p) j["analytic_p"] = *report.analytic_p;
    if (report.tunnel_branch) j["tunnel_branch"] = *report.tunnel_branch;
    if (report.tunnel_position) j["tunnel_position"] = *report.tunnel_position;
    if (report.recon_l1) j["recon_l1"] = *report.recon_l1;
    if (report.filter_prob_plus) j["filter_prob_plus"] = *report.filter_prob_plus;
    if (report.filter_prob_minus)
        j["filter_prob_minus"] = *report.filter_prob_minus;
    std::ofstream f(path);
    f << j.dump(2) << '\n';
}

std::vector<TunnelingRow> tunneling_table(
    const std::vector<ScenarioConfig>& configs,
    const std::vector<std::string>& engines, int threads) {
    struct PaperRow {
        double kHz, analytic, numeric, measured;
    };
    static const PaperRow paper[] = {{0.0, 0.0, 0.0, 0.017},
                                     {22.0, 0.03, 0.07, 0.10},
                                     {50.0, 0.21, 0.22, 0.32},
                                     {76.0, 0.36, 0.39, 0.45}};

    std::vector<TunnelingRow> rows(configs.size());
    struct Job {
        size_t row;
        ScenarioConfig cfg;
    };
    std::vector<Job> jobs;
    for (size_t i = 0; i < configs.size(); ++i) {
        TunnelingRow& row = rows[i];
        row.omega_tilde2_kHz = configs[i].omega_tilde2_kHz;
        row.analytic_p =
            configs[i].omega_tilde2_kHz > 0.0
                ? tunnel_prob_analytic(ion_gamma(configs[i].ion_params()))
                : 0.0;  // no slope: nothing tunnels
        for (const PaperRow& p : paper)
            if (std::abs(p.kHz - row.omega_tilde2_kHz) < 0.5) {
                row.paper_analytic = p.analytic;
                row.paper_numeric = p.numeric;
                row.paper_measured = p.measured;
            }
        for (const std::string& engine : engines) {
            ScenarioConfig cfg = configs[i];
            cfg.engine = engine;
            jobs.push_back({i, cfg});
        }
    }

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= jobs.size()) return;
            const Job& job = jobs[idx];
            const RunReport rep = run_scenario(job.cfg);
            const std::optional<double> p =
                job.cfg.omega_tilde2_kHz > 0.0 ? rep.tunnel_branch
                                               : std::optional<double>(0.0);
            if (job.cfg.engine == "dirac") rows[job.row].dirac_p = p;
            else if (job.cfg.engine == "ion-ideal") rows[job.row].ion_ideal_p = p;
            else rows[job.row].ion_corrected_p = p;
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::max(1, std::min<int>(threads, (int)jobs.size()));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return rows;
}

std::string format_tunneling_table(const std::vector<TunnelingRow>& rows) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3);
    out << "omega_tilde2_kHz  analytic  dirac   ion-ideal  ion-corr  "
           "paper-analytic  paper-numeric  paper-measured\n";
    auto cell = [&](const std::optional<double>& v) {
        std::ostringstream c;
        if (v) c << std::fixed << std::setprecision(3) << *v;
        else c << "-";
        return c.str();
    };
    for (const TunnelingRow& r : rows)
        out << std::setw(16) << r.omega_tilde2_kHz << "  " << std::setw(8)
            << r.analytic_p << "  " << std::setw(6) << cell(r.dirac_p) << "  "
            << std::setw(9) << cell(r.ion_ideal_p) << "  " << std::setw(8)
            << cell(r.ion_corrected_p) << "  " << std::setw(14)
            << r.paper_analytic << "  " << std::setw(13) << r.paper_numeric
            << "  " << std::setw(14) << r.paper_measured << '\n';
    return out.str();
}

}  // namespace klein

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>

#include "cli_common.hpp"
#include "dicke/analysis.hpp"
#include "dicke/chains.hpp"
#include "dicke/coefficients.hpp"
#include "dicke/hamiltonians.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/version.hpp"

namespace dc = dicke::cli;
using namespace dicke;

namespace {

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared simulate/compare options; flags override preset and config file.
struct RunFlags {
    std::string preset, config_file, J_text, initial_m_text, out;
    double omega0 = 0, g = 0, g2 = 0, horizon = 0, t_start = 0;
    int n_max = 0, spc = 0, initial_n = 0;
    bool effective = false, jz_survival = false;

    CLI::Option *o_preset, *o_config, *o_J, *o_omega0, *o_g, *o_g2, *o_nmax, *o_horizon, *o_tstart,
        *o_spc, *o_im, *o_in, *o_eff, *o_jz, *o_out;

    void attach(CLI::App* cmd) {
        o_preset = cmd->add_option("--preset", preset, "figure preset (fig2a..fig5d)");
        o_config = cmd->add_option("--config", config_file, "key = value config file");
        o_J = cmd->add_option("--J", J_text, "total spin, e.g. 2 or 3/2");
        o_omega0 = cmd->add_option("--omega0", omega0, "qubit frequency (units of the mode)");
        o_g = cmd->add_option("--g", g, "coupling (units of the mode frequency)");
        o_g2 = cmd->add_option("--g2", g2, "coupling squared; --g2 5 means g = sqrt(5)");
        o_nmax = cmd->add_option("--n-max", n_max, "Fock cutoff (0: automatic)");
        o_horizon = cmd->add_option("--horizon-cycles", horizon, "run length in mode cycles");
        o_tstart = cmd->add_option("--t-start-cycles", t_start, "window start in mode cycles");
        o_spc = cmd->add_option("--samples-per-cycle", spc, "output samples per mode cycle");
        o_im = cmd->add_option("--initial-m", initial_m_text, "initial Jx eigenvalue");
        o_in = cmd->add_option("--initial-n", initial_n, "initial photon number");
        o_eff = cmd->add_flag("--effective", effective, "add effective-model columns");
        o_jz = cmd->add_flag("--jz-survival", jz_survival, "add the Jz-basis survival column");
        o_out = cmd->add_option("--out", out, "output prefix");
    }

    dc::RunConfig resolve() const {
        dc::RunConfig cfg;
        if (*o_preset) dc::apply_preset(cfg, preset);
        if (*o_config) dc::apply_config_file(cfg, config_file);
        if (*o_J) cfg.model.J = dc::parse_half_integer(J_text);
        if (*o_omega0) cfg.model.omega0 = omega0;
        if (*o_g) cfg.model.g = g;
        if (*o_g2) cfg.model.g = std::sqrt(g2);
        if (*o_nmax) cfg.model.n_max = n_max;
        if (*o_horizon) cfg.horizon_cycles = horizon;
        if (*o_tstart) cfg.t_start_cycles = t_start;
        if (*o_spc) cfg.samples_per_cycle = spc;
        if (*o_im) cfg.initial_m2 = dc::parse_half_integer(initial_m_text).twice();
        if (*o_in) cfg.initial_n = initial_n;
        if (*o_eff) cfg.with_effective = true;
        if (*o_jz) cfg.jz_survival = true;
        if (*o_out) cfg.out = out;
        return cfg;
    }
};

struct ExactRun {
    OperatorMatrix H;
    StateVector psi0;
    Trajectory traj;
    dc::RunDiagnostics diag;
};

ExactRun run_exact(dc::RunConfig& cfg) {
    ModelConfig& m = cfg.model;
    if (m.omega0 < 0.0 || m.g < 0.0) throw dc::ConfigError("omega0 and g must be non-negative");
    if (cfg.horizon_cycles <= 0.0) throw dc::ConfigError("horizon must be positive");
    if (cfg.samples_per_cycle < 2) throw dc::ConfigError("need at least 2 samples per cycle");
    m.initial_n = cfg.initial_n;
    if (m.n_max <= 0) m.n_max = std::max(8, required_n_max(m) + 12);

    const HalfInteger m0 = HalfInteger::from_twice(cfg.initial_m2);
    if (!m0.same_parity(m.J))
        throw dc::ConfigError("initial state |m=" + m0.str() + "> is incompatible with J = " +
                              m.J.str() + "; set --initial-m (e.g. 1/2)");
    if (std::abs(cfg.initial_m2) > m.J.twice() || cfg.initial_n < 0 || cfg.initial_n > m.n_max)
        throw dc::ConfigError("initial state outside the basis");

    ExactRun run;
    run.H = build_dicke(m);
    run.psi0 = basis_state(m.basis(), m0, cfg.initial_n);
    const double cycle = 2.0 * M_PI / m.omega;
    TimeGrid grid{cfg.t_start_cycles * cycle, (cfg.t_start_cycles + cfg.horizon_cycles) * cycle,
                  static_cast<int>(std::lround(cfg.horizon_cycles * cfg.samples_per_cycle)) + 1};
    run.traj = evolve_static(run.H, run.psi0, grid);
    run.diag.method = "eigendecomposition";
    run.diag.norm_drift = dc::norm_drift(run.traj);
    run.diag.cutoff_tail_mass = dc::cutoff_tail_mass(run.traj);
    if (run.diag.cutoff_tail_mass > 1e-6)
        throw CutoffTooSmall("trajectory presses against the Fock cutoff (tail mass " +
                                 std::to_string(run.diag.cutoff_tail_mass) + ")",
                             m.n_max + m.n_max / 2);
    return run;
}

OperatorMatrix build_effective_for(const ModelConfig& m, dc::EffectiveKind kind) {
    switch (kind) {
        case dc::EffectiveKind::ResonantDSC: return build_effective_dsc(m, m.nearest_k());
        case dc::EffectiveKind::HalfIntegerAnyG: return build_effective_half_integer(m);
        case dc::EffectiveKind::LMG: return build_effective_lmg(m);
        default: throw Error("no matrix model for the closed-form overlay");
    }
}

std::vector<double> closed_form_survival(const ModelConfig& m, const TimeGrid& grid) {
    const int k = std::max(1, m.nearest_k());
    const double pmin = pmin_analytic(m.g, k, m.omega, m.omega0);
    const double f = freq_analytic(m.g, k, m.omega, m.omega0);
    std::vector<double> p(grid.n_samples);
    for (int i = 0; i < grid.n_samples; ++i) {
        const double s = std::sin(f * grid.time_at(i));
        p[i] = 1.0 - (1.0 - pmin) * s * s;
    }
    return p;
}

int cmd_simulate(const std::string& command, RunFlags& flags, bool compare_mode) {
    const auto t0 = std::chrono::steady_clock::now();
    dc::RunConfig cfg = flags.resolve();
    if (cfg.out == "dicke_run" && !cfg.preset.empty())
        cfg.out = cfg.preset + (compare_mode ? "_compare" : "");
    ExactRun run = run_exact(cfg);

    const dc::EffectiveKind kind = dc::choose_effective(cfg.model);
    std::string kind_name = "none";
    const TimeGrid& grid = run.traj.grid;

    TimeSeries p = survival_probability(run.traj, run.psi0);

    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
    auto add = [&](const std::string& name, std::vector<double> v) {
        header.push_back(name);
        cols.push_back(std::move(v));
    };
    std::vector<double> times(grid.n_samples);
    for (int i = 0; i < grid.n_samples; ++i) times[i] = grid.time_at(i);

    // effective-model survival, if requested or comparing
    std::vector<double> p_eff;
    Trajectory eff_traj;
    bool eff_matrix = false;
    if (cfg.with_effective || compare_mode) {
        kind_name = dc::effective_kind_name(kind);
        if (kind == dc::EffectiveKind::ClosedFormTwoLevel) {
            p_eff = closed_form_survival(cfg.model, grid);
        } else {
            if (kind == dc::EffectiveKind::LMG && !lmg_validity_ok(cfg.model))
                std::cerr << "warning: parameters sit outside the secular validity bounds; "
                             "the photon-resolved model may drift\n";
            OperatorMatrix Heff = build_effective_for(cfg.model, kind);
            eff_traj = evolve_static(Heff, run.psi0, grid);
            p_eff = survival_probability(eff_traj, run.psi0).values;
            eff_matrix = true;
        }
    }

    if (compare_mode) {
        add("t", times);
        add("P_exact", p.values);
        add("P_effective", p_eff);
        std::vector<double> running(grid.n_samples);
        double worst = 0.0;
        for (int i = 0; i < grid.n_samples; ++i) {
            worst = std::max(worst, std::abs(p.values[i] - p_eff[i]));
            running[i] = worst;
        }
        add("max_diff_running", running);
    } else {
        add("t", times);
        add("P", p.values);
        add("photon_cdf_0", photon_cdf(run.traj, 0).values);
        add("photon_cdf_1", photon_cdf(run.traj, std::min(1, cfg.model.n_max)).values);
        add("photon_cdf_2", photon_cdf(run.traj, std::min(2, cfg.model.n_max)).values);
        SpinOperators spin = spin_operators(cfg.model.J);
        OperatorMatrix JZ =
            tensor_product(spin.Jz, identity_op(SpaceInfo::fock(cfg.model.n_max)));
        add("jz_expect", expectation(run.traj, JZ).values);
        if (cfg.jz_survival) {
            if (!cfg.model.J.is_integer())
                throw dc::ConfigError("the Jz-basis survival needs integer J");
            OperatorMatrix V = jz_eigenbasis_transform(cfg.model.J);
            StateVector ref{Vector::Zero(cfg.model.basis().dim()), cfg.model.basis(), Frame::Lab};
            const int col = cfg.model.J.twice() / 2;  // Jz = 0 column
            for (int level = 0; level < cfg.model.basis().spin_dim(); ++level)
                ref.amps(level * cfg.model.basis().fock_dim()) = V.mat(level, col);
            add("jz_survival", survival_probability(run.traj, ref).values);
        }
        if (!p_eff.empty()) {
            add("P_eff", p_eff);
            if (eff_matrix) {
                add("photon_cdf_1_eff", photon_cdf(eff_traj, std::min(1, cfg.model.n_max)).values);
                SpinOperators s2 = spin_operators(cfg.model.J);
                OperatorMatrix JZ2 =
                    tensor_product(s2.Jz, identity_op(SpaceInfo::fock(cfg.model.n_max)));
                add("jz_expect_eff", expectation(eff_traj, JZ2).values);
            }
        }
    }

    const std::string data_path = cfg.out + ".csv";
    dc::write_csv(data_path, header, cols);
    dc::write_manifest(data_path, command, cfg, kind_name, run.diag, wall_since(t0));
    std::cerr << "wrote " << data_path << " (" << grid.n_samples << " samples, effective model: "
              << kind_name << ")\n";
    return 0;
}

int cmd_scan(const std::string& command, const std::string& J_text, int k, double g_min,
             double g_max, int points, double omega0, double horizon_cycles, int n_max,
             const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    if (points < 1) throw dc::ConfigError("need at least one scan point");
    if (g_max < g_min) throw dc::ConfigError("g-max must be >= g-min");

    ModelConfig base;
    base.J = dc::parse_half_integer(J_text);
    base.omega0 = omega0;

    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = points == 1 ? g_min : g_min + (g_max - g_min) * i / (points - 1.0);

    ScanOptions opts;
    opts.horizon_cycles = horizon_cycles;
    opts.n_max = n_max;
    ScanResult r = scan_resonance(base, k, grid, opts);

    const std::string data_path = out + ".csv";
    dc::write_csv(data_path, {"g", "pmin_num", "pmin_ana", "freq_num", "freq_ana"},
                  {r.g_values, r.pmin_num, r.pmin_ana, r.freq_num, r.freq_ana});
    dc::RunDiagnostics diag;
    diag.method = "eigendecomposition";
    diag.norm_drift = r.max_norm_drift;
    diag.cutoff_tail_mass = r.max_cutoff_tail;
    dc::write_manifest_simple(data_path, command,
                              "resonance scan, k = " + std::to_string(k) + ", J = " + base.J.str(),
                              wall_since(t0), {}, &diag);
    if (r.max_norm_drift > 1e-8 || r.max_cutoff_tail > 1e-6) {
        std::cerr << "convergence error: scan diagnostics out of contract (norm drift "
                  << r.max_norm_drift << ", tail mass " << r.max_cutoff_tail << ")\n";
        return 3;
    }
    std::cerr << "wrote " << data_path << " (" << points << " points)\n";
    return 0;
}

int cmd_chains(const std::string& command, const std::string& J_text, int k, int n_base, int n_max,
               bool partition, bool off_resonant, std::string out) {
    const auto t0 = std::chrono::steady_clock::now();
    HalfInteger J = dc::parse_half_integer(J_text);
    if (out.empty()) out = "chains_J" + std::to_string(J.twice()) + "_k" + std::to_string(k);

    ChainGraph graph;
    if (off_resonant)
        graph = chain_partition(J, std::nullopt, n_max);
    else if (partition)
        graph = chain_partition(J, k, n_max);
    else
        graph = build_chain_graph(J, k, n_base, n_max);

    std::filesystem::path p(out + ".json");
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    {
        std::ofstream js(out + ".json");
        js << graph.to_json() << "\n";
        std::ofstream dot(out + ".dot");
        dot << graph.to_dot();
    }
    dc::write_manifest_simple(out + ".json", command,
                              "dispersive chain graph (" + std::to_string(graph.nodes.size()) +
                                  " nodes, " + std::to_string(graph.edges.size()) + " edges)",
                              wall_since(t0), {out + ".dot"});
    std::cout << graph.to_json() << "\n";
    std::cerr << "wrote " << out << ".json, " << out << ".dot\n";
    return 0;
}

int cmd_coeffs(const std::string& command, int n, int n_hi, int m, int m_hi, double beta,
               const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    if (n_hi < n) n_hi = n;
    if (m_hi < m) m_hi = m;
    std::vector<double> col_n, col_m, col_beta, col_value;
    for (int nn = n; nn <= n_hi; ++nn)
        for (int mm = m; mm <= m_hi; ++mm) {
            col_n.push_back(nn);
            col_m.push_back(mm);
            col_beta.push_back(beta);
            col_value.push_back(omega_coeff(nn, mm, beta));
        }
    if (out.empty()) {
        std::printf("n,m,beta,value\n");
        for (size_t i = 0; i < col_n.size(); ++i)
            std::printf("%d,%d,%.17g,%.17g\n", static_cast<int>(col_n[i]),
                        static_cast<int>(col_m[i]), col_beta[i], col_value[i]);
        return 0;
    }
    const std::string data_path = out + ".csv";
    dc::write_csv(data_path, {"n", "m", "beta", "value"}, {col_n, col_m, col_beta, col_value});
    dc::write_manifest_simple(data_path, command, "displacement Fourier coefficients",
                              wall_since(t0));
    std::cerr << "wrote " << data_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string command = join_args(argc, argv);
    CLI::App app{"Dicke-model simulator for the small-qubit-frequency dispersive regimes"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "exact time evolution, observables as CSV");
    RunFlags sim_flags;
    sim_flags.attach(sim);

    auto* cmp = app.add_subcommand("compare", "exact vs effective survival probability");
    RunFlags cmp_flags;
    cmp_flags.attach(cmp);

    auto* scan = app.add_subcommand("scan", "resonance scan: P_min and frequency vs g");
    std::string scan_J = "1", scan_out = "scan";
    int scan_k = 1, scan_points = 11, scan_nmax = 0;
    double scan_gmin = 0.9, scan_gmax = 1.1, scan_w0 = 0.01, scan_horizon = 0.0;
    scan->add_option("--k", scan_k, "resonance index")->required();
    scan->add_option("--g-min", scan_gmin, "lower end of the g grid")->required();
    scan->add_option("--g-max", scan_gmax, "upper end of the g grid")->required();
    scan->add_option("--points", scan_points, "number of grid points");
    scan->add_option("--omega0", scan_w0, "qubit frequency");
    scan->add_option("--J", scan_J, "total spin");
    scan->add_option("--horizon-cycles", scan_horizon, "0: auto (6 predicted periods)");
    scan->add_option("--n-max", scan_nmax, "Fock cutoff (0: automatic)");
    scan->add_option("--out", scan_out, "output prefix");

    auto* chains_cmd = app.add_subcommand("chains", "dispersive chain graphs as JSON and DOT");
    std::string ch_J = "2", ch_out;
    int ch_k = 1, ch_nbase = 0, ch_nmax = 12;
    bool ch_partition = false, ch_offres = false;
    chains_cmd->add_option("--J", ch_J, "total spin")->required();
    chains_cmd->add_option("--k", ch_k, "resonance index");
    chains_cmd->add_option("--n-base", ch_nbase, "photon number at the chain center");
    chains_cmd->add_option("--n-max", ch_nmax, "Fock cutoff");
    chains_cmd->add_flag("--partition", ch_partition, "decompose the whole truncated space");
    chains_cmd->add_flag("--off-resonant", ch_offres, "off-resonant secular coupling");
    chains_cmd->add_option("--out", ch_out, "output prefix");

    auto* coeffs = app.add_subcommand("coeffs", "displacement Fourier coefficient tables");
    int co_n = 0, co_nhi = -1, co_m = 0, co_mhi = -1;
    double co_beta = 1.0;
    std::string co_out;
    coeffs->add_option("--n", co_n, "photon index (table start)");
    coeffs->add_option("--n-max", co_nhi, "table end in n");
    coeffs->add_option("--m", co_m, "sideband index (table start)");
    coeffs->add_option("--m-max", co_mhi, "table end in m");
    coeffs->add_option("--beta", co_beta, "displacement amplitude g/omega")->required();
    coeffs->add_option("--out", co_out, "output prefix (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(command, sim_flags, false);
        if (cmp->parsed()) return cmd_simulate(command, cmp_flags, true);
        if (scan->parsed())
            return cmd_scan(command, scan_J, scan_k, scan_gmin, scan_gmax, scan_points, scan_w0,
                            scan_horizon, scan_nmax, scan_out);
        if (chains_cmd->parsed())
            return cmd_chains(command, ch_J, ch_k, ch_nbase, ch_nmax, ch_partition, ch_offres,
                              ch_out);
        if (coeffs->parsed())
            return cmd_coeffs(command, co_n, co_nhi, co_m, co_mhi, co_beta, co_out);
    } catch (const dc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CutoffTooSmall& e) {
        std::cerr << "cutoff error: " << e.what() << "\n";
        return 3;
    } catch (const StepTooLarge& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

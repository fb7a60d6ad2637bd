// Acceptance suite: one check per release criterion, one line of output
// each.  Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "dicke/analysis.hpp"
#include "dicke/chains.hpp"
#include "dicke/coefficients.hpp"
#include "dicke/hamiltonians.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/propagate.hpp"

using namespace dicke;

namespace {

struct Hygiene {
    double norm_drift = 0.0;
    double hermiticity = 0.0;
    double step_convergence = 0.0;

    void operator_built(const OperatorMatrix& H) {
        hermiticity = std::max(hermiticity, H.hermiticity_defect());
    }
    void trajectory_run(const Trajectory& traj) {
        for (const auto& s : traj.states)
            norm_drift = std::max(norm_drift, std::abs(s.norm() - 1.0));
    }
    void timedep_run(const TimedepResult& r) {
        trajectory_run(r.traj);
        step_convergence = std::max(step_convergence, r.convergence_delta);
    }
};

Hygiene hygiene;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
    std::printf("[%s] criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

ModelConfig make_cfg(int J2, double g, double omega0, int n_max) {
    ModelConfig cfg;
    cfg.J = HalfInteger::from_twice(J2);
    cfg.g = g;
    cfg.omega0 = omega0;
    cfg.n_max = n_max;
    return cfg;
}

TimeGrid cycles_grid(double cycles, int per_cycle) {
    return {0.0, cycles * 2.0 * M_PI, static_cast<int>(std::lround(cycles * per_cycle)) + 1};
}

TimeSeries survival_curve(const OperatorMatrix& H, const StateVector& psi0, const TimeGrid& grid) {
    hygiene.operator_built(H);
    Trajectory traj = evolve_static(H, psi0, grid);
    hygiene.trajectory_run(traj);
    return survival_probability(traj, psi0);
}

int count_principal_minima(const TimeSeries& p, double enter = 0.25, double exit_at = 0.5) {
    int count = 0;
    bool inside = false;
    for (double v : p.values) {
        if (!inside && v < enter) {
            ++count;
            inside = true;
        } else if (inside && v > exit_at) {
            inside = false;
        }
    }
    return count;
}

// ---- 1: resonant depopulation --------------------------------------------

Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    ModelConfig cfg = make_cfg(2, std::sqrt(5.0), 0.1, 60);
    StateVector psi0 = basis_state(cfg.basis(), HalfInteger::whole(0), 0);
    TimeGrid grid = cycles_grid(25, 64);

    TimeSeries exact = survival_curve(build_dicke(cfg), psi0, grid);
    OperatorMatrix Heff = build_effective_dsc(cfg, 5);
    TimeSeries eff = survival_curve(Heff, psi0, grid);

    // effective Rabi period from the coupling out of |0,0>
    const int origin = cfg.basis().index(HalfInteger::whole(0), 0);
    const double v_tot = Heff.mat.row(origin).norm();
    const double period = M_PI / v_tot;

    double min_exact = 2.0, t_exact = 0.0, min_eff = 2.0, t_eff = 0.0;
    for (int i = 0; i < grid.n_samples; ++i) {
        const double t = grid.time_at(i);
        if (t > period) break;
        if (exact.values[i] < min_exact) {
            min_exact = exact.values[i];
            t_exact = t;
        }
        if (eff.values[i] < min_eff) {
            min_eff = eff.values[i];
            t_eff = t;
        }
    }
    const double t_mismatch = std::abs(t_exact - t_eff) / t_eff;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Outcome o;
    o.pass = min_exact < 0.05 && t_mismatch <= 0.20 && secs < 60.0;
    o.detail = fmt("min P = %.4f at t = %.2f, effective minimum at %.2f, mismatch %.1f%%, %.1f s",
                   min_exact, t_exact, t_eff, 100.0 * t_mismatch, secs);
    return o;
}

// ---- 2: small-omega0 secular agreement ------------------------------------

Outcome criterion2() {
    // quantitative branch: omega0 = 0.01, 800 cycles
    ModelConfig cfg = make_cfg(8, 1.0, 0.01, 80);
    StateVector psi0 = basis_state(cfg.basis(), HalfInteger::whole(0), 0);
    TimeGrid grid = cycles_grid(800, 16);
    TimeSeries exact = survival_curve(build_dicke(cfg), psi0, grid);
    TimeSeries eff = survival_curve(build_effective_dsc(cfg, 1), psi0, grid);
    double worst = 0.0;
    for (int i = 0; i < grid.n_samples; ++i)
        worst = std::max(worst, std::abs(exact.values[i] - eff.values[i]));

    // qualitative branch: omega0 = 0.1 over the fig2b window
    ModelConfig loud = make_cfg(8, 1.0, 0.1, 120);
    StateVector psi0b = basis_state(loud.basis(), HalfInteger::whole(0), 0);
    TimeGrid gridb = cycles_grid(40, 16);
    TimeSeries exact_b = survival_curve(build_dicke(loud), psi0b, gridb);
    TimeSeries eff_b = survival_curve(build_effective_dsc(loud, 1), psi0b, gridb);
    const int n_exact = count_principal_minima(exact_b);
    const int n_eff = count_principal_minima(eff_b);

    Outcome o;
    o.pass = worst <= 0.1 && n_exact == n_eff;
    o.detail = fmt("max |P_exact - P_eff| = %.4f over 800 cycles; principal minima %d vs %d "
                   "at omega0 = 0.1",
                   worst, n_exact, n_eff);
    return o;
}

// ---- 3/4: closed forms against the sweep -----------------------------------

ScanResult sweep_result;
ScanResult asym_result;

void run_sweeps() {
    ModelConfig base;
    base.J = HalfInteger::whole(1);
    base.omega0 = 0.01;
    sweep_result = scan_resonance(base, 1, {1.0, 1.02, 1.05, 1.1});
    asym_result = scan_resonance(base, 1, {0.95, 1.05});
}

Outcome criterion3() {
    double worst = 0.0;
    for (size_t i = 0; i < sweep_result.g_values.size(); ++i)
        worst = std::max(worst, std::abs(sweep_result.pmin_num[i] - sweep_result.pmin_ana[i]));

    const double lo = asym_result.pmin_num[0], hi = asym_result.pmin_num[1];
    const bool analytic_asym = asym_result.pmin_ana[1] > asym_result.pmin_ana[0];
    // Lorentzian in g^2: the +detuning side sits higher, numerically too
    const bool numeric_asym = std::abs(hi - lo) > 1e-4 && hi > lo;

    Outcome o;
    o.pass = worst <= 0.05 && analytic_asym && numeric_asym;
    o.detail = fmt("max |P_min error| = %.4f; P_min(0.95) = %.5f vs P_min(1.05) = %.5f "
                   "(analytic %.5f vs %.5f)",
                   worst, lo, hi, asym_result.pmin_ana[0], asym_result.pmin_ana[1]);
    return o;
}

Outcome criterion4() {
    double worst = 0.0;
    for (size_t i = 0; i < sweep_result.g_values.size(); ++i) {
        const double rel =
            std::abs(sweep_result.freq_num[i] - sweep_result.freq_ana[i]) / sweep_result.freq_ana[i];
        worst = std::max(worst, rel);
    }
    Outcome o;
    o.pass = worst <= 0.05;
    o.detail = fmt("max relative frequency error = %.2f%%", 100.0 * worst);
    return o;
}

// ---- 5: off-resonant suppression -------------------------------------------

Outcome criterion5() {
    const double pmin_ref = pmin_analytic(1.2, 1, 1.0, 0.01);
    double worst_min = 2.0;
    std::string parts;
    for (int J2 : {2, 4}) {
        ModelConfig cfg = make_cfg(J2, 1.2, 0.01, J2 == 2 ? 40 : 48);
        StateVector psi0 = basis_state(cfg.basis(), HalfInteger::whole(0), 0);
        TimeSeries p = survival_curve(build_dicke(cfg), psi0, cycles_grid(800, 16));
        const double mn = *std::min_element(p.values.begin(), p.values.end());
        worst_min = std::min(worst_min, mn);
        parts += fmt("%sJ=%d: %.5f", parts.empty() ? "" : ", ", J2 / 2, mn);
    }
    Outcome o;
    o.pass = worst_min >= 0.95;
    o.detail = fmt("min P over 800 cycles: %s (closed form predicts %.5f)", parts.c_str(),
                   pmin_ref);
    return o;
}

// ---- 6: photon-number-dependent regime --------------------------------------

Outcome criterion6() {
    // J = 4
    ModelConfig cfg = make_cfg(8, std::sqrt(0.01 / 4.0), 0.01, 12);
    StateVector psi0 = basis_state(cfg.basis(), HalfInteger::whole(0), 0);
    TimeGrid grid = cycles_grid(200, 16);
    OperatorMatrix H = build_dicke(cfg);
    hygiene.operator_built(H);
    Trajectory exact = evolve_static(H, psi0, grid);
    hygiene.trajectory_run(exact);
    TimeSeries p_exact = survival_probability(exact, psi0);
    TimeSeries cdf1 = photon_cdf(exact, 1);
    TimeSeries p_lmg = survival_curve(build_effective_lmg(cfg), psi0, grid);

    double worst = 0.0;
    for (int i = 0; i < grid.n_samples; ++i)
        worst = std::max(worst, std::abs(p_exact.values[i] - p_lmg.values[i]));
    const double cdf1_min = *std::min_element(cdf1.values.begin(), cdf1.values.end());

    // J = 20
    ModelConfig big = make_cfg(40, std::sqrt(0.01 / 20.0), 0.01, 12);
    StateVector psi0b = basis_state(big.basis(), HalfInteger::whole(0), 0);
    OperatorMatrix Hb = build_dicke(big);
    hygiene.operator_built(Hb);
    Trajectory exact_b = evolve_static(Hb, psi0b, grid);
    hygiene.trajectory_run(exact_b);
    TimeSeries cdf2 = photon_cdf(exact_b, 2);
    const double cdf2_min = *std::min_element(cdf2.values.begin(), cdf2.values.end());

    Outcome o;
    o.pass = worst <= 0.05 && cdf1_min >= 0.95 && cdf2_min >= 0.95;
    o.detail = fmt("max |P_exact - P_LMG| = %.5f (J=4); min cdf(1) = %.4f (J=4), "
                   "min cdf(2) = %.4f (J=20)",
                   worst, cdf1_min, cdf2_min);
    return o;
}

// ---- 7: coefficient oracle ---------------------------------------------------

Outcome criterion7() {
    const int cutoff = 400;
    double worst = 0.0;
    for (double beta : {0.5, 1.0, std::sqrt(3.0), std::sqrt(5.0)}) {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
        for (int n = 1; n <= cutoff; ++n) {
            const double s = beta * std::sqrt(static_cast<double>(n));
            G(n - 1, n) = s;
            G(n, n - 1) = -s;
        }
        Eigen::MatrixXd D = G.exp();  // exp(beta (a - adag)), Pade route
        for (int n = 0; n <= 50; ++n)
            for (int m = 0; m <= 10; ++m) {
                const double elem = displacement_element(n, m, beta);
                const double sign = (m % 2 == 0) ? 1.0 : -1.0;
                worst = std::max(worst, std::abs(D(n, n + m) - elem));
                worst = std::max(worst, std::abs(D(n + m, n) - sign * elem));
            }
    }
    Outcome o;
    o.pass = worst <= 1e-10;
    o.detail = fmt("max |closed form - brute force| = %.2e (n <= 50, m <= 10)", worst);
    return o;
}

// ---- 8: chain structure --------------------------------------------------------

Outcome criterion8() {
    Outcome o;
    o.pass = true;

    // canonical chains of the two figure panels
    ChainGraph half = build_chain_graph(HalfInteger::from_twice(3), 1, 0, 12);
    std::vector<int> photons;
    for (const auto& n : half.nodes) photons.push_back(n.n);
    if (photons != std::vector<int>{2, 0, 0, 2} || half.edges.size() != 3) {
        o.pass = false;
        o.detail += "J=3/2 chain shape mismatch; ";
    }
    ChainGraph full = build_chain_graph(HalfInteger::whole(2), 1, 0, 12);
    photons.clear();
    for (const auto& n : full.nodes) photons.push_back(n.n);
    if (photons != std::vector<int>{4, 1, 0, 1, 4} || full.edges.size() != 4) {
        o.pass = false;
        o.detail += "J=2 chain shape mismatch; ";
    }

    // off-resonant half-integer collapse: equal-n pairs plus dark stretched states
    ChainGraph collapsed = chain_partition(HalfInteger::from_twice(3), std::nullopt, 10);
    int pairs = 0, singles = 0;
    for (const auto& comp : collapsed.components) {
        if (comp.size() == 2) {
            const auto& a = collapsed.nodes[comp[0]];
            const auto& b = collapsed.nodes[comp[1]];
            if (a.n != b.n || std::abs(a.m.twice()) != 1 || std::abs(b.m.twice()) != 1) {
                o.pass = false;
                o.detail += "bad pair in the collapsed partition; ";
            }
            ++pairs;
        } else if (comp.size() == 1) {
            if (std::abs(collapsed.nodes[comp[0]].m.twice()) != 3) {
                o.pass = false;
                o.detail += "unexpected decoupled state; ";
            }
            ++singles;
        } else {
            o.pass = false;
            o.detail += "oversized component in the collapsed partition; ";
        }
    }
    if (pairs != 11 || singles != 22) {
        o.pass = false;
        o.detail += fmt("collapse counts %d pairs / %d singles; ", pairs, singles);
    }

    // adjacency equals effective-Hamiltonian sparsity for all J <= 4, k <= 5
    int combos = 0;
    double worst_missing = 0.0;
    for (int J2 = 1; J2 <= 8 && o.pass; ++J2) {
        for (int k = 1; k <= 5 && o.pass; ++k) {
            ModelConfig cfg = make_cfg(J2, std::sqrt(static_cast<double>(k)), 2.0, 40);
            cfg.check_cutoff = false;  // structural comparison at a fixed cutoff
            OperatorMatrix H = build_effective_resonant(cfg, k);
            hygiene.operator_built(H);
            ChainGraph part = chain_partition(cfg.J, k, cfg.n_max);
            Matrix pattern = Matrix::Zero(H.dim(), H.dim());
            for (const auto& e : part.edges) {
                pattern(e.a, e.b) = 1.0;
                pattern(e.b, e.a) = 1.0;
            }
            for (int r = 0; r < H.dim() && o.pass; ++r)
                for (int c = 0; c < H.dim(); ++c) {
                    const bool in_h = std::abs(H.mat(r, c)) > 1e-14;
                    const bool in_graph = pattern(r, c).real() != 0.0;
                    if (in_h != in_graph) {
                        o.pass = false;
                        worst_missing = std::abs(H.mat(r, c));
                        o.detail += fmt("sparsity mismatch at 2J=%d k=%d entry (%d,%d) |H|=%.2e; ",
                                        J2, k, r, c, worst_missing);
                        break;
                    }
                }
            ++combos;
        }
    }
    if (o.pass)
        o.detail = fmt("figure chains, half-integer collapse, and %d sparsity patterns match",
                       combos);
    return o;
}

// ---- 9: frame consistency ------------------------------------------------------

Outcome criterion9() {
    double worst_fid = 0.0;
    for (int J2 : {2, 4}) {
        ModelConfig cfg = make_cfg(J2, 1.0, 0.1, J2 == 2 ? 32 : 40);
        cfg.frame = Frame::InteractionH2;
        cfg.check_cutoff = false;

        Vector amps = Vector::Zero(cfg.basis().dim());
        amps(cfg.basis().index(HalfInteger::whole(0), 0)) = 0.6;
        amps(cfg.basis().index(HalfInteger::whole(1), 1)) = Complex(0.0, 0.64);
        amps(cfg.basis().index(HalfInteger::whole(-1), 0)) = -0.48;
        StateVector psi0{amps / amps.norm(), cfg.basis(), Frame::Lab};

        OperatorMatrix H = build_dicke(cfg);
        hygiene.operator_built(H);
        TimeGrid grid = cycles_grid(10, 2);
        Trajectory lab = evolve_static(H, psi0, grid);
        hygiene.trajectory_run(lab);

        LabFrameComposer composer(cfg);
        TimedepResult inner = evolve_timedep(build_h2(cfg), composer.to_inner(psi0), grid);
        hygiene.timedep_run(inner);
        for (int i = 0; i < grid.n_samples; ++i) {
            StateVector composed = composer.to_lab(inner.traj.states[i], grid.time_at(i));
            worst_fid = std::max(worst_fid, 1.0 - std::norm(composed.amps.dot(lab.states[i].amps)));
        }
    }

    // interior spectra of the lab and displaced Hamiltonians
    ModelConfig cfg = make_cfg(4, 1.0, 0.1, 60);
    cfg.check_cutoff = false;
    OperatorMatrix H = build_dicke(cfg), Hp = build_displaced(cfg);
    hygiene.operator_built(H);
    hygiene.operator_built(Hp);
    Eigen::SelfAdjointEigenSolver<Matrix> es(H.mat), esp(Hp.mat);
    double worst_eig = 0.0;
    const int keep = static_cast<int>(0.3 * H.dim());
    for (int i = 0; i < keep; ++i)
        worst_eig = std::max(worst_eig, std::abs(es.eigenvalues()(i) - esp.eigenvalues()(i)));

    Outcome o;
    o.pass = worst_fid <= 1e-6 && worst_eig <= 1e-8;
    o.detail = fmt("max fidelity deficit = %.2e (J = 1, 2 over 10 cycles); "
                   "interior spectral mismatch = %.2e",
                   worst_fid, worst_eig);
    return o;
}

// ---- 10: scalar predictions ------------------------------------------------------

Outcome criterion10() {
    const double gc = g_crit(1.0, 1e-6, 100);
    ValidityBounds b = validity_bounds(HalfInteger::whole(50), 1.0, 1e-6, 1e-4);
    Outcome o;
    const bool gc_ok = std::abs(gc - 1e-4) <= 1e-12 * 1e-4;
    const bool w0_ok = std::abs(b.omega0_bound - 1e-3) <= 1e-12;
    const bool g_ok = std::abs(b.g_bound - std::sqrt(0.1) / 100.0) <= 1e-12;
    o.pass = gc_ok && w0_ok && g_ok;
    o.detail = fmt("g_crit = %.6e, omega0 bound = %.6e, g bound = %.6e", gc, b.omega0_bound,
                   b.g_bound);
    return o;
}

// ---- 11: hygiene -------------------------------------------------------------------

Outcome criterion11() {
    Outcome o;
    o.pass = hygiene.norm_drift <= 1e-8 && hygiene.hermiticity <= 1e-12 &&
             hygiene.step_convergence <= 1e-6;
    o.detail = fmt("norm drift %.2e <= 1e-8, hermiticity %.2e <= 1e-12, "
                   "step convergence %.2e <= 1e-6",
                   hygiene.norm_drift, hygiene.hermiticity, hygiene.step_convergence);
    return o;
}

// formula attribution (reported, not asserted): the closed forms are derived
// for two qubits; check how they fare against a four-qubit run
void report_attribution() {
    ModelConfig base;
    base.J = HalfInteger::whole(2);
    base.omega0 = 0.01;
    ScanResult r = scan_resonance(base, 1, {1.05});
    std::printf("[info] closed forms at g = 1.05, J = 2: P_min %.5f vs analytic %.5f, "
                "freq %.6f vs analytic %.6f (J = 1 derivation; J = 1 sweep errors above)\n",
                r.pmin_num[0], r.pmin_ana[0], r.freq_num[0], r.freq_ana[0]);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    report(1, "resonant depopulation (two atoms, k = 5)", criterion1());
    report(2, "small-omega0 secular agreement (eight atoms)", criterion2());
    run_sweeps();
    report(3, "survival-minimum closed form", criterion3());
    report(4, "frequency closed form", criterion4());
    report(5, "off-resonant suppression", criterion5());
    report(6, "photon-number-dependent regime", criterion6());
    report(7, "coefficient oracle equivalence", criterion7());
    report(8, "dispersive chain structure", criterion8());
    report(9, "frame consistency", criterion9());
    report(10, "scalar predictions", criterion10());
    report(11, "numerical hygiene", criterion11());
    report_attribution();

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/11 criteria passed in %.1f s\n", 11 - failures, secs);
    return failures == 0 ? 0 : 1;
}

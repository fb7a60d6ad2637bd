#pragma once

#include <vector>

#include "dicke/hamiltonians.hpp"

namespace dicke {

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    int n_samples = 0;  // includes both endpoints, >= 2

    double span() const { return t_end - t_start; }
    double dt() const { return span() / (n_samples - 1); }
    double time_at(int i) const { return t_start + i * dt(); }
    void validate() const;
};

struct TimeSeries {
    TimeGrid grid;
    std::vector<double> values;
};

struct Trajectory {
    TimeGrid grid;
    std::vector<StateVector> states;
};

struct EvolveOptions {
    int eig_dim_limit = 4000;   // above this, Krylov stepping instead of full eigh
    double krylov_tol = 1e-12;
    int krylov_m_max = 64;
};

/// psi(t) = e^{-iHt} psi0 at the grid samples.  Dense eigendecomposition up
/// to eig_dim_limit, Lanczos stepping above it.
Trajectory evolve_static(const OperatorMatrix& H, const StateVector& psi0, const TimeGrid& grid,
                         const EvolveOptions& opts = {});

struct StepControl {
    double dt_init = 0.0;       // 0: period/512
    double tol = 1e-6;          // max amplitude change allowed under step halving
    int max_halvings = 8;
    EvolveOptions inner = {};
};

struct TimedepResult {
    Trajectory traj;
    double final_step = 0.0;
    double convergence_delta = 0.0;  // amplitude change at the last halving
    int halvings = 0;
};

/// Fourth-order commutator-free Magnus stepping with automatic step halving
/// until consecutive refinements agree to ctrl.tol in every amplitude.
TimedepResult evolve_timedep(const TimeDependentHamiltonian& H, const StateVector& psi0,
                             const TimeGrid& grid, const StepControl& ctrl = {});

/// e^{-i tau H} v via Lanczos (H hermitian).
Vector krylov_expm_apply(const Matrix& H, const Vector& v, double tau, double tol = 1e-12,
                         int m_max = 64);

// Maps states between the interaction pictures and the lab frame:
//   U_lab(t) = D(-lambda) e^{-i omega t n} [e^{+i (g^2/w) Jx^2 t}] U_inner(t) D(+lambda)
// with lambda = (g/w) Jx; the bracketed phase applies to the second
// interaction picture only.
class LabFrameComposer {
public:
    explicit LabFrameComposer(const ModelConfig& cfg);

    /// D(+lambda) psi_lab, tagged with cfg.frame (InteractionH2/H3).
    StateVector to_inner(const StateVector& psi_lab) const;
    /// Lab-frame state at time t from an inner-frame state.
    StateVector to_lab(const StateVector& inner, double t) const;

private:
    ModelConfig cfg_;
    Matrix d_plus_, d_minus_;
};

/// One-shot convenience around LabFrameComposer::to_lab.
StateVector compose_lab_frame(const StateVector& inner, const ModelConfig& cfg, double t);

/// |<psi_ref | psi(t)>|^2 per sample.
TimeSeries survival_probability(const Trajectory& traj, const StateVector& psi_ref);

/// Probability of finding at most m_max photons, per sample.
TimeSeries photon_cdf(const Trajectory& traj, int m_max);

/// <psi(t)| O |psi(t)>; requires hermitian O (real output).
TimeSeries expectation(const Trajectory& traj, const OperatorMatrix& O);

}  // namespace dicke

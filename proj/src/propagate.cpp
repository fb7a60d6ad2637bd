#include "dicke/propagate.hpp"

#include <cmath>

#include "dicke/hilbert.hpp"

namespace dicke {

void TimeGrid::validate() const {
    if (n_samples < 2) throw Error("time grid needs at least 2 samples");
    if (!(t_end > t_start)) throw Error("time grid must be strictly increasing");
}

namespace {

void check_state_on(const OperatorMatrix& H, const StateVector& psi) {
    if (H.space.kind != SpaceInfo::Product || H.space.basis != psi.basis)
        throw DimensionMismatch("operator and state live on different spaces");
}

Vector krylov_expm_impl(const Matrix& H, const Vector& v, double tau, double tol, int m_max,
                        int depth) {
    const double vnorm = v.norm();
    if (vnorm == 0.0 || tau == 0.0) return v;
    if (depth > 48) throw Error("Krylov step splitting did not converge");

    const int dim = static_cast<int>(v.size());
    m_max = std::min(m_max, dim);

    Eigen::MatrixXcd V(dim, m_max + 1);
    Eigen::VectorXd alpha(m_max), beta(m_max);
    V.col(0) = v / vnorm;

    // exp(-i tau T_m) e1 expressed in the Lanczos basis, plus the weight of
    // the would-be next basis vector as the error estimate
    auto small_solution = [&](int mm, double* err) -> Eigen::VectorXcd {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(mm, mm);
        for (int i = 0; i < mm; ++i) {
            T(i, i) = alpha(i);
            if (i + 1 < mm) T(i, i + 1) = T(i + 1, i) = beta(i);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        Eigen::MatrixXcd U = es.eigenvectors().cast<Complex>();
        Eigen::VectorXcd phases(mm);
        for (int i = 0; i < mm; ++i) phases(i) = std::exp(Complex(0.0, -tau * es.eigenvalues()(i)));
        Eigen::VectorXcd small = U * (phases.asDiagonal() * U.adjoint().col(0));
        if (err) *err = beta(mm - 1) * std::abs(small(mm - 1));
        return small;
    };

    int m = 0;
    bool breakdown = false;
    while (m < m_max) {
        Vector w = H * V.col(m);
        Complex a = V.col(m).dot(w);
        alpha(m) = a.real();
        w -= a * V.col(m);
        if (m > 0) w -= Complex(beta(m - 1)) * V.col(m - 1);
        // full reorthogonalization keeps the basis clean at long tau
        for (int j = 0; j <= m; ++j) w -= V.col(j).dot(w) * V.col(j);
        beta(m) = w.norm();
        ++m;
        if (beta(m - 1) < 1e-14 * std::max(1.0, std::abs(alpha(m - 1)))) {
            breakdown = true;  // invariant subspace: result exact
            break;
        }
        V.col(m) = w / beta(m - 1);

        if (m == m_max || (m >= 8 && m % 4 == 0)) {
            double err = 0.0;
            Eigen::VectorXcd small = small_solution(m, &err);
            if (err < tol) return vnorm * (V.leftCols(m) * small);
        }
    }
    if (breakdown) {
        Eigen::VectorXcd small = small_solution(m, nullptr);
        return vnorm * (V.leftCols(m) * small);
    }

    // Krylov space saturated: split the step
    const double sub_tol = std::max(0.5 * tol, 1e-14);
    Vector half = krylov_expm_impl(H, v, 0.5 * tau, sub_tol, m_max, depth + 1);
    return krylov_expm_impl(H, half, 0.5 * tau, sub_tol, m_max, depth + 1);
}

}  // namespace

Vector krylov_expm_apply(const Matrix& H, const Vector& v, double tau, double tol, int m_max) {
    return krylov_expm_impl(H, v, tau, tol, m_max, 0);
}

Trajectory evolve_static(const OperatorMatrix& H, const StateVector& psi0, const TimeGrid& grid,
                         const EvolveOptions& opts) {
    grid.validate();
    check_state_on(H, psi0);
    H.require_hermitian(1e-10);
    psi0.check_normalized(1e-9);

    Trajectory traj;
    traj.grid = grid;
    traj.states.reserve(grid.n_samples);

    if (H.dim() <= opts.eig_dim_limit) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(H.mat);
        Vector c0 = es.eigenvectors().adjoint() * psi0.amps;
        for (int s = 0; s < grid.n_samples; ++s) {
            const double t = grid.time_at(s);
            Vector c = c0;
            for (int i = 0; i < c.size(); ++i)
                c(i) *= std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
            StateVector psi{es.eigenvectors() * c, psi0.basis, psi0.frame};
            psi.check_normalized(1e-9);
            traj.states.push_back(std::move(psi));
        }
    } else {
        // Krylov stepping sample to sample
        StateVector cur = psi0;
        Vector start = krylov_expm_apply(H.mat, psi0.amps, grid.t_start, opts.krylov_tol,
                                         opts.krylov_m_max);
        cur.amps = start;
        traj.states.push_back(cur);
        for (int s = 1; s < grid.n_samples; ++s) {
            cur.amps = krylov_expm_apply(H.mat, cur.amps, grid.dt(), opts.krylov_tol,
                                         opts.krylov_m_max);
            cur.check_normalized(1e-9);
            traj.states.push_back(cur);
        }
    }
    return traj;
}

namespace {

// Fourth-order commutator-free Magnus step over [t, t+h]: two exponentials
// built from the Hamiltonian at the Gauss-Legendre nodes.
Vector cf4_step(const TimeDependentHamiltonian& H, const Vector& psi, double t, double h,
                const EvolveOptions& opts) {
    static const double root3 = std::sqrt(3.0);
    const double c1 = 0.5 - root3 / 6.0, c2 = 0.5 + root3 / 6.0;
    const double a1 = (3.0 - 2.0 * root3) / 12.0, a2 = (3.0 + 2.0 * root3) / 12.0;

    Matrix H1 = H.eval(t + c1 * h);
    Matrix H2 = H.eval(t + c2 * h);
    Matrix A_first = a2 * H1 + a1 * H2;   // acts first
    Matrix A_second = a1 * H1 + a2 * H2;  // acts second
    Vector mid = krylov_expm_apply(A_first, psi, h, opts.krylov_tol, opts.krylov_m_max);
    return krylov_expm_apply(A_second, mid, h, opts.krylov_tol, opts.krylov_m_max);
}

Trajectory run_timedep(const TimeDependentHamiltonian& H, const StateVector& psi0,
                       const TimeGrid& grid, double dt, const EvolveOptions& opts) {
    Trajectory traj;
    traj.grid = grid;
    traj.states.reserve(grid.n_samples);

    Vector cur = psi0.amps;
    double t = 0.0;
    // march from t = 0 to the first sample, then between samples
    auto advance_to = [&](double target) {
        while (t < target - 1e-12 * std::max(1.0, std::abs(target))) {
            double h = std::min(dt, target - t);
            cur = cf4_step(H, cur, t, h, opts);
            t += h;
        }
        t = target;
    };

    for (int s = 0; s < grid.n_samples; ++s) {
        advance_to(grid.time_at(s));
        StateVector state{cur, psi0.basis, psi0.frame};
        traj.states.push_back(std::move(state));
    }
    return traj;
}

double max_amplitude_diff(const Trajectory& x, const Trajectory& y) {
    double worst = 0.0;
    for (size_t s = 0; s < x.states.size(); ++s)
        worst = std::max(worst, (x.states[s].amps - y.states[s].amps).cwiseAbs().maxCoeff());
    return worst;
}

}  // namespace

TimedepResult evolve_timedep(const TimeDependentHamiltonian& H, const StateVector& psi0,
                             const TimeGrid& grid, const StepControl& ctrl) {
    grid.validate();
    if (psi0.basis != H.basis) throw DimensionMismatch("state does not match Hamiltonian basis");
    psi0.check_normalized(1e-9);
    if (grid.t_start < 0.0) throw Error("time-dependent propagation starts at t >= 0");

    double dt = ctrl.dt_init > 0.0 ? ctrl.dt_init : H.period / 512.0;
    Trajectory coarse = run_timedep(H, psi0, grid, dt, ctrl.inner);
    for (int halving = 0; halving <= ctrl.max_halvings; ++halving) {
        Trajectory fine = run_timedep(H, psi0, grid, 0.5 * dt, ctrl.inner);
        double delta = max_amplitude_diff(coarse, fine);
        if (delta < ctrl.tol) {
            for (auto& s : fine.states) s.check_normalized(1e-8);
            return {std::move(fine), 0.5 * dt, delta, halving};
        }
        coarse = std::move(fine);
        dt *= 0.5;
    }
    throw StepTooLarge("step halving did not reach the convergence tolerance " +
                       std::to_string(ctrl.tol));
}

LabFrameComposer::LabFrameComposer(const ModelConfig& cfg) : cfg_(cfg) {
    if (cfg.frame != Frame::InteractionH2 && cfg.frame != Frame::InteractionH3)
        throw FrameMismatch("lab-frame composition is defined for the interaction pictures");
    const double beta = cfg.beta();
    d_plus_ = displacement_operator(cfg.J, cfg.n_max,
                                    [beta](HalfInteger m) { return beta * m.value(); })
                  .mat;
    d_minus_ = displacement_operator(cfg.J, cfg.n_max,
                                     [beta](HalfInteger m) { return -beta * m.value(); })
                   .mat;
}

StateVector LabFrameComposer::to_inner(const StateVector& psi_lab) const {
    if (psi_lab.basis != cfg_.basis()) throw DimensionMismatch("state basis mismatch");
    if (psi_lab.frame != Frame::Lab) throw FrameMismatch("to_inner expects a lab-frame state");
    return {d_plus_ * psi_lab.amps, psi_lab.basis, cfg_.frame};
}

StateVector LabFrameComposer::to_lab(const StateVector& inner, double t) const {
    if (inner.basis != cfg_.basis()) throw DimensionMismatch("state basis mismatch");
    if (inner.frame != cfg_.frame)
        throw FrameMismatch("inner state frame does not match the composer configuration");

    const SpinBosonBasis basis = cfg_.basis();
    const int S = basis.spin_dim(), F = basis.fock_dim();
    Vector v = inner.amps;
    if (cfg_.frame == Frame::InteractionH3) {
        const double chi = cfg_.g * cfg_.g / cfg_.omega;
        for (int i = 0; i < S; ++i) {
            const double m = basis.m_of_level(i).value();
            const Complex ph = std::exp(Complex(0.0, chi * m * m * t));
            v.segment(i * F, F) *= ph;
        }
    }
    for (int i = 0; i < S; ++i)
        for (int n = 0; n < F; ++n) v(i * F + n) *= std::exp(Complex(0.0, -cfg_.omega * n * t));
    return {d_minus_ * v, basis, Frame::Lab};
}

StateVector compose_lab_frame(const StateVector& inner, const ModelConfig& cfg, double t) {
    return LabFrameComposer(cfg).to_lab(inner, t);
}

TimeSeries survival_probability(const Trajectory& traj, const StateVector& psi_ref) {
    TimeSeries ts;
    ts.grid = traj.grid;
    ts.values.reserve(traj.states.size());
    for (const auto& s : traj.states) {
        if (s.basis != psi_ref.basis) throw DimensionMismatch("reference state basis mismatch");
        const double p = std::norm(psi_ref.amps.dot(s.amps));
        ts.values.push_back(std::min(p, 1.0));
    }
    return ts;
}

TimeSeries photon_cdf(const Trajectory& traj, int m_max) {
    TimeSeries ts;
    ts.grid = traj.grid;
    ts.values.reserve(traj.states.size());
    for (const auto& s : traj.states) {
        const SpinBosonBasis& b = s.basis;
        if (m_max < 0 || m_max > b.n_max)
            throw IndexOutOfRange("photon_cdf cutoff outside [0, n_max]");
        double p = 0.0;
        for (int level = 0; level < b.spin_dim(); ++level)
            for (int n = 0; n <= m_max; ++n) p += std::norm(s.amps(level * b.fock_dim() + n));
        ts.values.push_back(std::min(p, 1.0));
    }
    return ts;
}

TimeSeries expectation(const Trajectory& traj, const OperatorMatrix& O) {
    if (!O.hermitian) O.require_hermitian();
    TimeSeries ts;
    ts.grid = traj.grid;
    ts.values.reserve(traj.states.size());
    for (const auto& s : traj.states) {
        if (O.dim() != s.amps.size()) throw DimensionMismatch("operator/state dimension mismatch");
        ts.values.push_back((s.amps.adjoint() * (O.mat * s.amps))(0, 0).real());
    }
    return ts;
}

}  // namespace dicke

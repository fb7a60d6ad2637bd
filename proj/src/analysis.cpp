#include "dicke/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "dicke/hamiltonians.hpp"

namespace dicke {

namespace {

// 4 w^2 w0^2 (g/w)^{2k} e^{-g^2/w^2} / k!, the squared-coupling term shared
// by the Lorentzian minimum and the shifted frequency
double coupling_term(double g, int k, double omega, double omega0) {
    const double b2 = (g / omega) * (g / omega);
    return 4.0 * omega * omega * omega0 * omega0 *
           std::exp(k * std::log(b2) - b2 - std::lgamma(k + 1.0));
}

}  // namespace

double pmin_analytic(double g, int k, double omega, double omega0) {
    if (k < 1) throw Error("pmin_analytic requires k >= 1");
    const double detuning = g * g - k * omega * omega;
    const double num = detuning * detuning;
    const double den = num + coupling_term(g, k, omega, omega0);
    if (den == 0.0) return 0.0;  // exact resonance at omega0 = 0
    return num / den;
}

double freq_analytic(double g, int k, double omega, double omega0) {
    if (k < 1) throw Error("freq_analytic requires k >= 1");
    const double detuning = g * g - k * omega * omega;
    return 0.5 * std::sqrt(detuning * detuning + coupling_term(g, k, omega, omega0));
}

ValidityBounds validity_bounds(HalfInteger J, double omega, double omega0, double g,
                               GBoundReading reading) {
    const double Jv = J.value();
    const double scale = reading == GBoundReading::AtomNumber ? 2.0 * Jv : Jv;
    ValidityBounds b;
    b.omega0_margin = (2.0 * omega0 * Jv) / (0.1 * omega);
    b.g_margin = (g / omega) * (g / omega) * scale * scale / 0.1;
    b.omega0_bound = Jv > 0.0 ? 0.1 * omega / (2.0 * Jv) : std::numeric_limits<double>::infinity();
    b.g_bound = scale > 0.0 ? omega * std::sqrt(0.1) / scale : std::numeric_limits<double>::infinity();
    b.ok = b.omega0_margin <= 1.0 && b.g_margin <= 1.0;
    return b;
}

double g_crit(double omega, double omega0, int n_atoms) {
    if (n_atoms < 1) throw Error("g_crit requires at least one atom");
    if (omega0 < 0.0) throw Error("g_crit requires omega0 >= 0");
    return std::sqrt(omega0 * omega / n_atoms);
}

double series_min_after_burn_in(const TimeSeries& series, double burn_in) {
    const int N = static_cast<int>(series.values.size());
    int start = static_cast<int>(burn_in * N);
    start = std::min(std::max(start, 0), N - 1);
    double best = series.values[start];
    for (int i = start; i < N; ++i) best = std::min(best, series.values[i]);
    return best;
}

double dominant_half_rate(const TimeSeries& series, double omega_floor, double omega_ceil) {
    const int N = static_cast<int>(series.values.size());
    if (N < 8) throw Error("series too short for frequency extraction");
    const double dt = series.grid.dt();
    const double T = series.grid.span();

    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= N;

    const double resolution = 2.0 * M_PI / T;
    const double step = resolution / 8.0;
    omega_floor = std::max(omega_floor, step);
    if (omega_ceil <= omega_floor) throw Error("empty frequency search window");

    // dense periodogram |sum_j x_j e^{-i w t_j}| with incremental phasors
    const int M = static_cast<int>((omega_ceil - omega_floor) / step) + 1;
    std::vector<double> amp(M);
    for (int q = 0; q < M; ++q) {
        const double w = omega_floor + q * step;
        const Complex rot = std::exp(Complex(0.0, -w * dt));
        Complex phasor(1.0, 0.0), acc(0.0, 0.0);
        for (int j = 0; j < N; ++j) {
            acc += (series.values[j] - mean) * phasor;
            phasor *= rot;
        }
        amp[q] = std::abs(acc);
    }
    int peak = static_cast<int>(std::max_element(amp.begin(), amp.end()) - amp.begin());
    double w_peak = omega_floor + peak * step;
    if (peak > 0 && peak + 1 < M) {
        const double denom = amp[peak - 1] - 2.0 * amp[peak] + amp[peak + 1];
        if (denom != 0.0) {
            double shift = 0.5 * (amp[peak - 1] - amp[peak + 1]) / denom;
            shift = std::clamp(shift, -1.0, 1.0);
            w_peak += shift * step;
        }
    }
    return 0.5 * w_peak;
}

namespace {

int worker_count(int requested, int points) {
    if (requested <= 0) {
        if (const char* env = std::getenv("DICKE_THREADS")) requested = std::atoi(env);
        if (requested <= 0) requested = static_cast<int>(std::thread::hardware_concurrency());
        if (requested <= 0) requested = 1;
    }
    return std::max(1, std::min(requested, points));
}

}  // namespace

ScanResult scan_resonance(const ModelConfig& base, int k, const std::vector<double>& g_grid,
                          const ScanOptions& opts) {
    if (k < 1) throw Error("scan_resonance requires k >= 1");
    const int P = static_cast<int>(g_grid.size());
    ScanResult result;
    result.g_values = g_grid;
    result.pmin_num.assign(P, 0.0);
    result.pmin_ana.assign(P, 0.0);
    result.freq_num.assign(P, 0.0);
    result.freq_ana.assign(P, 0.0);

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::mutex diag_mutex;
    auto work = [&]() {
        try {
        for (int i = next.fetch_add(1); i < P; i = next.fetch_add(1)) {
            ModelConfig cfg = base;
            cfg.g = g_grid[i];
            cfg.frame = Frame::Lab;

            const double f_ana = freq_analytic(cfg.g, k, cfg.omega, cfg.omega0);
            const double predicted_period = M_PI / f_ana;  // P(t) period: 2 pi / (2 f)
            double horizon = 6.0 * predicted_period;
            if (opts.horizon_cycles > 0.0)
                horizon = std::max(horizon, opts.horizon_cycles * 2.0 * M_PI / cfg.omega);

            cfg.n_max = opts.n_max > 0 ? opts.n_max : required_n_max(cfg) + 12;
            const double cycles = horizon * cfg.omega / (2.0 * M_PI);
            TimeGrid grid{0.0, horizon,
                          std::max(64, static_cast<int>(cycles * opts.samples_per_cycle)) + 1};

            OperatorMatrix H = build_dicke(cfg);
            StateVector psi0 = basis_state(cfg.basis(), HalfInteger::whole(0), 0);
            Trajectory traj = evolve_static(H, psi0, grid);
            TimeSeries p = survival_probability(traj, psi0);

            double drift = 0.0, tail = 0.0;
            const int tail_lo = std::max(0, cfg.n_max - 3);
            for (const auto& s : traj.states) {
                drift = std::max(drift, std::abs(s.norm() - 1.0));
                double mass = 0.0;
                for (int level = 0; level < cfg.basis().spin_dim(); ++level)
                    for (int n = tail_lo; n <= cfg.n_max; ++n)
                        mass += std::norm(s.amps(level * cfg.basis().fock_dim() + n));
                tail = std::max(tail, mass);
            }
            {
                std::lock_guard<std::mutex> lock(diag_mutex);
                result.max_norm_drift = std::max(result.max_norm_drift, drift);
                result.max_cutoff_tail = std::max(result.max_cutoff_tail, tail);
            }

            result.pmin_ana[i] = pmin_analytic(cfg.g, k, cfg.omega, cfg.omega0);
            result.freq_ana[i] = f_ana;
            result.pmin_num[i] = series_min_after_burn_in(p, 0.01);
            result.freq_num[i] =
                dominant_half_rate(p, 1.5 * 2.0 * M_PI / horizon, 0.45 * cfg.omega);
        }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    const int W = worker_count(opts.threads, P);
    pool.reserve(W);
    for (int w = 0; w < W; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return result;
}

}  // namespace dicke

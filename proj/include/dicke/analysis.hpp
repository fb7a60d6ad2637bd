#pragma once

#include <vector>

#include "dicke/model_config.hpp"
#include "dicke/propagate.hpp"

namespace dicke {

/// Closed-form survival-probability minimum near the k-th resonance
/// (two-qubit case, J = 1): Lorentzian in g^2, not in g.
double pmin_analytic(double g, int k, double omega, double omega0);

/// Closed-form oscillation frequency near the k-th resonance: half the
/// angular rate of the P(t) oscillation (the energy half-splitting of the
/// reduced two-level problem).  Units of omega with omega = 1.
double freq_analytic(double g, int k, double omega, double omega0);

struct ValidityBounds {
    bool ok = false;
    double omega0_margin = 0.0;  // (2 omega0 J) / (0.1 omega)
    double g_margin = 0.0;       // (g/omega)^2 N^2 / 0.1 (or J^2, see reading)
    double omega0_bound = 0.0;   // largest omega0 passing at this J
    double g_bound = 0.0;        // largest g passing at this J
};

// The printed g-bound is ambiguous between N = 2J and J; only the N-based
// reading reproduces the worked 100-atom numbers, so it is the default.
enum class GBoundReading { AtomNumber, TotalSpin };

ValidityBounds validity_bounds(HalfInteger J, double omega, double omega0, double g,
                               GBoundReading reading = GBoundReading::AtomNumber);

/// Critical coupling sqrt(omega0 omega / N) of the superradiant transition.
double g_crit(double omega, double omega0, int n_atoms);

struct ScanResult {
    std::vector<double> g_values;
    std::vector<double> pmin_num, pmin_ana;
    std::vector<double> freq_num, freq_ana;
    double max_norm_drift = 0.0;   // worst |norm - 1| across all points
    double max_cutoff_tail = 0.0;  // worst top-four-row population
};

struct ScanOptions {
    double horizon_cycles = 0.0;  // 0: auto, 6 predicted oscillation periods
    int samples_per_cycle = 16;
    int n_max = 0;                // 0: cutoff heuristic + margin
    int threads = 0;              // 0: DICKE_THREADS env or hardware
};

/// Full lab-frame simulation per grid point: records min P(t) (first 1% of
/// samples skipped) and the dominant oscillation frequency, paired with the
/// closed forms.  Points run concurrently; results merged in grid order.
ScanResult scan_resonance(const ModelConfig& base, int k, const std::vector<double>& g_grid,
                          const ScanOptions& opts = {});

/// Half the angular frequency of the dominant spectral peak of the
/// mean-subtracted series (dense periodogram, parabolic refinement).
/// Search window [omega_floor, omega_ceil]; pass omega_ceil below the mode
/// frequency to skip micromotion lines.
double dominant_half_rate(const TimeSeries& series, double omega_floor, double omega_ceil);

/// Minimum after discarding the leading burn_in fraction of samples.
double series_min_after_burn_in(const TimeSeries& series, double burn_in = 0.01);

}  // namespace dicke

#pragma once

#include <cmath>

#include "dicke/basis.hpp"

namespace dicke {

// Physical parameters plus numerical controls.  All frequencies are in
// units of the mode frequency; the CLI fixes omega = 1.
struct ModelConfig {
    double omega = 1.0;       // mode frequency (> 0, sets the time/energy unit)
    double omega0 = 0.0;      // qubit frequency
    double g = 0.0;           // coupling
    HalfInteger J = HalfInteger::whole(1);
    int n_max = 0;            // Fock cutoff
    Frame frame = Frame::Lab;

    double resonance_tol = 1e-9;   // |(g/omega)^2 - k| for exact-resonance builders
    int initial_n = 0;             // initial photon number, feeds the cutoff heuristic
    bool check_cutoff = true;

    SpinBosonBasis basis() const { return {J, n_max}; }
    double beta() const { return g / omega; }
    int nearest_k() const {
        int k = static_cast<int>(std::lround(beta() * beta()));
        return k < 0 ? 0 : k;
    }
};

/// Cutoff heuristic: chain extent (4k for the innermost transitions) plus
/// displaced-state spread (mean beta^2 J^2 plus a 6-sigma margin).
int required_n_max(const ModelConfig& cfg);

/// Throws CutoffTooSmall when cfg.check_cutoff and n_max < required_n_max.
void enforce_cutoff(const ModelConfig& cfg);

/// Validates |(g/omega)^2 - k| <= resonance_tol, k >= 1; throws OffResonance.
void require_resonance(const ModelConfig& cfg, int k);

}  // namespace dicke

#pragma once

#include <functional>

#include "dicke/model_config.hpp"

namespace dicke {

/// Lab-frame Hamiltonian omega0 Jz + omega a^dag a + g Jx (a + a^dag).
OperatorMatrix build_dicke(const ModelConfig& cfg);

/// Polaron-displaced Hamiltonian
///   (omega0/2)(e^{(g/w)(a-a^dag)} J- + H.c.) + omega a^dag a - (g^2/w) Jx^2,
/// diagonal in |m,n> when omega0 = 0.
OperatorMatrix build_displaced(const ModelConfig& cfg);

// Time-periodic Hamiltonian as a closure over precomputed constant blocks;
// evaluation applies phase factors only.
struct TimeDependentHamiltonian {
    SpinBosonBasis basis;
    double period = 0.0;  // fast (mode) period 2 pi / omega
    std::function<Matrix(double)> eval;

    OperatorMatrix at(double t) const;
};

/// Interaction picture of the displaced Hamiltonian with respect to
/// omega a^dag a; equals build_displaced minus that term at t = 0.
TimeDependentHamiltonian build_h2(const ModelConfig& cfg);

/// Second interaction picture, additionally rotating away -(g^2/w) Jx^2;
/// the J- term acquires the phase operator e^{i (g^2/w)(2Jx+1) t}.
TimeDependentHamiltonian build_h3(const ModelConfig& cfg);

/// Secular (period-averaged) Hamiltonian at the resonance g^2 = k omega^2,
/// valid for integer and half-integer J.  Each J- transition m+1 -> m is
/// accompanied by the photon sideband it resonates with:
///   delta = (2m+1)k > 0:  Omega_n^delta a^delta
///   delta < 0:            (-1)^|delta| a^dag^|delta| Omega_n^|delta|
///   delta = 0:            Omega_n^0 (photon-number conserving)
OperatorMatrix build_effective_resonant(const ModelConfig& cfg, int k);

/// Integer-J resonant effective Hamiltonian (deep strong coupling).
/// Throws NotInteger for half-integer J and OffResonance off g = sqrt(k) w.
OperatorMatrix build_effective_dsc(const ModelConfig& cfg, int k);

/// Half-integer-J secular Hamiltonian, valid at any coupling: only the
/// m = -1/2 <-> +1/2 transition survives averaging, photon-conserving.
OperatorMatrix build_effective_half_integer(const ModelConfig& cfg);

/// Weak-coupling secular Hamiltonian omega0 Omega_n^0 Jz - (g^2/w) Jx^2:
/// a Lipkin-Meshkov-Glick model in each Fock block.
OperatorMatrix build_effective_lmg(const ModelConfig& cfg);

/// True when cfg sits inside the secular-approximation validity region
/// intended for the LMG regime (see analysis::validity_bounds).
bool lmg_validity_ok(const ModelConfig& cfg);

}  // namespace dicke

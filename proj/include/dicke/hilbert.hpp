#pragma once

#include <functional>

#include "dicke/basis.hpp"

namespace dicke {

// Collective spin matrices in the Jx eigenbasis, levels ordered m = -J..J.
// Jplus/Jminus are ladder operators with respect to Jx (Jpm = Jz -/+ i Jy),
// so Jx Jpm = Jpm (Jx +/- 1), Jz = (J+ + J-)/2 and Jy = (J- - J+)/(2i).
struct SpinOperators {
    OperatorMatrix Jx, Jy, Jz, Jplus, Jminus;
};

SpinOperators spin_operators(HalfInteger J);

struct BosonOperators {
    OperatorMatrix a, adag, number;
};

BosonOperators boson_operators(int n_max);

/// Single-mode displacement exp(beta (a^dag - a)) on the truncated Fock
/// space.  Exactly unitary at any cutoff (exponential of an antisymmetric
/// generator); matrix elements approximate the untruncated operator away
/// from the top rows.
Matrix displacement_block(int n_max, double beta);

/// Block-diagonal displacement exp(Lambda (a^dag - a)) with Lambda diagonal
/// in spin, Lambda|m> = beta_per_m(m)|m>.  Throws CutoffTooSmall when the
/// displaced-vacuum Poisson tail beyond n_max exceeds tail_tol.
OperatorMatrix displacement_operator(HalfInteger J, int n_max,
                                     const std::function<double(HalfInteger)>& beta_per_m,
                                     double tail_tol = 1e-10);

/// Unitary V whose column j is the Jz eigenvector with eigenvalue j - J,
/// expressed in the canonical Jx basis.  Column phases are fixed so the
/// largest-magnitude entry is real positive.
OperatorMatrix jz_eigenbasis_transform(HalfInteger J);

/// P(N > n_max) for N ~ Poisson(mean); summed upward from n_max + 1.
double poisson_tail_above(double mean, int n_max);

}  // namespace dicke

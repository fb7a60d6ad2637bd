#pragma once

#include "dicke/basis.hpp"

namespace dicke {

/// Associated Laguerre polynomial L_n^m(x) by the three-term recurrence
/// upward in n (stable for the x = beta^2 <= 9 regime used here).
double laguerre_assoc(int n, int m, double x);

/// Fourier coefficient of the oscillating displacement operator:
///   Omega_n^m(beta) = beta^m e^{-beta^2/2} L_n^m(beta^2) n!/(n+m)!
/// The factorial ratio is folded in as a product of reciprocal factors;
/// raw factorials overflow near n = 170.
double omega_coeff(int n, int m, double beta);

/// <n| exp(beta (a - a^dag)) |n+m> = Omega_n^m(beta) sqrt((n+m)!/n!).
/// A unitary matrix element, so |result| <= 1.
double displacement_element(int n, int m, double beta);

/// Diagonal Fock-factor operator with entries Omega_n^m(beta); multiplies
/// a^m (or a^dag^m from the right) in the secular expansion.
OperatorMatrix omega_diag_operator(int n_max, int m, double beta);

}  // namespace dicke

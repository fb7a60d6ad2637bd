#include "dicke/coefficients.hpp"

#include <cmath>

namespace dicke {

double laguerre_assoc(int n, int m, double x) {
    if (n < 0 || m < 0) throw Error("laguerre_assoc requires n, m >= 0");
    if (n == 0) return 1.0;
    double lm2 = 1.0;            // L_0^m
    double lm1 = 1.0 + m - x;    // L_1^m
    for (int j = 2; j <= n; ++j) {
        double l = ((2.0 * j - 1.0 + m - x) * lm1 - (j - 1.0 + m) * lm2) / j;
        lm2 = lm1;
        lm1 = l;
    }
    return lm1;
}

double omega_coeff(int n, int m, double beta) {
    if (n < 0 || m < 0) throw Error("omega_coeff requires n, m >= 0");
    if (m == 0 && beta == 0.0) return 1.0;
    // n!/(n+m)! as a running product of reciprocals
    double ratio = 1.0;
    for (int j = 1; j <= m; ++j) ratio /= (n + j);
    return std::pow(beta, m) * std::exp(-0.5 * beta * beta) * laguerre_assoc(n, m, beta * beta) *
           ratio;
}

double displacement_element(int n, int m, double beta) {
    double root_ratio = 1.0;  // sqrt((n+m)!/n!)
    for (int j = 1; j <= m; ++j) root_ratio *= std::sqrt(static_cast<double>(n + j));
    return omega_coeff(n, m, beta) * root_ratio;
}

OperatorMatrix omega_diag_operator(int n_max, int m, double beta) {
    const int F = n_max + 1;
    OperatorMatrix op{Matrix::Zero(F, F), SpaceInfo::fock(n_max), true, false, true};
    for (int n = 0; n < F; ++n) op.mat(n, n) = omega_coeff(n, m, beta);
    return op;
}

}  // namespace dicke

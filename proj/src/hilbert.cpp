#include "dicke/hilbert.hpp"

#include <cmath>

namespace dicke {

namespace {

// sqrt(J(J+1) - m(m+1)) from exact integer arithmetic on 2J, 2m.
double ladder_coeff(HalfInteger J, HalfInteger m) {
    const double tj = J.twice(), tm = m.twice();
    return 0.5 * std::sqrt(tj * (tj + 2.0) - tm * (tm + 2.0));
}

}  // namespace

SpinOperators spin_operators(HalfInteger J) {
    if (J.twice() < 1) throw Error("spin_operators requires J >= 1/2");
    const int S = J.twice() + 1;
    const SpaceInfo space = SpaceInfo::spin(J);

    OperatorMatrix jx{Matrix::Zero(S, S), space, true, false, true};
    OperatorMatrix jp{Matrix::Zero(S, S), space, false, false, false};
    for (int i = 0; i < S; ++i) {
        HalfInteger m = HalfInteger::from_twice(-J.twice() + 2 * i);
        jx.mat(i, i) = m.value();
        if (i + 1 < S) jp.mat(i + 1, i) = ladder_coeff(J, m);
    }

    OperatorMatrix jm{jp.mat.adjoint(), space, false, false, false};
    OperatorMatrix jz{0.5 * (jp.mat + jm.mat), space, true, false, false};
    OperatorMatrix jy{Complex(0.0, 0.5) * (jp.mat - jm.mat), space, true, false, false};
    return {jx, jy, jz, jp, jm};
}

BosonOperators boson_operators(int n_max) {
    if (n_max < 1) throw Error("boson_operators requires n_max >= 1");
    const int F = n_max + 1;
    const SpaceInfo space = SpaceInfo::fock(n_max);

    OperatorMatrix a{Matrix::Zero(F, F), space, false, false, false};
    OperatorMatrix num{Matrix::Zero(F, F), space, true, false, true};
    for (int n = 1; n < F; ++n) a.mat(n - 1, n) = std::sqrt(static_cast<double>(n));
    for (int n = 0; n < F; ++n) num.mat(n, n) = n;

    OperatorMatrix adag{a.mat.adjoint(), space, false, false, false};
    return {a, adag, num};
}

Matrix displacement_block(int n_max, double beta) {
    const int F = n_max + 1;
    if (beta == 0.0) return Matrix::Identity(F, F);
    // exp(beta (adag - a)) = exp(-i G) with hermitian G = i beta (adag - a)
    Matrix G = Matrix::Zero(F, F);
    for (int n = 1; n < F; ++n) {
        const double s = beta * std::sqrt(static_cast<double>(n));
        G(n, n - 1) = Complex(0.0, s);
        G(n - 1, n) = Complex(0.0, -s);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(G);
    Vector phases(F);
    for (int i = 0; i < F; ++i) phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double poisson_tail_above(double mean, int n_max) {
    if (mean <= 0.0) return 0.0;
    double tail = 0.0;
    const double log_mean = std::log(mean);
    for (int n = n_max + 1; n <= n_max + 1 + 400; ++n) {
        double log_p = n * log_mean - mean - std::lgamma(n + 1.0);
        double p = std::exp(log_p);
        tail += p;
        if (p < 1e-30 && n > mean) break;
    }
    return tail;
}

OperatorMatrix displacement_operator(HalfInteger J, int n_max,
                                     const std::function<double(HalfInteger)>& beta_per_m,
                                     double tail_tol) {
    const SpinBosonBasis basis{J, n_max};
    const int S = basis.spin_dim(), F = basis.fock_dim();

    double beta_max = 0.0;
    for (int i = 0; i < S; ++i)
        beta_max = std::max(beta_max, std::abs(beta_per_m(basis.m_of_level(i))));

    if (poisson_tail_above(beta_max * beta_max, n_max) >= tail_tol) {
        int need = n_max;
        while (poisson_tail_above(beta_max * beta_max, need) >= tail_tol) ++need;
        throw CutoffTooSmall("displaced vacuum tail beyond n_max exceeds " +
                                 std::to_string(tail_tol),
                             need);
    }

    OperatorMatrix D;
    D.space = SpaceInfo::product(basis);
    D.mat = Matrix::Zero(basis.dim(), basis.dim());
    bool all_zero = true;
    for (int i = 0; i < S; ++i) {
        const double b = beta_per_m(basis.m_of_level(i));
        if (b != 0.0) all_zero = false;
        D.mat.block(i * F, i * F, F, F) = displacement_block(n_max, b);
    }
    D.unitary = true;
    D.diagonal = all_zero;
    D.hermitian = all_zero;
    return D;
}

OperatorMatrix jz_eigenbasis_transform(HalfInteger J) {
    SpinOperators ops = spin_operators(J);
    Eigen::SelfAdjointEigenSolver<Matrix> es(ops.Jz.mat);
    Matrix V = es.eigenvectors();  // eigenvalues ascending: -J..J, nondegenerate
    for (int c = 0; c < V.cols(); ++c) {
        int imax = 0;
        double best = 0.0;
        for (int r = 0; r < V.rows(); ++r) {
            if (std::abs(V(r, c)) > best + 1e-12) {
                best = std::abs(V(r, c));
                imax = r;
            }
        }
        Complex ph = V(imax, c) / std::abs(V(imax, c));
        V.col(c) *= std::conj(ph);
    }
    return {V, SpaceInfo::spin(J), false, true, false};
}

}  // namespace dicke

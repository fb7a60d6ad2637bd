#include "dicke/hamiltonians.hpp"

#include <cmath>
#include <memory>

#include "dicke/coefficients.hpp"
#include "dicke/hilbert.hpp"

namespace dicke {

namespace {

double ladder_coeff(HalfInteger J, HalfInteger m) {
    const double tj = J.twice(), tm = m.twice();
    return 0.5 * std::sqrt(tj * (tj + 2.0) - tm * (tm + 2.0));
}

// Shared constant blocks of the displaced-frame Hamiltonians.
struct DisplacedParts {
    SpinBosonBasis basis;
    Matrix e0;                    // exp((g/w)(a - adag)) on the Fock factor
    std::vector<double> c;        // ladder coefficients per edge m -> m+1
    std::vector<double> m_values; // Jx eigenvalues
};

DisplacedParts displaced_parts(const ModelConfig& cfg) {
    DisplacedParts p;
    p.basis = cfg.basis();
    p.e0 = displacement_block(cfg.n_max, -cfg.beta());
    const int S = p.basis.spin_dim();
    p.c.resize(S - 1);
    p.m_values.resize(S);
    for (int i = 0; i < S; ++i) p.m_values[i] = p.basis.m_of_level(i).value();
    for (int i = 0; i + 1 < S; ++i) p.c[i] = ladder_coeff(cfg.J, p.basis.m_of_level(i));
    return p;
}

// Places (omega0/2) c_i |m_i><m_i+1| x B and its adjoint for every edge,
// plus a diagonal fock-block function of m.
void assemble_edges(Matrix& H, const DisplacedParts& p, double omega0,
                    const std::function<Matrix(int)>& edge_block,
                    const std::function<double(double)>& diag_of_m) {
    const int S = p.basis.spin_dim(), F = p.basis.fock_dim();
    for (int i = 0; i + 1 < S; ++i) {
        Matrix B = (0.5 * omega0 * p.c[i]) * edge_block(i);
        H.block(i * F, (i + 1) * F, F, F) += B;
        H.block((i + 1) * F, i * F, F, F) += B.adjoint();
    }
    for (int i = 0; i < S; ++i)
        H.block(i * F, i * F, F, F).diagonal().array() += diag_of_m(p.m_values[i]);
}

}  // namespace

OperatorMatrix build_dicke(const ModelConfig& cfg) {
    enforce_cutoff(cfg);
    SpinOperators spin = spin_operators(cfg.J);
    BosonOperators bos = boson_operators(cfg.n_max);

    OperatorMatrix x_plus_xdag{bos.a.mat + bos.adag.mat, SpaceInfo::fock(cfg.n_max), true, false,
                               false};
    OperatorMatrix H = tensor_product(spin.Jz, identity_op(SpaceInfo::fock(cfg.n_max)));
    H.mat *= cfg.omega0;
    H.mat += cfg.omega * tensor_product(identity_op(SpaceInfo::spin(cfg.J)), bos.number).mat;
    H.mat += cfg.g * tensor_product(spin.Jx, x_plus_xdag).mat;
    H.hermitian = true;
    H.unitary = H.diagonal = false;
    H.require_hermitian();
    return H;
}

OperatorMatrix build_displaced(const ModelConfig& cfg) {
    enforce_cutoff(cfg);
    DisplacedParts p = displaced_parts(cfg);
    const int F = p.basis.fock_dim();
    const double chi = cfg.g * cfg.g / cfg.omega;

    OperatorMatrix H{Matrix::Zero(p.basis.dim(), p.basis.dim()), SpaceInfo::product(p.basis), true,
                     false, false};
    Matrix number = Matrix::Zero(F, F);
    for (int n = 0; n < F; ++n) number(n, n) = n;

    assemble_edges(
        H.mat, p, cfg.omega0, [&](int) { return p.e0; },
        [&](double m) { return -chi * m * m; });
    for (int i = 0; i < p.basis.spin_dim(); ++i)
        H.mat.block(i * F, i * F, F, F) += cfg.omega * number;
    H.require_hermitian();
    return H;
}

OperatorMatrix TimeDependentHamiltonian::at(double t) const {
    OperatorMatrix op{eval(t), SpaceInfo::product(basis), true, false, false};
    return op;
}

TimeDependentHamiltonian build_h2(const ModelConfig& cfg) {
    enforce_cutoff(cfg);
    auto p = std::make_shared<DisplacedParts>(displaced_parts(cfg));
    const double omega = cfg.omega, omega0 = cfg.omega0;
    const double chi = cfg.g * cfg.g / cfg.omega;

    TimeDependentHamiltonian H;
    H.basis = p->basis;
    H.period = 2.0 * M_PI / omega;
    H.eval = [p, omega, omega0, chi](double t) {
        const int F = p->basis.fock_dim();
        // E(t)_{jk} = e^{i omega (j-k) t} E0_{jk}: phase mask, no rebuild
        Vector ph(F);
        for (int n = 0; n < F; ++n) ph(n) = std::exp(Complex(0.0, omega * n * t));
        Matrix Et = ph.asDiagonal() * p->e0 * ph.conjugate().asDiagonal();
        Matrix Hm = Matrix::Zero(p->basis.dim(), p->basis.dim());
        assemble_edges(
            Hm, *p, omega0, [&](int) { return Et; },
            [&](double m) { return -chi * m * m; });
        return Hm;
    };
    return H;
}

TimeDependentHamiltonian build_h3(const ModelConfig& cfg) {
    enforce_cutoff(cfg);
    auto p = std::make_shared<DisplacedParts>(displaced_parts(cfg));
    const double omega = cfg.omega, omega0 = cfg.omega0;
    const double chi = cfg.g * cfg.g / cfg.omega;

    TimeDependentHamiltonian H;
    H.basis = p->basis;
    H.period = 2.0 * M_PI / omega;
    H.eval = [p, omega, omega0, chi](double t) {
        const int F = p->basis.fock_dim();
        Vector ph(F);
        for (int n = 0; n < F; ++n) ph(n) = std::exp(Complex(0.0, omega * n * t));
        Matrix Et = ph.asDiagonal() * p->e0 * ph.conjugate().asDiagonal();
        Matrix Hm = Matrix::Zero(p->basis.dim(), p->basis.dim());
        assemble_edges(
            Hm, *p, omega0,
            [&](int i) {
                // J- picks up e^{i chi (2 Jx + 1) t} on the lower level
                Complex phase = std::exp(Complex(0.0, chi * (2.0 * p->m_values[i] + 1.0) * t));
                return Matrix(phase * Et);
            },
            [](double) { return 0.0; });
        return Hm;
    };
    return H;
}

OperatorMatrix build_effective_resonant(const ModelConfig& cfg, int k) {
    enforce_cutoff(cfg);
    require_resonance(cfg, k);
    const SpinBosonBasis basis = cfg.basis();
    const int S = basis.spin_dim(), F = basis.fock_dim();
    const double beta = cfg.beta();

    OperatorMatrix H{Matrix::Zero(basis.dim(), basis.dim()), SpaceInfo::product(basis), true,
                     false, false};
    for (int i = 0; i + 1 < S; ++i) {
        const HalfInteger m = basis.m_of_level(i);
        const double c = ladder_coeff(cfg.J, m);
        const int delta = (m.twice() + 1) * k;  // photon sideband resonant with this edge

        Matrix B = Matrix::Zero(F, F);
        if (delta > 0) {
            for (int n = 0; n + delta < F; ++n)
                B(n, n + delta) = displacement_element(n, delta, beta);
        } else if (delta < 0) {
            const int d = -delta;
            const double sign = (d % 2 == 0) ? 1.0 : -1.0;
            for (int n = 0; n + d < F; ++n)
                B(n + d, n) = sign * displacement_element(n, d, beta);
        } else {
            for (int n = 0; n < F; ++n) B(n, n) = omega_coeff(n, 0, beta);
        }
        B *= 0.5 * cfg.omega0 * c;
        H.mat.block(i * F, (i + 1) * F, F, F) += B;
        H.mat.block((i + 1) * F, i * F, F, F) += B.adjoint();
    }
    H.require_hermitian();
    return H;
}

OperatorMatrix build_effective_dsc(const ModelConfig& cfg, int k) {
    if (!cfg.J.is_integer())
        throw NotInteger("resonant effective Hamiltonian for half-integer J = " + cfg.J.str() +
                         ": use build_effective_half_integer");
    return build_effective_resonant(cfg, k);
}

OperatorMatrix build_effective_half_integer(const ModelConfig& cfg) {
    if (cfg.J.is_integer())
        throw NotHalfInteger("build_effective_half_integer requires half-integer J, got " +
                             cfg.J.str());
    enforce_cutoff(cfg);
    const SpinBosonBasis basis = cfg.basis();
    const int F = basis.fock_dim();
    const int lo = basis.spin_index(HalfInteger::from_twice(-1));
    const int hi = basis.spin_index(HalfInteger::from_twice(1));
    const double c = ladder_coeff(cfg.J, HalfInteger::from_twice(-1));  // J + 1/2

    Matrix omega_block = omega_diag_operator(cfg.n_max, 0, cfg.beta()).mat;
    OperatorMatrix H{Matrix::Zero(basis.dim(), basis.dim()), SpaceInfo::product(basis), true,
                     false, false};
    H.mat.block(lo * F, hi * F, F, F) = 0.5 * cfg.omega0 * c * omega_block;
    H.mat.block(hi * F, lo * F, F, F) = 0.5 * cfg.omega0 * c * omega_block;
    H.require_hermitian();
    return H;
}

OperatorMatrix build_effective_lmg(const ModelConfig& cfg) {
    SpinOperators spin = spin_operators(cfg.J);
    OperatorMatrix omega0_part =
        tensor_product(spin.Jz, omega_diag_operator(cfg.n_max, 0, cfg.beta()));
    OperatorMatrix jx2{spin.Jx.mat * spin.Jx.mat, SpaceInfo::spin(cfg.J), true, false, true};
    OperatorMatrix H = tensor_product(jx2, identity_op(SpaceInfo::fock(cfg.n_max)));
    H.mat = cfg.omega0 * omega0_part.mat - (cfg.g * cfg.g / cfg.omega) * H.mat;
    H.hermitian = true;
    H.diagonal = false;
    H.require_hermitian();
    return H;
}

bool lmg_validity_ok(const ModelConfig& cfg) {
    const double Jv = cfg.J.value();
    const double n_atoms = 2.0 * Jv;
    return 2.0 * cfg.omega0 * Jv <= 0.1 * cfg.omega &&
           cfg.beta() * cfg.beta() * n_atoms * n_atoms <= 0.1;
}

}  // namespace dicke

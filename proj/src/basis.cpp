#include "dicke/basis.hpp"

namespace dicke {

const char* frame_name(Frame f) {
    switch (f) {
        case Frame::Lab: return "lab";
        case Frame::Displaced: return "displaced";
        case Frame::InteractionH2: return "interaction_h2";
        case Frame::InteractionH3: return "interaction_h3";
        case Frame::EffectiveDSC: return "effective_dsc";
        case Frame::EffectiveHalfInteger: return "effective_half_integer";
        case Frame::EffectiveLMG: return "effective_lmg";
    }
    return "?";
}

int SpinBosonBasis::spin_index(HalfInteger m) const {
    if (!m.same_parity(J))
        throw IndexOutOfRange("magnetic number " + m.str() + " has wrong parity for J = " + J.str());
    if (m.twice() < -J.twice() || m.twice() > J.twice())
        throw IndexOutOfRange("magnetic number " + m.str() + " outside [-J, J], J = " + J.str());
    return (m.twice() + J.twice()) / 2;
}

int SpinBosonBasis::index(HalfInteger m, int n) const {
    if (n < 0 || n > n_max)
        throw IndexOutOfRange("Fock index " + std::to_string(n) + " outside [0, " +
                              std::to_string(n_max) + "]");
    return spin_index(m) * fock_dim() + n;
}

std::pair<HalfInteger, int> SpinBosonBasis::state_at(int idx) const {
    if (idx < 0 || idx >= dim()) throw IndexOutOfRange("state index out of range");
    int level = idx / fock_dim();
    int n = idx % fock_dim();
    return {m_of_level(level), n};
}

int SpaceInfo::dim() const {
    switch (kind) {
        case SpinFactor: return basis.spin_dim();
        case FockFactor: return basis.fock_dim();
        case Product: return basis.dim();
    }
    return 0;
}

double OperatorMatrix::hermiticity_defect() const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

double OperatorMatrix::unitarity_defect() const {
    Matrix r = mat.adjoint() * mat;
    r.diagonal().array() -= 1.0;
    return r.cwiseAbs().maxCoeff();
}

void OperatorMatrix::require_hermitian(double tol) const {
    double defect = hermiticity_defect();
    if (defect > tol)
        throw NonHermitian("operator is not hermitian (defect " + std::to_string(defect) + ")");
}

OperatorMatrix identity_op(const SpaceInfo& space) {
    OperatorMatrix op;
    op.space = space;
    op.mat = Matrix::Identity(space.dim(), space.dim());
    op.hermitian = op.unitary = op.diagonal = true;
    return op;
}

OperatorMatrix tensor_product(const OperatorMatrix& spin_op, const OperatorMatrix& fock_op) {
    if (spin_op.space.kind != SpaceInfo::SpinFactor || fock_op.space.kind != SpaceInfo::FockFactor)
        throw DimensionMismatch("tensor_product expects a spin factor and a Fock factor");
    const int S = spin_op.dim(), F = fock_op.dim();
    OperatorMatrix out;
    out.space = SpaceInfo::product({spin_op.space.basis.J, fock_op.space.basis.n_max});
    out.mat.resize(S * F, S * F);
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j)
            out.mat.block(i * F, j * F, F, F) = spin_op.mat(i, j) * fock_op.mat;
    out.hermitian = spin_op.hermitian && fock_op.hermitian;
    out.unitary = spin_op.unitary && fock_op.unitary;
    out.diagonal = spin_op.diagonal && fock_op.diagonal;
    return out;
}

void StateVector::check_normalized(double tol) const {
    double n = norm();
    if (std::abs(n - 1.0) > tol)
        throw Error("state norm " + std::to_string(n) + " deviates from 1 beyond tolerance");
}

StateVector basis_state(const SpinBosonBasis& basis, HalfInteger m, int n) {
    StateVector psi;
    psi.basis = basis;
    psi.amps = Vector::Zero(basis.dim());
    psi.amps(basis.index(m, n)) = 1.0;
    return psi;
}

}  // namespace dicke

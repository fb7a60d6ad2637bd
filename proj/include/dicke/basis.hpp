#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "dicke/errors.hpp"
#include "dicke/half_integer.hpp"

namespace dicke {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Frame {
    Lab,
    Displaced,
    InteractionH2,
    InteractionH3,
    EffectiveDSC,
    EffectiveHalfInteger,
    EffectiveLMG,
};

const char* frame_name(Frame f);

/// Collective spin J tensor a Fock mode truncated at n_max.  Spin levels are
/// Jx eigenstates ordered m = -J..J; |m,n> sits at index (m+J)*(n_max+1)+n.
struct SpinBosonBasis {
    HalfInteger J;
    int n_max = 0;

    int spin_dim() const { return J.twice() + 1; }
    int fock_dim() const { return n_max + 1; }
    int dim() const { return spin_dim() * fock_dim(); }

    // 0-based spin level of magnetic number m; throws on range or parity.
    int spin_index(HalfInteger m) const;
    int index(HalfInteger m, int n) const;
    std::pair<HalfInteger, int> state_at(int idx) const;
    // magnetic number of 0-based spin level
    HalfInteger m_of_level(int level) const { return HalfInteger::from_twice(-J.twice() + 2 * level); }

    bool operator==(const SpinBosonBasis&) const = default;
};

// Which factor of the tensor space a matrix acts on.
struct SpaceInfo {
    enum Kind { SpinFactor, FockFactor, Product } kind = Product;
    SpinBosonBasis basis;

    int dim() const;
    bool operator==(const SpaceInfo&) const = default;

    static SpaceInfo spin(HalfInteger J) { return {SpinFactor, {J, 0}}; }
    static SpaceInfo fock(int n_max) { return {FockFactor, {HalfInteger::whole(0), n_max}}; }
    static SpaceInfo product(const SpinBosonBasis& b) { return {Product, b}; }
};

// Complex square matrix tied to a space, with structural flags.  Flags are
// set by constructors that can guarantee them (to 1e-12 max-norm).
struct OperatorMatrix {
    Matrix mat;
    SpaceInfo space;
    bool hermitian = false;
    bool unitary = false;
    bool diagonal = false;

    int dim() const { return static_cast<int>(mat.rows()); }
    double hermiticity_defect() const;            // max |H - H^dag|
    double unitarity_defect() const;              // max |U^dag U - 1|
    void require_hermitian(double tol = 1e-12) const;
};

OperatorMatrix identity_op(const SpaceInfo& space);
// Kronecker product, spin factor slow, Fock factor fast.
OperatorMatrix tensor_product(const OperatorMatrix& spin_op, const OperatorMatrix& fock_op);

struct StateVector {
    Vector amps;
    SpinBosonBasis basis;
    Frame frame = Frame::Lab;

    double norm() const { return amps.norm(); }
    void check_normalized(double tol = 1e-10) const;
};

/// Unit vector |m,n> in the canonical basis.
StateVector basis_state(const SpinBosonBasis& basis, HalfInteger m, int n);

}  // namespace dicke

#pragma once

// Unitary representations of finite groups and their matrix coefficients.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"
#include "matfun.hpp"

namespace godement {

struct UnitaryRep {
    GroupPtr group;
    std::size_t dim = 1;
    std::vector<Matrix> matrices;  // matrices[g] = pi(g)

    const Matrix& operator()(Element g) const { return matrices[g]; }
};

struct RepCheck {
    double unitarity = 0;     // max_g ||M(g) M(g)^dagger - I||_F
    double homomorphism = 0;  // max_{a,b} ||M(a) M(b) - M(ab)||_F
    double identity = 0;      // ||M(e) - I||_F

    bool ok(double tol = 1e-10) const { return unitarity <= tol && homomorphism <= tol && identity <= tol; }
};

inline RepCheck check_rep(const UnitaryRep& p) {
    const GroupTable& t = *p.group;
    const auto d = static_cast<Eigen::Index>(p.dim);
    const Matrix id = Matrix::Identity(d, d);
    RepCheck c;
    for (Element a = 0; a < t.order; ++a) {
        c.unitarity = std::max(c.unitarity, (p(a) * p(a).adjoint() - id).norm());
        for (Element b = 0; b < t.order; ++b)
            c.homomorphism = std::max(c.homomorphism, (p(a) * p(b) - p(t.mult[a][b])).norm());
    }
    c.identity = (p(t.identity) - id).norm();
    return c;
}

inline UnitaryRep trivial_rep(const GroupPtr& group) {
    return {group, 1, std::vector<Matrix>(group->order, Matrix::Identity(1, 1))};
}

/// Left regular representation: M(g) e_h = e_{gh}.
inline UnitaryRep regular_rep(const GroupPtr& group) {
    const GroupTable& t = *group;
    const auto n = static_cast<Eigen::Index>(t.order);
    UnitaryRep p{group, t.order, {}};
    p.matrices.reserve(t.order);
    for (Element g = 0; g < t.order; ++g) {
        Matrix m = Matrix::Zero(n, n);
        for (Element h = 0; h < t.order; ++h) m(static_cast<Eigen::Index>(t.mult[g][h]), static_cast<Eigen::Index>(h)) = 1.0;
        p.matrices.push_back(std::move(m));
    }
    return p;
}

/// Elementwise complex conjugate representation.
inline UnitaryRep conjugate_rep(const UnitaryRep& p) {
    UnitaryRep q = p;
    for (auto& m : q.matrices) m = m.conjugate().eval();
    return q;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

/// pi_1 (x) pi_2 with basis pair (i, j) at index i*d2 + j.
inline UnitaryRep tensor_product(const UnitaryRep& p1, const UnitaryRep& p2) {
    if (!same_group(p1.group, p2.group)) throw ShapeMismatch("tensor_product: representations of different groups");
    UnitaryRep p{p1.group, p1.dim * p2.dim, {}};
    p.matrices.reserve(p1.matrices.size());
    for (Element g = 0; g < p1.group->order; ++g) p.matrices.push_back(kronecker(p1(g), p2(g)));
    return p;
}

inline Vector kronecker(const Vector& a, const Vector& b) {
    Vector k(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) k.segment(i * b.size(), b.size()) = a(i) * b;
    return k;
}

/// Hermitian inner product <x, y> = sum x_i conj(y_i), linear in x.
inline Complex hermitian_inner(const Vector& x, const Vector& y) { return y.dot(x); }

/// [Phi]_ij(g) = <pi(g) u_j, u_i>, i.e. Phi(g) = U^dagger pi(g) U with U = [u_1 ... u_n].
///
/// This orientation is the one that makes Phi positive definite: the Gram form
/// sum_{a,b} v_a^dagger Phi(x_a^{-1} x_b) v_b equals ||sum_b pi(x_b) U v_b||^2.
/// The transposed choice <pi(g) u_i, u_j> is the entrywise conjugate of Phi for
/// the conjugate representation and is handled by callers through
/// conjugate(...).
inline MatFun matrix_coeff_fun(const UnitaryRep& p, const std::vector<Vector>& vectors) {
    if (vectors.empty()) throw ShapeMismatch("matrix_coeff_fun: need at least one vector");
    const auto n = static_cast<Eigen::Index>(vectors.size());
    Matrix u(static_cast<Eigen::Index>(p.dim), n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<std::size_t>(vectors[static_cast<std::size_t>(i)].size()) != p.dim)
            throw ShapeMismatch("matrix_coeff_fun: vector dimension differs from representation dimension");
        u.col(i) = vectors[static_cast<std::size_t>(i)];
    }
    MatFun phi(p.group, vectors.size());
    for (Element g = 0; g < p.group->order; ++g) phi[g] = u.adjoint() * p(g) * u;
    return phi;
}

/// Random Gaussian vectors, deterministic per seed.
inline std::vector<Vector> random_vectors(std::size_t count, std::size_t dim, std::uint64_t seed) {
    const CounterRng rng(seed);
    std::vector<Vector> out(count, Vector(static_cast<Eigen::Index>(dim)));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t k = 0; k < dim; ++k) out[i](static_cast<Eigen::Index>(k)) = rng.complex_gaussian(i * dim + k);
    return out;
}

}  // namespace godement

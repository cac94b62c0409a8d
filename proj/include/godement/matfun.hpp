#pragma once

// The convolution *-algebra of Mn-valued functions on a finite group.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "group.hpp"
#include "random.hpp"

namespace godement {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A function G -> C^n, stored element by element.
class VecFun {
public:
    VecFun(GroupPtr group, std::size_t n) : group_(std::move(group)), n_(n) {
        values_.assign(group_->order, Vector::Zero(static_cast<Eigen::Index>(n)));
    }

    /// From the flat layout used by LambdaMatrix: index x*n + component.
    static VecFun from_flat(GroupPtr group, std::size_t n, const Vector& flat) {
        VecFun u(std::move(group), n);
        if (static_cast<std::size_t>(flat.size()) != u.group_->order * n)
            throw ShapeMismatch("VecFun::from_flat: length disagrees with |G|*n");
        for (Element x = 0; x < u.group_->order; ++x)
            u.values_[x] = flat.segment(static_cast<Eigen::Index>(x * n), static_cast<Eigen::Index>(n));
        return u;
    }

    Vector flat() const {
        Vector v(static_cast<Eigen::Index>(group_->order * n_));
        for (Element x = 0; x < group_->order; ++x)
            v.segment(static_cast<Eigen::Index>(x * n_), static_cast<Eigen::Index>(n_)) = values_[x];
        return v;
    }

    const GroupTable& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    std::size_t dim() const { return n_; }
    const Vector& operator[](Element x) const { return values_[x]; }
    Vector& operator[](Element x) { return values_[x]; }

private:
    GroupPtr group_;
    std::size_t n_;
    std::vector<Vector> values_;
};

/// An element of L^2(G, Mn): one complex n x n matrix per group element.
class MatFun {
public:
    /// The zero function.
    MatFun(GroupPtr group, std::size_t n) : group_(std::move(group)), n_(n) {
        if (!group_) throw PreconditionError("MatFun: null group");
        if (n_ == 0) throw PreconditionError("MatFun: dimension must be >= 1");
        const auto d = static_cast<Eigen::Index>(n_);
        values_.assign(group_->order, Matrix::Zero(d, d));
    }

    MatFun(GroupPtr group, std::size_t n, std::vector<Matrix> values)
        : group_(std::move(group)), n_(n), values_(std::move(values)) {
        if (!group_) throw PreconditionError("MatFun: null group");
        if (n_ == 0) throw PreconditionError("MatFun: dimension must be >= 1");
        if (values_.size() != group_->order)
            throw ShapeMismatch("MatFun: need exactly |G| matrices");
        for (const auto& m : values_) {
            if (static_cast<std::size_t>(m.rows()) != n_ || static_cast<std::size_t>(m.cols()) != n_)
                throw ShapeMismatch("MatFun: every value must be n x n");
            if (!m.allFinite()) throw PreconditionError("MatFun: non-finite entry");
        }
    }

    const GroupTable& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    std::size_t dim() const { return n_; }
    std::size_t order() const { return group_->order; }

    const Matrix& operator[](Element g) const { return values_[g]; }
    Matrix& operator[](Element g) { return values_[g]; }
    std::span<const Matrix> values() const { return values_; }

    /// Column j as a vector-valued function g -> Phi(g) e_j.
    VecFun column(std::size_t j) const {
        VecFun u(group_, n_);
        for (Element g = 0; g < order(); ++g) u[g] = values_[g].col(static_cast<Eigen::Index>(j));
        return u;
    }

    bool all_finite() const {
        for (const auto& m : values_)
            if (!m.allFinite()) return false;
        return true;
    }

private:
    GroupPtr group_;
    std::size_t n_;
    std::vector<Matrix> values_;
};

inline void require_compatible(const MatFun& a, const MatFun& b, const char* op) {
    if (!same_group(a.group_ptr(), b.group_ptr()))
        throw ShapeMismatch(std::string(op) + ": operands live on different groups");
    if (a.dim() != b.dim()) throw ShapeMismatch(std::string(op) + ": matrix dimensions differ");
}

// ---------------------------------------------------------------------------
// Constructors

inline MatFun zero_function(GroupPtr group, std::size_t n) { return MatFun(std::move(group), n); }

/// I_n at the identity, zero elsewhere: the convolution unit.
inline MatFun delta_identity(GroupPtr group, std::size_t n) {
    MatFun d(std::move(group), n);
    d[d.group().identity].setIdentity();
    return d;
}

/// A at element g, zero elsewhere.
inline MatFun delta_at(GroupPtr group, Element g, const Matrix& a) {
    MatFun d(std::move(group), static_cast<std::size_t>(a.rows()));
    d[g] = a;
    return d;
}

/// Independent standard complex Gaussian entries; entry (g, i, j) uses counter
/// (g*n + i)*n + j so the sample is fixed by the seed alone.
inline MatFun random_matfun(GroupPtr group, std::size_t n, std::uint64_t seed) {
    MatFun f(std::move(group), n);
    const CounterRng rng(seed);
    for (Element g = 0; g < f.order(); ++g)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                f[g](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    rng.complex_gaussian((g * n + i) * n + j);
    return f;
}

// ---------------------------------------------------------------------------
// Algebra

/// (a*b)(x) = sum_g a(g) b(g^{-1} x), i.e. the sum of a(g) b(h) over gh = x.
inline MatFun convolve(const MatFun& a, const MatFun& b) {
    require_compatible(a, b, "convolve");
    const GroupTable& t = a.group();
    MatFun out(a.group_ptr(), a.dim());
    for (Element g = 0; g < t.order; ++g) {
        if (a[g].isZero(0.0)) continue;
        for (Element h = 0; h < t.order; ++h) out[t.mult[g][h]].noalias() += a[g] * b[h];
    }
    return out;
}

/// a*(g) = conj(a(g^{-1}))^T.
inline MatFun star(const MatFun& a) {
    MatFun out(a.group_ptr(), a.dim());
    for (Element g = 0; g < a.order(); ++g) out[g] = a[a.group().inv[g]].adjoint();
    return out;
}

/// <a, b> = sum_g Tr(a(g) conj(b(g))^T), linear in a.
inline Complex inner(const MatFun& a, const MatFun& b) {
    require_compatible(a, b, "inner");
    Complex s = 0;
    for (Element g = 0; g < a.order(); ++g) s += (a[g].array() * b[g].array().conjugate()).sum();
    return s;
}

inline MatFun add(const MatFun& a, const MatFun& b) {
    require_compatible(a, b, "add");
    MatFun out = a;
    for (Element g = 0; g < a.order(); ++g) out[g] += b[g];
    return out;
}

inline MatFun subtract(const MatFun& a, const MatFun& b) {
    require_compatible(a, b, "subtract");
    MatFun out = a;
    for (Element g = 0; g < a.order(); ++g) out[g] -= b[g];
    return out;
}

inline MatFun scale(Complex c, const MatFun& a) {
    MatFun out = a;
    for (Element g = 0; g < a.order(); ++g) out[g] *= c;
    return out;
}

/// Entrywise complex conjugate (no transpose).
inline MatFun conjugate(const MatFun& a) {
    MatFun out = a;
    for (Element g = 0; g < a.order(); ++g) out[g] = a[g].conjugate();
    return out;
}

inline MatFun operator+(const MatFun& a, const MatFun& b) { return add(a, b); }
inline MatFun operator-(const MatFun& a, const MatFun& b) { return subtract(a, b); }
inline MatFun operator*(Complex c, const MatFun& a) { return scale(c, a); }
inline MatFun operator*(double c, const MatFun& a) { return scale(Complex(c, 0.0), a); }

inline double l2_norm(const MatFun& a) {
    double s = 0;
    for (Element g = 0; g < a.order(); ++g) s += a[g].squaredNorm();
    return std::sqrt(s);
}

/// sum over (i,j) of the L^1 norm of entry [a]_ij.
inline double l1_norm(const MatFun& a) {
    double s = 0;
    for (Element g = 0; g < a.order(); ++g) s += a[g].cwiseAbs().sum();
    return s;
}

/// Largest modulus of any entry at any element.
inline double sup_norm(const MatFun& a) {
    double s = 0;
    for (Element g = 0; g < a.order(); ++g) s = std::max(s, a[g].cwiseAbs().maxCoeff());
    return s;
}

inline Complex trace_at_identity(const MatFun& a) { return a[a.group().identity].trace(); }

/// star(F) * F, positive definite because its lambda operator is lambda(F)^dagger lambda(F).
inline MatFun make_pd(const MatFun& f) { return convolve(star(f), f); }

/// (a + star(a)) / 2.
inline MatFun star_symmetrize(const MatFun& a) { return 0.5 * add(a, star(a)); }

/// Relative distance l2(a-b) / max(l2(a), l2(b), floor).
inline double relative_distance(const MatFun& a, const MatFun& b, double floor = 1e-300) {
    return l2_norm(subtract(a, b)) / std::max({l2_norm(a), l2_norm(b), floor});
}

}  // namespace godement

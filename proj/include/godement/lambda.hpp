#pragma once

// The left convolution operator lambda(Phi) on L^2(G, C^n) as a dense
// (|G| n) x (|G| n) matrix, its spectral calculus, and the two
// positive-definiteness certificates (operator form and pointwise Gram form).
//
// On a finite group lambda(Phi) is bounded and everywhere defined, so the
// self-adjoint extension used for infinite groups coincides with lambda(Phi)
// itself whenever Phi is star-fixed.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "error.hpp"
#include "matfun.hpp"

namespace godement {

inline constexpr double kDefaultPdTol = 1e-9;

/// Block (x, y), of size n x n, sits at rows x*n.., cols y*n...
struct LambdaMatrix {
    GroupPtr group;
    std::size_t n = 1;
    Matrix data;

    std::size_t size() const { return group->order * n; }

    auto block(Element x, Element y) const {
        const auto d = static_cast<Eigen::Index>(n);
        return data.block(static_cast<Eigen::Index>(x) * d, static_cast<Eigen::Index>(y) * d, d, d);
    }
    auto block(Element x, Element y) {
        const auto d = static_cast<Eigen::Index>(n);
        return data.block(static_cast<Eigen::Index>(x) * d, static_cast<Eigen::Index>(y) * d, d, d);
    }
};

/// block(x, y) = a(x y^{-1}); this is lambda(a) u(x) = sum_g a(g) u(g^{-1} x)
/// after substituting y = g^{-1} x.
inline LambdaMatrix build_lambda(const MatFun& a) {
    const GroupTable& t = a.group();
    LambdaMatrix m{a.group_ptr(), a.dim(), Matrix(static_cast<Eigen::Index>(t.order * a.dim()),
                                                  static_cast<Eigen::Index>(t.order * a.dim()))};
    for (Element x = 0; x < t.order; ++x)
        for (Element y = 0; y < t.order; ++y) m.block(x, y) = a[t.mult[x][t.inv[y]]];
    return m;
}

/// lambda(a) applied to u by the defining sum, without forming the matrix.
inline VecFun apply_lambda(const MatFun& a, const VecFun& u) {
    const GroupTable& t = a.group();
    if (!same_group(a.group_ptr(), u.group_ptr()) || a.dim() != u.dim())
        throw ShapeMismatch("apply_lambda: function and vector disagree in shape");
    VecFun out(a.group_ptr(), a.dim());
    for (Element x = 0; x < t.order; ++x)
        for (Element g = 0; g < t.order; ++g) out[x].noalias() += a[g] * u[t.mult[t.inv[g]][x]];
    return out;
}

/// The kernel whose columns are the given |G| n x n block column: entry
/// (x*n + i, j) becomes [b(x)]_ij.
inline MatFun kernel_from_columns(const GroupPtr& group, std::size_t n, const Matrix& cols) {
    MatFun b(group, n);
    const auto d = static_cast<Eigen::Index>(n);
    for (Element x = 0; x < group->order; ++x) b[x] = cols.block(static_cast<Eigen::Index>(x) * d, 0, d, d);
    return b;
}

/// Columns of a as a |G| n x n block: column j is [a]_{*j} in flat layout.
inline Matrix columns_of(const MatFun& a) {
    const auto d = static_cast<Eigen::Index>(a.dim());
    Matrix cols(static_cast<Eigen::Index>(a.order()) * d, d);
    for (Element x = 0; x < a.order(); ++x) cols.block(static_cast<Eigen::Index>(x) * d, 0, d, d) = a[x];
    return cols;
}

// ---------------------------------------------------------------------------
// Spectral calculus

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending
    Matrix eigenvectors;          // unitary; column k pairs with eigenvalues[k]
    double residual = 0;          // ||U diag U^dagger - source||_F / ||source||_F

    double max_eigenvalue() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0; }
    double min_eigenvalue() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }

    /// U f(D) U^dagger.
    Matrix apply(const std::function<double(double)>& f) const {
        Eigen::VectorXd fd = eigenvalues.unaryExpr(f);
        return eigenvectors * fd.asDiagonal() * eigenvectors.adjoint();
    }

    /// Orthogonal projector onto the eigenvectors with eigenvalue <= t.
    Matrix projector(double t) const {
        Eigen::Index k = 0;
        while (k < eigenvalues.size() && eigenvalues(k) <= t) ++k;
        const auto v = eigenvectors.leftCols(k);
        return v * v.adjoint();
    }

    Matrix reconstruct() const { return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint(); }
};

/// Decomposes the Hermitian part of m; callers certify Hermitian-ness separately.
inline SpectralDecomposition spectral_decompose(const Matrix& m) {
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver failed");
    SpectralDecomposition sd{es.eigenvalues(), es.eigenvectors(), 0.0};
    const double scale = m.norm();
    sd.residual = scale > 0 ? (sd.reconstruct() - m).norm() / scale : 0.0;
    return sd;
}

inline SpectralDecomposition spectral_decompose(const LambdaMatrix& m) { return spectral_decompose(m.data); }

inline double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// Positive-definiteness certificates

enum class Verdict { positive_definite, not_positive_definite, not_hermitian };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::positive_definite: return "positive_definite";
        case Verdict::not_positive_definite: return "not_positive_definite";
        case Verdict::not_hermitian: return "not_hermitian";
    }
    return "unknown";
}

struct PDCertificate {
    Verdict verdict = Verdict::not_positive_definite;
    double min_eigenvalue = 0;
    double hermitian_residual = 0;  // ||L - L^dagger||_F
    double operator_norm = 0;       // the moderation bound ||lambda(Phi)||

    bool positive() const { return verdict == Verdict::positive_definite; }
};

/// PSD test for a square matrix. Thresholds are tol * max(||m||, reference_scale);
/// reference_scale lets a caller measure a difference b - a against the size
/// of its operands.
inline PDCertificate certify_matrix(const Matrix& m, double tol, double reference_scale = 0.0) {
    if (tol < 0) throw PreconditionError("certify: tolerance must be >= 0");
    PDCertificate cert;
    cert.hermitian_residual = (m - m.adjoint()).norm();
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver failed");
    const auto& ev = es.eigenvalues();
    cert.min_eigenvalue = ev.size() ? ev(0) : 0.0;
    const double herm_norm = ev.size() ? std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) : 0.0;
    // For a Hermitian matrix the spectral radius is the operator norm; only a
    // visibly non-Hermitian input pays for an SVD.
    cert.operator_norm = cert.hermitian_residual <= 1e-12 * std::max(herm_norm, 1e-300)
                             ? herm_norm
                             : operator_norm(m);
    const double floor = tol * std::max(cert.operator_norm, reference_scale);
    if (cert.hermitian_residual > floor)
        cert.verdict = Verdict::not_hermitian;
    else if (cert.min_eigenvalue < -floor)
        cert.verdict = Verdict::not_positive_definite;
    else
        cert.verdict = Verdict::positive_definite;
    return cert;
}

/// Operator positive definiteness: <lambda(a) u, u> >= 0 on all of L^2(G, C^n).
inline PDCertificate is_positive_definite(const MatFun& a, double tol = kDefaultPdTol) {
    return certify_matrix(build_lambda(a).data, tol);
}

/// Pointwise Gram form: the block matrix [a(x_i^{-1} x_j)] over all of G is PSD.
/// With coefficient vectors C_i the defining form sum C_i^T a(x_i^{-1} x_j) conj(C_j)
/// equals v^dagger M v for v = conj(C), so this is the ordinary Hermitian PSD test.
inline bool gram_pd_check(const MatFun& a, double tol = kDefaultPdTol) {
    const GroupTable& t = a.group();
    const auto d = static_cast<Eigen::Index>(a.dim());
    Matrix m(static_cast<Eigen::Index>(t.order) * d, static_cast<Eigen::Index>(t.order) * d);
    for (Element i = 0; i < t.order; ++i)
        for (Element j = 0; j < t.order; ++j)
            m.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d) =
                a[t.mult[t.inv[i]][j]];
    return certify_matrix(m, tol).positive();
}

/// max_g ||a(g) - a(g^{-1})^dagger||_F, i.e. the sup distance from a to star(a).
inline double hermitian_symmetry_residual(const MatFun& a) {
    double r = 0;
    for (Element g = 0; g < a.order(); ++g)
        r = std::max(r, (a[g] - a[a.group().inv[g]].adjoint()).norm());
    return r;
}

// ---------------------------------------------------------------------------
// Right translations

/// (rho(x) u)(g) = u(g x) as a permutation-block matrix.
inline LambdaMatrix rho_matrix(const GroupPtr& group, std::size_t n, Element x) {
    const auto size = static_cast<Eigen::Index>(group->order * n);
    LambdaMatrix r{group, n, Matrix::Zero(size, size)};
    for (Element g = 0; g < group->order; ++g) r.block(g, group->mult[g][x]).setIdentity();
    return r;
}

namespace detail {

/// rho(x) as an Eigen permutation: row g*n+i of rho(x) M is row (g x)*n+i of M.
inline Eigen::PermutationMatrix<Eigen::Dynamic> rho_permutation(const GroupTable& t, std::size_t n, Element x) {
    Eigen::PermutationMatrix<Eigen::Dynamic> p(static_cast<Eigen::Index>(t.order * n));
    // Eigen's P*M moves row k of M to row indices()[k].
    for (Element g = 0; g < t.order; ++g)
        for (std::size_t i = 0; i < n; ++i)
            p.indices()[static_cast<Eigen::Index>(t.mult[g][x] * n + i)] = static_cast<int>(g * n + i);
    return p;
}

/// ||rho(x) T rho(x^{-1}) - T||_F for a dense operator T.
inline double rho_commutator(const GroupTable& t, std::size_t n, const Matrix& op, Element x) {
    const auto p = rho_permutation(t, n, x);
    const Matrix conj = p * op * p.transpose();
    return (conj - op).norm();
}

}  // namespace detail

inline double rho_equivariance_residual(const MatFun& a, Element x) {
    return detail::rho_commutator(a.group(), a.dim(), build_lambda(a).data, x);
}

/// Recovers b with lambda(b) = T from a right-equivariant T: column j of b is
/// T applied to delta_e (x) e_j.
inline MatFun extract_kernel(const LambdaMatrix& op, double equivariance_tol = 1e-8) {
    const GroupTable& t = *op.group;
    const double scale = std::max(op.data.norm(), 1e-300);
    for (Element x = 0; x < t.order; ++x) {
        const double r = detail::rho_commutator(t, op.n, op.data, x);
        if (r > equivariance_tol * scale)
            throw PreconditionError("extract_kernel: operator does not commute with rho(" +
                                    std::to_string(x) + "), residual " + std::to_string(r / scale));
    }
    const auto d = static_cast<Eigen::Index>(op.n);
    return kernel_from_columns(op.group, op.n, op.data.middleCols(static_cast<Eigen::Index>(t.identity) * d, d));
}

// ---------------------------------------------------------------------------
// Spectral truncation and ordering

namespace detail {

inline void require_pd(const MatFun& a, const char* op, double tol = kDefaultPdTol) {
    const auto cert = is_positive_definite(a, tol);
    if (!cert.positive())
        throw PreconditionError(std::string(op) + ": input is " + to_string(cert.verdict) +
                                " (min eigenvalue " + std::to_string(cert.min_eigenvalue) + ")");
}

}  // namespace detail

/// Phi_t with columns [Phi_t]_{*j} = P_t [Phi]_{*j} for a precomputed
/// decomposition of lambda(Phi).
inline MatFun spectral_truncate(const MatFun& a, const SpectralDecomposition& sd, double t) {
    return kernel_from_columns(a.group_ptr(), a.dim(), sd.projector(t) * columns_of(a));
}

/// Phi_t for a PD function; lambda(Phi_t) = P_t lambda(Phi), P_t the spectral
/// projector onto eigenvalues <= t.
inline MatFun spectral_truncate(const MatFun& a, double t) {
    detail::require_pd(a, "spectral_truncate");
    return spectral_truncate(a, spectral_decompose(build_lambda(a)), t);
}

/// a precedes b when b - a is positive definite. The PSD floor is measured
/// against the operands as well as the difference, since b - a carries the
/// roundoff of a and b.
inline bool pd_order_leq(const MatFun& a, const MatFun& b, double tol = kDefaultPdTol) {
    require_compatible(a, b, "pd_order_leq");
    const Matrix la = build_lambda(a).data;
    const Matrix lb = build_lambda(b).data;
    const double scale = std::max(la.norm(), lb.norm()) / std::sqrt(static_cast<double>(std::max<Eigen::Index>(la.rows(), 1)));
    return certify_matrix(lb - la, tol, scale).positive();
}

}  // namespace godement

#pragma once

// Square roots Phi = Psi * Psi of positive definite functions, by spectral
// calculus on lambda(Phi) and by a monotone polynomial iteration carried out
// entirely in the convolution algebra. Also the truncation chains Phi_t and
// polynomial calculus p(Phi).

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "error.hpp"
#include "lambda.hpp"
#include "matfun.hpp"

namespace godement {

enum class SqrtMethod { spectral, iterative };

inline const char* to_string(SqrtMethod m) { return m == SqrtMethod::spectral ? "spectral" : "iterative"; }

struct SqrtResult {
    MatFun psi;
    SqrtMethod method = SqrtMethod::spectral;
    std::size_t iterations = 0;           // iterative only
    double residual = 0;                  // ||psi*psi - phi||_2 / ||phi||_2
    std::vector<double> monotone_trace;   // ||Psi_k||_2 per iterate, iterative only
};

namespace detail {

inline double relative_sqrt_residual(const MatFun& psi, const MatFun& phi) {
    const double scale = l2_norm(phi);
    const double r = l2_norm(subtract(convolve(psi, psi), phi));
    return scale > 0 ? r / scale : r;
}

}  // namespace detail

/// Psi = kernel of lambda(Phi)^{1/2}. Eigenvalues in [-tol ||lambda||, 0) are
/// treated as roundoff and clamped to zero; anything more negative is rejected.
inline SqrtResult sqrt_spectral(const MatFun& phi, double tol = 1e-8) {
    const LambdaMatrix lam = build_lambda(phi);
    const auto cert = certify_matrix(lam.data, kDefaultPdTol);
    if (!cert.positive())
        throw PreconditionError(std::string("sqrt_spectral: input is ") + to_string(cert.verdict));
    const SpectralDecomposition sd = spectral_decompose(lam);
    const double floor = -tol * cert.operator_norm;
    if (sd.min_eigenvalue() < floor)
        throw PreconditionError("sqrt_spectral: eigenvalue " + std::to_string(sd.min_eigenvalue()) +
                                " below clamping floor");
    const LambdaMatrix root{lam.group, lam.n, sd.apply([](double v) { return v > 0 ? std::sqrt(v) : 0.0; })};

    SqrtResult res{extract_kernel(root), SqrtMethod::spectral, 0, 0.0, {}};
    res.residual = detail::relative_sqrt_residual(res.psi, phi);
    if (res.residual > tol)
        throw ConvergenceError("sqrt_spectral: residual " + std::to_string(res.residual) + " exceeds tolerance");
    return res;
}

struct IterativeOptions {
    std::size_t max_iter = 500;
    double tol = 1e-8;
    /// Called with (k, X_k) for every iterate, X_k on the normalized scale
    /// Phi / ||lambda(Phi)||; k starts at 1.
    std::function<void(std::size_t, const MatFun&)> on_iterate;
};

/// Monotone iteration X_0 = 0, X_{k+1} = X_k + (Phi~ - X_k*X_k)/2 with
/// Phi~ = Phi / s, s = ||lambda(Phi)||, and Psi = sqrt(s) X_inf.
///
/// On each eigenvalue t of lambda(Phi~) the iterate is p_k(t) with
/// p_{k+1} = p_k + (t - p_k^2)/2, an increasing sequence of nonnegative
/// polynomials with p_k(0) = 0 and p_k(t) <= sqrt(t), converging to sqrt(t)
/// on [0, 1]. Convergence is linear with rate 1 - sqrt(t), so small
/// eigenvalues dominate the iteration count.
///
/// Stops when ||X_k*X_k - Phi~||_2 <= tol ||Phi~||_2.
inline SqrtResult sqrt_iterative(const MatFun& phi, const IterativeOptions& opt) {
    const auto cert = is_positive_definite(phi);
    if (!cert.positive())
        throw PreconditionError(std::string("sqrt_iterative: input is ") + to_string(cert.verdict));

    SqrtResult res{zero_function(phi.group_ptr(), phi.dim()), SqrtMethod::iterative, 0, 0.0, {}};
    const double s = cert.operator_norm;
    if (s == 0) return res;

    const MatFun target = scale(1.0 / s, phi);
    const double target_norm = l2_norm(target);
    const double root_s = std::sqrt(s);
    MatFun x = zero_function(phi.group_ptr(), phi.dim());
    bool converged = false;
    for (std::size_t k = 0; k <= opt.max_iter; ++k) {
        const MatFun r = subtract(target, convolve(x, x));
        if (l2_norm(r) <= opt.tol * target_norm) {
            converged = true;
            break;
        }
        if (k == opt.max_iter) break;
        x = add(x, scale(0.5, r));
        res.iterations = k + 1;
        res.monotone_trace.push_back(root_s * l2_norm(x));
        if (opt.on_iterate) opt.on_iterate(k + 1, x);
    }
    if (!converged)
        throw ConvergenceError("sqrt_iterative: no convergence within " + std::to_string(opt.max_iter) +
                               " iterations");
    res.psi = scale(root_s, x);
    res.residual = detail::relative_sqrt_residual(res.psi, phi);
    return res;
}

inline SqrtResult sqrt_iterative(const MatFun& phi, std::size_t max_iter = 500, double tol = 1e-8) {
    IterativeOptions opt;
    opt.max_iter = max_iter;
    opt.tol = tol;
    return sqrt_iterative(phi, opt);
}

/// [Phi_{t_1}, Phi_{t_2}, ...] from one decomposition of lambda(Phi).
inline std::vector<MatFun> truncation_sequence(const MatFun& phi, const std::vector<double>& thresholds) {
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (thresholds[i] < thresholds[i - 1])
            throw PreconditionError("truncation_sequence: thresholds must be ascending");
    detail::require_pd(phi, "truncation_sequence");
    const SpectralDecomposition sd = spectral_decompose(build_lambda(phi));
    std::vector<MatFun> out;
    out.reserve(thresholds.size());
    for (double t : thresholds) out.push_back(spectral_truncate(phi, sd, t));
    return out;
}

/// Real polynomial with zero constant term, coefficients[j] multiplying t^j.
class PolySpec {
public:
    explicit PolySpec(std::vector<double> coefficients) : c_(std::move(coefficients)) {
        if (c_.empty()) c_.push_back(0.0);
        if (c_[0] != 0.0) throw PreconditionError("PolySpec: constant term must be zero");
    }

    const std::vector<double>& coefficients() const { return c_; }
    std::size_t degree() const { return c_.size() - 1; }

    /// t^2 | p, the admissibility condition for continuous approximants.
    bool divisible_by_t_squared() const { return c_.size() < 2 || c_[1] == 0.0; }

    double operator()(double t) const {
        double v = 0;
        for (std::size_t j = c_.size(); j-- > 0;) v = v * t + c_[j];
        return v;
    }

private:
    std::vector<double> c_;
};

/// sum_j c_j Phi^{*j} by Horner's rule in the convolution algebra.
inline MatFun poly_apply(const MatFun& phi, const PolySpec& p) {
    const auto& c = p.coefficients();
    const MatFun unit = delta_identity(phi.group_ptr(), phi.dim());
    if (c.size() == 1) return zero_function(phi.group_ptr(), phi.dim());
    MatFun r = scale(c.back(), unit);
    for (std::size_t j = c.size() - 2; j >= 1; --j) r = add(convolve(r, phi), scale(c[j], unit));
    return convolve(r, phi);
}

}  // namespace godement

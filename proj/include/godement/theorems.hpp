#pragma once

// Executable checks of the square-root, nonnegativity and zero-inner-product
// theorems, the inner-product/trace identity, and the tensor-product
// nonnegativity of matrix coefficients. Each check returns a TheoremReport
// instead of throwing: failures are report content.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lambda.hpp"
#include "matfun.hpp"
#include "rep.hpp"
#include "serialize.hpp"
#include "sqrt.hpp"

namespace godement {

enum class Theorem { A, B, C, inner_trace, tensor_nonneg };

inline const char* to_string(Theorem t) {
    switch (t) {
        case Theorem::A: return "A";
        case Theorem::B: return "B";
        case Theorem::C: return "C";
        case Theorem::inner_trace: return "inner_trace";
        case Theorem::tensor_nonneg: return "tensor_nonneg";
    }
    return "unknown";
}

struct TheoremReport {
    Theorem theorem = Theorem::A;
    std::size_t trials = 0;
    std::string group;
    std::size_t n = 0;
    double worst_residual = 0;
    std::optional<Json> counterexample;  // first failing input, replayable
    bool passed = true;
    std::size_t indeterminate = 0;       // zero/nonzero band hits (Theorem C)
    // Named side quantities. Keys starting with "min_" aggregate by min, the
    // rest by max.
    std::map<std::string, double> metrics;

    void record(const std::string& key, double v) {
        auto [it, fresh] = metrics.emplace(key, v);
        if (!fresh) it->second = key.rfind("min_", 0) == 0 ? std::min(it->second, v) : std::max(it->second, v);
    }

    void fail(Json witness) {
        passed = false;
        if (!counterexample) counterexample = std::move(witness);
    }
};

/// Folds `other` into `into`; both must describe the same theorem.
inline void merge_into(TheoremReport& into, const TheoremReport& other) {
    into.trials += other.trials;
    into.worst_residual = std::max(into.worst_residual, other.worst_residual);
    into.indeterminate += other.indeterminate;
    if (!other.passed) {
        into.passed = false;
        if (!into.counterexample && other.counterexample) into.counterexample = other.counterexample;
    }
    for (const auto& [k, v] : other.metrics) into.record(k, v);
}

inline Json to_json(const TheoremReport& r) {
    Json j{{"theorem", to_string(r.theorem)},
           {"trials", r.trials},
           {"group", r.group},
           {"n", r.n},
           {"worst_residual", r.worst_residual},
           {"passed", r.passed},
           {"indeterminate", r.indeterminate},
           {"metrics", r.metrics}};
    j["counterexample"] = r.counterexample ? *r.counterexample : Json(nullptr);
    return j;
}

namespace detail {

inline TheoremReport start_report(Theorem th, const MatFun& phi) {
    TheoremReport r;
    r.theorem = th;
    r.trials = 1;
    r.group = phi.group().id;
    r.n = phi.dim();
    return r;
}

inline double product_scale(const MatFun& a, const MatFun& b) { return l2_norm(a) * l2_norm(b); }

inline Json witness(std::string reason, std::initializer_list<std::pair<const char*, const MatFun*>> inputs) {
    Json j{{"reason", std::move(reason)}};
    for (const auto& [name, f] : inputs) j[name] = to_json(*f);
    return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Square roots

struct TheoremAOptions {
    double tol = 1e-8;                // spectral residual bound
    double star_tol = 1e-10;          // ||star(psi) - psi|| / ||psi||
    bool iterative = true;            // also run the monotone iteration
    double iterative_tol = 1e-12;     // stopping rule of the iteration
    std::size_t max_iter = 200000;
    double agreement_tol = 1e-6;      // ||psi_spec - psi_iter|| / ||psi_spec||
    double trace_slack = 1e-8;        // ||Psi_k||^2 <= Tr Phi(e) + slack
    bool check_iterates = false;      // certify X_k PD and X_k <= X_{k+1} (slow)
};

/// Phi = Psi * Psi with Psi positive definite and star-fixed, by both
/// constructions, and agreement of the two.
inline TheoremReport check_theorem_A(const MatFun& phi, const TheoremAOptions& opt = {}) {
    TheoremReport r = detail::start_report(Theorem::A, phi);
    auto fail = [&](const std::string& why) { r.fail(detail::witness(why, {{"phi", &phi}})); };

    SqrtResult spec{phi, SqrtMethod::spectral, 0, 0.0, {}};
    try {
        spec = sqrt_spectral(phi, opt.tol);
    } catch (const Error& e) {
        fail(std::string("spectral square root failed: ") + e.what());
        r.worst_residual = std::numeric_limits<double>::infinity();
        return r;
    }
    r.worst_residual = spec.residual;
    r.record("spectral_residual", spec.residual);

    const double psi_norm = l2_norm(spec.psi);
    const double star_gap = psi_norm > 0 ? l2_norm(subtract(star(spec.psi), spec.psi)) / psi_norm : 0.0;
    r.record("star_residual", star_gap);
    if (star_gap > opt.star_tol) fail("square root is not star-fixed");
    if (!is_positive_definite(spec.psi).positive()) fail("square root is not positive definite");

    if (!opt.iterative) return r;

    IterativeOptions it;
    it.max_iter = opt.max_iter;
    it.tol = opt.iterative_tol;
    const MatFun* target = nullptr;
    MatFun normalized = phi;
    std::optional<MatFun> previous;
    bool iterate_ok = true;
    if (opt.check_iterates) {
        const double s = is_positive_definite(phi).operator_norm;
        if (s > 0) normalized = scale(1.0 / s, phi);
        target = &normalized;
        it.on_iterate = [&](std::size_t, const MatFun& x) {
            if (!iterate_ok) return;
            iterate_ok = is_positive_definite(x).positive() && pd_order_leq(convolve(x, x), *target) &&
                         (!previous || pd_order_leq(*previous, x));
            previous = x;
        };
    }
    SqrtResult iter{phi, SqrtMethod::iterative, 0, 0.0, {}};
    try {
        iter = sqrt_iterative(phi, it);
    } catch (const Error& e) {
        fail(std::string("iterative square root failed: ") + e.what());
        return r;
    }
    if (!iterate_ok) fail("an iterate broke positivity or the monotone ordering");
    r.record("iterations", static_cast<double>(iter.iterations));
    r.record("iterative_residual", iter.residual);
    if (iter.residual > opt.tol) fail("iterative residual exceeds tolerance");

    const double agreement = psi_norm > 0 ? l2_norm(subtract(spec.psi, iter.psi)) / psi_norm
                                          : l2_norm(iter.psi);
    r.record("agreement", agreement);
    if (agreement > opt.agreement_tol) fail("iterative and spectral square roots disagree");

    const double trace_bound = trace_at_identity(phi).real();
    double worst_drop = 0, worst_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < iter.monotone_trace.size(); ++k) {
        if (k > 0) worst_drop = std::max(worst_drop, iter.monotone_trace[k - 1] - iter.monotone_trace[k]);
        const double sq = iter.monotone_trace[k] * iter.monotone_trace[k];
        worst_excess = std::max(worst_excess, sq - trace_bound);
    }
    r.record("trace_drop", worst_drop);
    r.record("trace_excess", worst_excess);
    if (worst_drop > 1e-12 * std::max(psi_norm, 1.0)) fail("||Psi_k|| decreased along the iteration");
    if (worst_excess > opt.trace_slack) fail("||Psi_k||^2 exceeds Tr Phi(e)");
    return r;
}

// ---------------------------------------------------------------------------
// Inner products

namespace detail {

inline bool both_pd(TheoremReport& r, const MatFun& phi, const MatFun& psi) {
    const bool a = is_positive_definite(phi).positive();
    const bool b = is_positive_definite(psi).positive();
    if (!a || !b) {
        r.fail(witness("input is not positive definite", {{"phi", &phi}, {"psi", &psi}}));
        r.worst_residual = std::numeric_limits<double>::infinity();
    }
    return a && b;
}

}  // namespace detail

/// <Phi, Psi> is real and nonnegative for PD Phi, Psi.
inline TheoremReport check_theorem_B(const MatFun& phi, const MatFun& psi, double tol = 1e-10) {
    TheoremReport r = detail::start_report(Theorem::B, phi);
    if (!detail::both_pd(r, phi, psi)) return r;
    const Complex v = inner(phi, psi);
    const double s = detail::product_scale(phi, psi);
    const double denom = s > 0 ? s : 1.0;
    r.worst_residual = std::max(std::max(0.0, -v.real()), std::abs(v.imag())) / denom;
    r.record("min_real", v.real() / denom);
    r.record("imag", std::abs(v.imag()) / denom);
    if (v.real() < -tol * s || std::abs(v.imag()) > tol * s)
        r.fail(detail::witness("inner product is negative or non-real", {{"phi", &phi}, {"psi", &psi}}));
    return r;
}

/// |<Phi, Psi>| ~ 0 iff ||Phi * Psi|| ~ 0, both relative to ||Phi|| ||Psi||.
/// Values in (tol, 100 tol) are counted as indeterminate, not failed.
inline TheoremReport check_theorem_C(const MatFun& phi, const MatFun& psi, double tol = 1e-10) {
    TheoremReport r = detail::start_report(Theorem::C, phi);
    if (!detail::both_pd(r, phi, psi)) return r;
    const double s = detail::product_scale(phi, psi);
    const double denom = s > 0 ? s : 1.0;
    const double in = std::abs(inner(phi, psi)) / denom;
    const double conv = l2_norm(convolve(phi, psi)) / denom;
    r.record("inner_rel", in);
    r.record("convolution_rel", conv);

    enum class Side { zero, nonzero, band };
    auto classify = [tol](double v) { return v <= tol ? Side::zero : (v >= 100 * tol ? Side::nonzero : Side::band); };
    const Side a = classify(in), b = classify(conv);
    if (a == Side::band || b == Side::band) ++r.indeterminate;
    if ((a == Side::zero && b == Side::nonzero) || (a == Side::nonzero && b == Side::zero)) {
        r.worst_residual = std::max(in, conv);
        r.fail(detail::witness("inner product and convolution disagree about vanishing", {{"phi", &phi}, {"psi", &psi}}));
    } else if (a == Side::zero && b == Side::zero) {
        r.worst_residual = std::max(in, conv);
    }
    return r;
}

/// Splits theta = Phi + Psi along the spectrum of lambda(theta) at split_t:
/// Phi = theta_t carries eigenvalues <= split_t, Psi = theta - theta_t the rest.
/// Then lambda(Phi) lambda(Psi) = 0, so Phi * Psi = 0 and <Phi, Psi> = 0.
inline std::pair<MatFun, MatFun> build_orthogonal_pd_pair(const MatFun& theta, double split_t) {
    detail::require_pd(theta, "build_orthogonal_pd_pair");
    const SpectralDecomposition sd = spectral_decompose(build_lambda(theta));
    if (!(sd.min_eigenvalue() <= split_t && sd.max_eigenvalue() > split_t))
        throw PreconditionError("build_orthogonal_pd_pair: spectrum lies on one side of the split");
    MatFun low = spectral_truncate(theta, sd, split_t);
    MatFun high = subtract(theta, low);
    return {std::move(low), std::move(high)};
}

/// Midpoint of the widest eigenvalue gap in the middle half of the spectrum,
/// a split that never cuts through a degenerate eigenspace.
inline double central_spectral_gap(const SpectralDecomposition& sd) {
    const auto n = sd.eigenvalues.size();
    if (n < 2) throw PreconditionError("central_spectral_gap: need at least two eigenvalues");
    Eigen::Index lo = std::max<Eigen::Index>(1, n / 4), hi = std::max<Eigen::Index>(lo + 1, (3 * n) / 4 + 1);
    hi = std::min(hi, n);
    Eigen::Index best = lo;
    for (Eigen::Index k = lo; k < hi; ++k)
        if (sd.eigenvalues(k) - sd.eigenvalues(k - 1) > sd.eigenvalues(best) - sd.eigenvalues(best - 1)) best = k;
    return 0.5 * (sd.eigenvalues(best) + sd.eigenvalues(best - 1));
}

/// <Phi, Psi> = Tr((Phi * Psi)(e)) for PD Phi, Psi.
inline TheoremReport check_lemma_inner_trace(const MatFun& phi, const MatFun& psi, double tol = 1e-10) {
    TheoremReport r = detail::start_report(Theorem::inner_trace, phi);
    if (!detail::both_pd(r, phi, psi)) return r;
    const double s = detail::product_scale(phi, psi);
    const double gap = std::abs(inner(phi, psi) - trace_at_identity(convolve(phi, psi)));
    r.worst_residual = s > 0 ? gap / s : gap;
    if (gap > tol * s)
        r.fail(detail::witness("inner product differs from the trace at the identity", {{"phi", &phi}, {"psi", &psi}}));
    return r;
}

// ---------------------------------------------------------------------------
// Tensor products of representations

struct TensorNonnegValues {
    Complex direct;         // sum_g sum_ij <pi1(g) u1_i, u1_j> <pi2(g) u2_i, u2_j>
    Complex via_inner;      // <Phi1, conj(Phi2)> for the matrix-coefficient functions
    Complex via_tensor;     // sum_g <(pi1 x pi2)(g) u, u>, u = sum_i u1_i x u2_i
    double scale = 0;       // ||Phi1|| ||Phi2||
};

inline TensorNonnegValues tensor_nonneg_values(const UnitaryRep& p1, const std::vector<Vector>& u1s,
                                               const UnitaryRep& p2, const std::vector<Vector>& u2s) {
    if (!same_group(p1.group, p2.group)) throw ShapeMismatch("check_tensor_nonneg: representations of different groups");
    if (u1s.size() != u2s.size() || u1s.empty()) throw ShapeMismatch("check_tensor_nonneg: vector counts differ");
    const GroupTable& t = *p1.group;
    TensorNonnegValues v{};
    for (Element g = 0; g < t.order; ++g)
        for (std::size_t i = 0; i < u1s.size(); ++i) {
            const Vector a = p1(g) * u1s[i];
            const Vector b = p2(g) * u2s[i];
            for (std::size_t j = 0; j < u1s.size(); ++j)
                v.direct += hermitian_inner(a, u1s[j]) * hermitian_inner(b, u2s[j]);
        }

    // [Phi]_ji(g) = <pi(g) u_i, u_j>, so the direct sum is sum_g Tr(Phi1(g) Phi2(g)^T).
    const MatFun phi1 = matrix_coeff_fun(p1, u1s);
    const MatFun phi2 = matrix_coeff_fun(p2, u2s);
    v.via_inner = inner(phi1, conjugate(phi2));
    v.scale = l2_norm(phi1) * l2_norm(phi2);

    const UnitaryRep pt = tensor_product(p1, p2);
    Vector u = Vector::Zero(static_cast<Eigen::Index>(pt.dim));
    for (std::size_t i = 0; i < u1s.size(); ++i) u += kronecker(u1s[i], u2s[i]);
    for (Element g = 0; g < t.order; ++g) v.via_tensor += hermitian_inner(pt(g) * u, u);
    return v;
}

/// Nonnegativity of sum_g <pi(g) u, u> for pi = pi1 (x) pi2 and u a finite sum
/// of elementary tensors, computed directly and through the inner product of
/// the two matrix-coefficient functions.
inline TheoremReport check_tensor_nonneg(const UnitaryRep& p1, const std::vector<Vector>& u1s,
                                         const UnitaryRep& p2, const std::vector<Vector>& u2s,
                                         double tol = 1e-10) {
    const TensorNonnegValues v = tensor_nonneg_values(p1, u1s, p2, u2s);
    TheoremReport r;
    r.theorem = Theorem::tensor_nonneg;
    r.trials = 1;
    r.group = p1.group->id;
    r.n = u1s.size();
    const double s = v.scale > 0 ? v.scale : 1.0;
    const double route_gap = std::max(std::abs(v.direct - v.via_inner), std::abs(v.direct - v.via_tensor)) / s;
    r.worst_residual = std::max({route_gap, std::max(0.0, -v.direct.real()) / s, std::abs(v.direct.imag()) / s});
    r.record("min_direct", v.direct.real() / s);
    r.record("route_gap", route_gap);
    if (v.direct.real() < -tol * v.scale || std::abs(v.direct.imag()) > tol * v.scale || route_gap > tol) {
        Json w{{"reason", "tensor sum negative or routes disagree"}, {"pi1", to_json(p1)}, {"pi2", to_json(p2)}};
        Json vs1 = Json::array(), vs2 = Json::array();
        for (const auto& x : u1s) vs1.push_back(matrix_to_json(x));
        for (const auto& x : u2s) vs2.push_back(matrix_to_json(x));
        w["u1"] = std::move(vs1);
        w["u2"] = std::move(vs2);
        r.fail(std::move(w));
    }
    return r;
}

}  // namespace godement

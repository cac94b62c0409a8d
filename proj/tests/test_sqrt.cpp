#include <gtest/gtest.h>

#include <godement/godement.hpp>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace godement;

namespace {

const GroupPtr z2 = make_group("cyclic:2");

/// Coefficients of t - t (1 - t)^k from the binomial expansion.
std::vector<double> q_family(int k) {
    std::vector<double> c(static_cast<std::size_t>(k) + 2, 0.0);
    double binom = 1;
    for (int j = 1; j <= k; ++j) {
        binom = binom * (k - j + 1) / j;
        c[static_cast<std::size_t>(j) + 1] = -binom * ((j % 2) ? -1.0 : 1.0);
    }
    return c;
}

}  // namespace

TEST(SqrtSpectral, Z2Example) {
    const oracle::Circulant2 c{2, 1};
    const auto r = sqrt_spectral(oracle::scalar_z2(z2, 2, 1));
    EXPECT_NEAR(r.psi[0](0, 0).real(), c.sqrt_kernel().first, 1e-12);
    EXPECT_NEAR(r.psi[1](0, 0).real(), c.sqrt_kernel().second, 1e-12);
    EXPECT_LT(r.residual, 1e-14);
    EXPECT_EQ(r.method, SqrtMethod::spectral);
}

TEST(SqrtSpectral, ScaledUnit) {
    const auto g = make_group("dihedral:4");
    for (double c : {0.25, 1.0, 9.0, 1e6}) {
        const auto r = sqrt_spectral(scale(c, delta_identity(g, 2)));
        EXPECT_LT(l2_norm(r.psi - scale(std::sqrt(c), delta_identity(g, 2))), 1e-12 * std::sqrt(c)) << c;
    }
}

TEST(SqrtSpectral, RootIsStarFixedPdAndSquaresBack) {
    for (const auto& spec : corpus::sample_groups()) {
        const auto g = make_group(spec);
        for (std::size_t n = 1; n <= 3; ++n) {
            const MatFun phi = corpus::random_pd(g, n, derive_seed(42, {n}));
            const auto r = sqrt_spectral(phi);
            EXPECT_LT(l2_norm(subtract(convolve(r.psi, r.psi), phi)), 1e-12 * l2_norm(phi)) << spec;
            EXPECT_LT(l2_norm(r.psi - star(r.psi)), 1e-12 * l2_norm(r.psi)) << spec;
            EXPECT_TRUE(is_positive_definite(r.psi).positive()) << spec;
        }
    }
}

TEST(SqrtSpectral, Zero) {
    const auto r = sqrt_spectral(zero_function(make_group("klein"), 2));
    EXPECT_EQ(l2_norm(r.psi), 0.0);
}

TEST(SqrtSpectral, RejectsIndefinite) {
    EXPECT_THROW(sqrt_spectral(oracle::scalar_z2(z2, 1, 2)), PreconditionError);
    EXPECT_THROW(sqrt_spectral(random_matfun(z2, 2, 1)), PreconditionError);
}

TEST(SqrtIterative, Z2ExampleConverges) {
    const oracle::Circulant2 c{2, 1};
    const auto r = sqrt_iterative(oracle::scalar_z2(z2, 2, 1), 60, 1e-12);
    EXPECT_LE(r.iterations, 60u);
    EXPECT_NEAR(r.psi[0](0, 0).real(), c.sqrt_kernel().first, 1e-8);
    EXPECT_NEAR(r.psi[1](0, 0).real(), c.sqrt_kernel().second, 1e-8);
    EXPECT_EQ(r.monotone_trace.size(), r.iterations);
}

TEST(SqrtIterative, TraceIsNondecreasingAndIteratesAreOrdered) {
    const auto g = make_group("symmetric:3");
    const MatFun phi = corpus::random_pd(g, 2, 3);
    const auto spec = sqrt_spectral(phi);
    const double s = is_positive_definite(phi).operator_norm;
    const MatFun root_scaled = scale(1.0 / std::sqrt(s), spec.psi);

    IterativeOptions opt;
    opt.max_iter = 200000;
    opt.tol = 1e-12;
    MatFun prev = zero_function(g, 2);
    std::size_t checked = 0;
    opt.on_iterate = [&](std::size_t k, const MatFun& x) {
        if (k > 200 && k % 50 != 0) return;
        EXPECT_TRUE(pd_order_leq(prev, x)) << k;
        EXPECT_TRUE(pd_order_leq(x, root_scaled)) << k;
        EXPECT_TRUE(is_positive_definite(x).positive()) << k;
        prev = x;
        ++checked;
    };
    const auto r = sqrt_iterative(phi, opt);
    EXPECT_GT(checked, 10u);
    for (std::size_t k = 1; k < r.monotone_trace.size(); ++k)
        EXPECT_GE(r.monotone_trace[k], r.monotone_trace[k - 1] * (1 - 1e-14));
    EXPECT_LT(l2_norm(r.psi - spec.psi), 1e-8 * l2_norm(spec.psi));
    // ||Psi_k||^2 is bounded by ||Psi||^2 = Tr Phi(e)
    const double tr = trace_at_identity(phi).real();
    EXPECT_LE(r.monotone_trace.back() * r.monotone_trace.back(), tr * (1 + 1e-10));
}

TEST(SqrtIterative, ZeroNeedsNoIterations) {
    const auto r = sqrt_iterative(zero_function(z2, 3));
    EXPECT_EQ(r.iterations, 0u);
    EXPECT_EQ(l2_norm(r.psi), 0.0);
}

TEST(SqrtIterative, Errors) {
    EXPECT_THROW(sqrt_iterative(oracle::scalar_z2(z2, 1, 2)), PreconditionError);
    EXPECT_THROW(sqrt_iterative(oracle::scalar_z2(z2, 2, 1.9), 3, 1e-12), ConvergenceError);
}

TEST(Truncation, Z2Sequence) {
    const oracle::Circulant2 c{2, 1};
    const auto seq = truncation_sequence(oracle::scalar_z2(z2, 2, 1), {0.5, 1.0, 2.0, 3.0});
    ASSERT_EQ(seq.size(), 4u);
    EXPECT_EQ(l2_norm(seq[0]), 0.0);
    EXPECT_NEAR(seq[1][0](0, 0).real(), c.low_part().first, 1e-12);
    EXPECT_NEAR(seq[2][1](0, 0).real(), c.low_part().second, 1e-12);
    EXPECT_NEAR(seq[3][0](0, 0).real(), 2.0, 1e-12);
    EXPECT_NEAR(seq[3][1](0, 0).real(), 1.0, 1e-12);
}

TEST(Truncation, ChainProperties) {
    for (const auto& spec : {"quaternion", "dihedral:4", "symmetric:4"}) {
        const auto g = make_group(spec);
        const MatFun phi = corpus::random_pd(g, 2, 5);
        const double top = is_positive_definite(phi).operator_norm;
        std::vector<double> ts;
        for (int i = 1; i <= 8; ++i) ts.push_back(top * i / 8.0);
        const auto seq = truncation_sequence(phi, ts);
        const double sc = l2_norm(phi) * l2_norm(phi);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            EXPECT_TRUE(is_positive_definite(seq[i]).positive());
            EXPECT_LE(l2_norm(seq[i]), l2_norm(phi) * (1 + 1e-12));
            // Phi_t and the remainder are convolution-orthogonal
            EXPECT_LT(l2_norm(convolve(seq[i], subtract(phi, seq[i]))), 1e-10 * sc);
            for (std::size_t j = 0; j < i; ++j) {
                EXPECT_TRUE(pd_order_leq(seq[j], seq[i]));
                EXPECT_LE(l2_norm(seq[j]), l2_norm(seq[i]) * (1 + 1e-12));
                EXPECT_LT(l2_norm(convolve(seq[i], seq[j]) - convolve(seq[j], seq[i])), 1e-10 * sc);
            }
        }
        EXPECT_LT(relative_distance(seq.back(), phi), 1e-10);
    }
}

TEST(Truncation, RejectsDescendingThresholds) {
    EXPECT_THROW(truncation_sequence(oracle::scalar_z2(z2, 2, 1), {2.0, 1.0}), PreconditionError);
}

TEST(Poly, SpecBasics) {
    const PolySpec p({0, 0, 2, -1});
    EXPECT_EQ(p.degree(), 3u);
    EXPECT_TRUE(p.divisible_by_t_squared());
    EXPECT_FALSE(PolySpec({0, 1}).divisible_by_t_squared());
    EXPECT_DOUBLE_EQ(p(0.5), 2 * 0.25 - 0.125);
    EXPECT_THROW(PolySpec({1.0, 2.0}), PreconditionError);
}

TEST(Poly, Examples) {
    const auto g = make_group("dihedral:3");
    const MatFun phi = corpus::random_pd(g, 2, 7);
    EXPECT_EQ(l2_norm(poly_apply(phi, PolySpec({0}))), 0.0);
    EXPECT_LT(relative_distance(poly_apply(phi, PolySpec({0, 1})), phi), 1e-15);
    EXPECT_LT(relative_distance(poly_apply(phi, PolySpec({0, 0, 1})), convolve(phi, phi)), 1e-13);
    const MatFun p3 = poly_apply(phi, PolySpec({0, 2, 0, -1}));
    const MatFun direct = subtract(scale(2.0, phi), convolve(convolve(phi, phi), phi));
    EXPECT_LT(relative_distance(p3, direct), 1e-12);
}

TEST(Poly, QFamilyMatchesSpectralCalculus) {
    const auto g = make_group("quaternion");
    const MatFun raw = corpus::random_pd(g, 2, 11);
    const MatFun phi = scale(1.0 / is_positive_definite(raw).operator_norm, raw);  // spectrum in [0, 1]
    const auto sd = spectral_decompose(build_lambda(phi));
    for (int k : {1, 2, 5, 12}) {
        const PolySpec q(q_family(k));
        EXPECT_TRUE(q.divisible_by_t_squared());
        for (double t : {0.0, 0.3, 1.0}) EXPECT_NEAR(q(t), t - t * std::pow(1 - t, k), 1e-13);
        const MatFun qp = poly_apply(phi, q);
        const Matrix expect = sd.apply([&](double t) { return t - t * std::pow(1 - t, k); });
        EXPECT_LT((build_lambda(qp).data - expect).norm(), 1e-10) << k;
        EXPECT_TRUE(is_positive_definite(qp).positive()) << k;
        EXPECT_TRUE(pd_order_leq(qp, phi)) << k;  // t(1-t)^k >= 0 on [0, 1]
    }
}

TEST(Poly, SquareOfZ2Example) {
    const MatFun sq = poly_apply(oracle::scalar_z2(z2, 2, 1), PolySpec({0, 0, 1}));
    EXPECT_NEAR(sq[0](0, 0).real(), 5.0, 1e-14);
    EXPECT_NEAR(sq[1](0, 0).real(), 4.0, 1e-14);
}

TEST(Truncation, NormGapInequality) {
    // ||Phi_j - Phi_i||^2 <= ||Phi_j||^2 - ||Phi_i||^2 along the chain
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = make_group(corpus::sample_groups()[seed % corpus::sample_groups().size()]);
        const MatFun phi = corpus::random_pd(g, 1 + seed % 3, seed);
        const double top = is_positive_definite(phi).operator_norm;
        const auto seq = truncation_sequence(phi, {0.1 * top, 0.3 * top, 0.6 * top, top});
        const double sc = l2_norm(phi) * l2_norm(phi);
        for (std::size_t j = 0; j < seq.size(); ++j)
            for (std::size_t i = 0; i < j; ++i) {
                const double lhs = std::pow(l2_norm(seq[j] - seq[i]), 2);
                const double rhs = std::pow(l2_norm(seq[j]), 2) - std::pow(l2_norm(seq[i]), 2);
                EXPECT_LE(lhs, rhs + 1e-10 * sc);
            }
    }
}

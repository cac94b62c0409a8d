#include <gtest/gtest.h>

#include <godement/godement.hpp>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace godement;

namespace {

MatFun indefinite(const GroupPtr& g, std::size_t n) {
    MatFun m = delta_identity(g, n);
    m[g->identity](0, 0) = -1.0;
    return m;
}

}  // namespace

TEST(TheoremA, PassesOnRandomPd) {
    for (const auto& spec : {"cyclic:6", "quaternion", "symmetric:3"}) {
        const auto g = make_group(spec);
        for (std::size_t n = 1; n <= 2; ++n) {
            const auto r = check_theorem_A(corpus::random_pd(g, n, 3 * n));
            EXPECT_TRUE(r.passed) << spec << " " << (r.counterexample ? r.counterexample->dump() : "");
            EXPECT_FALSE(r.counterexample);
            EXPECT_LE(r.worst_residual, 1e-8);
            EXPECT_LE(r.metrics.at("agreement"), 1e-6);
            EXPECT_LE(r.metrics.at("trace_excess"), 1e-8);
        }
    }
}

TEST(TheoremA, IterateChecks) {
    TheoremAOptions opt;
    opt.check_iterates = true;
    opt.iterative_tol = 1e-9;
    const auto r = check_theorem_A(corpus::random_pd(make_group("cyclic:2"), 1, 1), opt);
    EXPECT_TRUE(r.passed);
}

TEST(TheoremA, NonPdInputFailsWithReplayableWitness) {
    const auto g = make_group("dihedral:3");
    const MatFun bad = indefinite(g, 2);
    const auto r = check_theorem_A(bad);
    EXPECT_FALSE(r.passed);
    ASSERT_TRUE(r.counterexample);
    const MatFun replay = matfun_from_json(r.counterexample->at("phi"), g);
    EXPECT_EQ(l2_norm(replay - bad), 0.0);
    EXPECT_TRUE(std::isinf(r.worst_residual));
}

TEST(TheoremB, RealAndNonnegative) {
    const auto g = make_group("dihedral:4");
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto r = check_theorem_B(corpus::random_pd(g, 2, 2 * s), corpus::random_pd(g, 2, 2 * s + 1));
        EXPECT_TRUE(r.passed);
        EXPECT_GE(r.metrics.at("min_real"), 0.0);
        EXPECT_LE(r.metrics.at("imag"), 1e-10);
    }
}

TEST(TheoremB, Examples) {
    const auto z2 = make_group("cyclic:2");
    // <(2,1), (3,1)> = 2*3 + 1*1
    EXPECT_DOUBLE_EQ(inner(oracle::scalar_z2(z2, 2, 1), oracle::scalar_z2(z2, 3, 1)).real(), 7.0);
    const auto r = check_theorem_B(indefinite(z2, 2), delta_identity(z2, 2));
    EXPECT_FALSE(r.passed);
    ASSERT_TRUE(r.counterexample);
    EXPECT_EQ(r.counterexample->at("reason"), "input is not positive definite");
}

TEST(TheoremC, Z2OrthogonalPair) {
    const auto z2 = make_group("cyclic:2");
    const oracle::Circulant2 c{2, 1};
    auto [low, high] = build_orthogonal_pd_pair(oracle::scalar_z2(z2, 2, 1), 2.0);
    EXPECT_NEAR(low[0](0, 0).real(), c.low_part().first, 1e-12);
    EXPECT_NEAR(low[1](0, 0).real(), c.low_part().second, 1e-12);
    EXPECT_NEAR(high[0](0, 0).real(), c.high_part().first, 1e-12);
    EXPECT_NEAR(high[1](0, 0).real(), c.high_part().second, 1e-12);
    EXPECT_LT(l2_norm(convolve(low, high)), 1e-12);
    EXPECT_LT(std::abs(inner(low, high)), 1e-12);
    const auto r = check_theorem_C(low, high);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.indeterminate, 0u);
}

TEST(TheoremC, OrthogonalPairsOnNonabelianGroups) {
    for (const auto& spec : {"symmetric:3", "quaternion", "dihedral:4", "symmetric:4"}) {
        const auto g = make_group(spec);
        const MatFun theta = corpus::random_pd(g, 2, 4);
        const auto sd = spectral_decompose(build_lambda(theta));
        auto [a, b] = build_orthogonal_pd_pair(theta, central_spectral_gap(sd));
        EXPECT_TRUE(is_positive_definite(a).positive());
        EXPECT_TRUE(is_positive_definite(b).positive());
        EXPECT_GT(l2_norm(a), 0.0);
        EXPECT_GT(l2_norm(b), 0.0);
        const auto r = check_theorem_C(a, b);
        EXPECT_TRUE(r.passed) << spec;
        EXPECT_LE(r.metrics.at("inner_rel"), 1e-10);
        EXPECT_LE(r.metrics.at("convolution_rel"), 1e-10);
    }
}

TEST(TheoremC, RandomPairsAreNotOrthogonal) {
    const auto g = make_group("symmetric:3");
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto r = check_theorem_C(corpus::random_pd(g, 2, s), corpus::random_pd(g, 2, s + 100));
        EXPECT_TRUE(r.passed);
        EXPECT_GT(r.metrics.at("inner_rel"), 1e-6);
        EXPECT_GT(r.metrics.at("convolution_rel"), 1e-6);
    }
}

TEST(TheoremC, PerturbationScalesLinearly) {
    const auto g = make_group("dihedral:3");
    const MatFun theta = corpus::random_pd(g, 2, 8);
    auto [a, b] = build_orthogonal_pd_pair(theta, central_spectral_gap(spectral_decompose(build_lambda(theta))));
    const MatFun r = corpus::random_pd(g, 2, 9);
    std::vector<double> ratios;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        const MatFun bp = add(b, scale(eps, r));
        ratios.push_back(l2_norm(convolve(a, bp)) / eps);
        EXPECT_TRUE(check_theorem_C(a, bp).passed);
    }
    for (double q : ratios) EXPECT_NEAR(q / ratios.front(), 1.0, 1e-3);
    EXPECT_GT(ratios.front(), 0.0);
}

TEST(TheoremC, BandIsIndeterminateNotFailure) {
    const auto g = make_group("cyclic:2");
    auto [a, b] = build_orthogonal_pd_pair(oracle::scalar_z2(g, 2, 1), 2.0);
    const auto r = check_theorem_C(a, add(b, scale(1e-9, a)));
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.indeterminate, 1u);
}

TEST(TheoremC, Errors) {
    const auto g = make_group("cyclic:3");
    EXPECT_THROW(build_orthogonal_pd_pair(delta_identity(g, 1), 5.0), PreconditionError);
    EXPECT_THROW(build_orthogonal_pd_pair(indefinite(g, 2), 0.5), PreconditionError);
}

TEST(InnerTrace, HoldsAndFlagsNonPd) {
    const auto g = make_group("quaternion");
    for (std::uint64_t s = 0; s < 10; ++s)
        EXPECT_TRUE(check_lemma_inner_trace(corpus::random_pd(g, 3, s), corpus::random_pd(g, 3, s + 50)).passed);
    EXPECT_FALSE(check_lemma_inner_trace(indefinite(g, 2), delta_identity(g, 2)).passed);
}

TEST(Reports, MergeAndJson) {
    const auto g = make_group("klein");
    TheoremReport a = check_theorem_B(corpus::random_pd(g, 1, 1), corpus::random_pd(g, 1, 2));
    const TheoremReport bad = check_theorem_B(indefinite(g, 1), delta_identity(g, 1));
    merge_into(a, bad);
    EXPECT_EQ(a.trials, 2u);
    EXPECT_FALSE(a.passed);
    const Json j = to_json(a);
    EXPECT_EQ(j.at("theorem"), "B");
    EXPECT_FALSE(j.at("passed").get<bool>());
    EXPECT_FALSE(j.at("counterexample").is_null());
    // min_ keys keep the minimum
    TheoremReport m;
    m.record("min_x", 2);
    m.record("min_x", 1);
    m.record("y", 1);
    m.record("y", 3);
    EXPECT_EQ(m.metrics["min_x"], 1);
    EXPECT_EQ(m.metrics["y"], 3);
}

#include <gtest/gtest.h>

#include <godement/godement.hpp>

#include "corpus.hpp"

using namespace godement;

TEST(GroupJson, Z2Form) {
    const Json j = to_json(*make_group("cyclic:2"));
    EXPECT_EQ(j.at("order"), 2);
    EXPECT_EQ(j.at("mult"), Json::parse("[[0,1],[1,0]]"));
    EXPECT_EQ(j.at("inv"), Json::parse("[0,1]"));
    EXPECT_EQ(j.at("identity"), 0);
}

TEST(GroupJson, RoundTrip) {
    for (const auto& spec : corpus::sample_groups()) {
        const GroupTable t = *make_group(spec);
        const GroupTable back = group_from_json(Json::parse(to_json(t).dump()));
        EXPECT_EQ(back.mult, t.mult);
        EXPECT_EQ(back.inv, t.inv);
        EXPECT_EQ(back.identity, t.identity);
        EXPECT_EQ(back.labels, t.labels);
        EXPECT_TRUE(validate_group(back).ok());
    }
}

TEST(GroupJson, SchemaErrors) {
    EXPECT_THROW(group_from_json(Json::parse("[]")), SchemaError);
    EXPECT_THROW(group_from_json(Json::parse(R"({"order":2,"mult":[[0,1],[1,0]],"inv":[0,1]})")), SchemaError);
    EXPECT_THROW(group_from_json(Json::parse(R"({"order":2,"mult":[[0,-1],[1,0]],"inv":[0,1],"identity":0})")),
                 SchemaError);
    EXPECT_THROW(group_from_json(Json::parse(R"({"order":2,"mult":"x","inv":[0,1],"identity":0})")), SchemaError);
}

TEST(MatFunJson, Form) {
    const auto g = make_group("cyclic:2");
    MatFun f(g, 1);
    f[0](0, 0) = Complex(2, 0.5);
    f[1](0, 0) = 1.0;
    const Json j = to_json(f);
    EXPECT_EQ(j.at("group_id"), g->id);
    EXPECT_EQ(j.at("n"), 1);
    EXPECT_EQ(j.at("values"), Json::parse("[[[[2.0,0.5]]],[[[1.0,0.0]]]]"));
}

TEST(MatFunJson, RoundTripIsExact) {
    for (const auto& spec : corpus::sample_groups()) {
        const auto g = make_group(spec);
        const MatFun f = random_matfun(g, 3, 5);
        const MatFun back = matfun_from_json(Json::parse(to_json(f).dump()));
        EXPECT_EQ(l2_norm(back - f), 0.0) << spec;
        EXPECT_TRUE(same_group(back.group_ptr(), g));
        const MatFun fixed = matfun_from_json(to_json(f), g);
        EXPECT_EQ(fixed.group_ptr(), g);
    }
}

TEST(MatFunJson, GroupMismatch) {
    const Json j = to_json(random_matfun(make_group("cyclic:6"), 1, 1));
    EXPECT_THROW(matfun_from_json(j, make_group("dihedral:3")), GroupMismatch);
    EXPECT_NO_THROW(matfun_from_json(j, make_group("cyclic:6")));
}

TEST(MatFunJson, SchemaErrors) {
    const Json good = to_json(random_matfun(make_group("cyclic:2"), 2, 1));
    auto broken = [&](auto edit) {
        Json j = good;
        edit(j);
        return j;
    };
    EXPECT_THROW(matfun_from_json(broken([](Json& j) { j.erase("values"); })), SchemaError);
    EXPECT_THROW(matfun_from_json(broken([](Json& j) { j["group_id"] = "nonsense:3"; })), SchemaError);
    EXPECT_THROW(matfun_from_json(broken([](Json& j) { j["group_id"] = 7; })), SchemaError);
    EXPECT_THROW(matfun_from_json(broken([](Json& j) { j["n"] = 3; })), SchemaError);
    EXPECT_THROW(matfun_from_json(broken([](Json& j) { j["n"] = 0; })), SchemaError);
    EXPECT_THROW(matfun_from_json(broken([](Json& j) { j["values"].erase(1); })), SchemaError);
    EXPECT_THROW(matfun_from_json(broken([](Json& j) { j["values"][0][0][0] = 1.0; })), SchemaError);
    EXPECT_THROW(matfun_from_json(broken([](Json& j) { j["values"][0][0][0] = Json::array({1.0}); })), SchemaError);
    EXPECT_THROW(matfun_from_json(broken([](Json& j) { j["values"][0][1].erase(0); })), SchemaError);
}

TEST(RepJson, RoundTrip) {
    const auto p = regular_rep(make_group("symmetric:3"));
    const UnitaryRep back = rep_from_json(Json::parse(to_json(p).dump()));
    EXPECT_EQ(back.dim, p.dim);
    for (Element x = 0; x < 6; ++x) EXPECT_EQ((back(x) - p(x)).norm(), 0.0);
    Json bad = to_json(p);
    bad["matrices"].erase(0);
    EXPECT_THROW(rep_from_json(bad), SchemaError);
}

TEST(ResultJson, CertificateAndSqrt) {
    const auto g = make_group("cyclic:2");
    MatFun f(g, 1);
    f[0](0, 0) = 2.0;
    f[1](0, 0) = 1.0;
    const Json c = to_json(is_positive_definite(f));
    EXPECT_EQ(c.at("verdict"), "positive_definite");
    EXPECT_NEAR(c.at("min_eigenvalue").get<double>(), 1.0, 1e-15);
    EXPECT_NEAR(c.at("operator_norm").get<double>(), 3.0, 1e-15);
    const Json s = to_json(sqrt_spectral(f));
    EXPECT_EQ(s.at("method"), "spectral");
    EXPECT_FALSE(s.contains("iterations"));
    EXPECT_LE(s.at("residual").get<double>(), 1e-12);
    const Json it = to_json(sqrt_iterative(f));
    EXPECT_EQ(it.at("method"), "iterative");
    EXPECT_EQ(it.at("monotone_trace").size(), it.at("iterations").get<std::size_t>());
    EXPECT_NO_THROW(matfun_from_json(it.at("psi"), g));
}

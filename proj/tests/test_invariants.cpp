#include "l11/coherence.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace l11;
using l11::testing::oracle_alexander;
using l11::testing::oracle_torus;

namespace {

const Laurent trefoil = parse_laurent("t^-1 - 1 + t");

Combinatorial reduced_constructed(const BraidParams& bp) { return reduce(combinatorial(construct_diagram(bp))); }

}  // namespace

TEST(Laurent, TextAndJson) {
    EXPECT_EQ(trefoil.str(), "t^-1 - 1 + t");
    nlohmann::json j = to_json(trefoil);
    EXPECT_EQ(j, nlohmann::json::parse(R"({"-1":1,"0":-1,"1":1})"));
    EXPECT_EQ(laurent_from_json(j), trefoil);
    Laurent big = Laurent::monomial(3, mpz_class("123456789012345678901234567890"));
    EXPECT_EQ(laurent_from_json(to_json(big)), big);
    EXPECT_THROW(laurent_from_json(nlohmann::json::parse(R"({"x":1})")), std::invalid_argument);
}

TEST(Laurent, Normalization) {
    // t^5 (t^-1 - 1 + t) up to sign
    Laurent shifted = -(T(4) - T(5) + T(6));
    EXPECT_EQ(alexander_normalize(shifted), trefoil);
}

TEST(Burau, KnownValues) {
    BraidWord s13 = parse_braid(2, "s1 s1 s1");
    EXPECT_EQ(burau_alexander(s13), trefoil);
    BraidWord t34 = parse_braid(3, "s2 s1 s2 s1 s2 s1 s2 s1");
    EXPECT_EQ(burau_alexander(t34), oracle_torus(3, 4));
    BraidWord empty;
    empty.strands = 1;
    EXPECT_EQ(burau_alexander(empty), Laurent(1));
    EXPECT_THROW(burau_alexander(parse_braid(2, "s1 s1")), std::invalid_argument);
}

TEST(Fox, KnownValues) {
    for (BraidParams bp : {BraidParams{1, 2, 1, 2}, BraidParams{2, 3, 2, 3}}) {
        KnotPresentation kp = build_presentation(bp);
        EXPECT_EQ(fox_alexander(kp.pres, kp.deg), oracle_alexander().at(bp)) << bp.str();
    }
}

TEST(Fox, UnknotGroup) {
    Presentation free1;
    free1.generators = {"a"};
    EXPECT_EQ(fox_alexander(free1, {1}), Laurent(1));
}

TEST(Fox, RejectsBadAbelianization) {
    Presentation p = parse_presentation("generators a b\nrelator a a b^-1\n");
    EXPECT_THROW(fox_alexander(p, {1, 1}), std::invalid_argument);
    Presentation z2 = parse_presentation("generators a\nrelator a a\n");
    EXPECT_THROW(fox_alexander(z2, {1}), std::invalid_argument);
}

TEST(DiagramRoute, KnownValues) {
    EXPECT_EQ(alexander_from_diagram(combinatorial(from_params({1, 0, 0, 0}))), Laurent(1));
    EXPECT_EQ(alexander_from_diagram(reduced_constructed({1, 2, 1, 2})), trefoil);
    Laurent fig = alexander_from_diagram(reduced_constructed({6, 7, 4, 3}));
    EXPECT_EQ(fig.hi(), 18);
    EXPECT_EQ(fig, burau_alexander(braid_from_params({6, 7, 4, 3})));
    EXPECT_EQ(fig, oracle_alexander().at({6, 7, 4, 3}));
}

TEST(DiagramRoute, RejectsUnreducedAndLens) {
    EXPECT_THROW(alexander_from_diagram(combinatorial(construct_diagram({1, 2, 1, 2}))), InvalidDiagram);
    CurveDiagram lens;
    lens.alpha.pts = {{Q(0), Q(0)}, {Q(1), Q(0)}};
    lens.beta.pts = {{qq(1, 3), qq(1, 7)}, {qq(4, 3), qq(36, 7)}};
    lens.w = {qq(1, 2), qq(1, 2)};
    lens.z = {qq(1, 2), qq(1, 2)};
    ASSERT_EQ(ambient(lens).order, 5);
    EXPECT_THROW(alexander_from_diagram(combinatorial(lens)), InvalidDiagram);
}

TEST(Staircase, Examples) {
    EXPECT_TRUE(staircase_check(trefoil));
    EXPECT_FALSE(staircase_check(parse_laurent("2t^-1 - 3 + 2t")));
    Laurent fig8 = alexander_from_diagram(combinatorial(figure_eight_diagram()));
    EXPECT_EQ(fig8, parse_laurent("-t^-1 + 3 - t"));
    EXPECT_FALSE(staircase_check(fig8));
    EXPECT_FALSE(staircase_check(parse_laurent("t^-1 + 1 + t")));
    EXPECT_TRUE(staircase_check(Laurent(1)));
}

TEST(Torus, ClosedForm) {
    EXPECT_EQ(torus_alexander(2, 3), trefoil);
    EXPECT_EQ(torus_alexander(2, 5), parse_laurent("t^-2 - t^-1 + 1 - t + t^2"));
    for (auto [p, q] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}, {2, 7}, {4, 5}})
        EXPECT_EQ(torus_alexander(p, q), oracle_torus(p, q)) << p << ',' << q;
    Laurent t34 = torus_alexander(3, 4);
    EXPECT_EQ(t34.hi(), 3);
    EXPECT_TRUE(staircase_check(t34));
    EXPECT_THROW(torus_alexander(2, 4), std::invalid_argument);
    EXPECT_THROW(torus_alexander(1, 4), std::invalid_argument);
}

TEST(Routes, AllThreeMatchTheOracleOnTheSweep) {
    auto all = knot_sweep(8);
    all.push_back({6, 7, 4, 3});
    ASSERT_EQ(all.size(), oracle_alexander().size());
    for (auto& bp : all) {
        const Laurent& want = oracle_alexander().at(bp);
        EXPECT_EQ(burau_alexander(braid_from_params(bp)), want) << bp.str();
        KnotPresentation kp = build_presentation(bp);
        EXPECT_EQ(fox_alexander(kp.pres, kp.deg), want) << bp.str();
        Combinatorial red = reduced_constructed(bp);
        Laurent d = alexander_from_diagram(red);
        EXPECT_EQ(d, want) << bp.str();
        EXPECT_EQ(d.hi(), genus(bp)) << bp.str();
        EXPECT_TRUE(staircase_check(d)) << bp.str();
        // one generator per occupied grading
        EXPECT_EQ(int(d.term_count()), red.p) << bp.str();
    }
}

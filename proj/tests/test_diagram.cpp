#include "l11/coherence.hpp"

#include <gtest/gtest.h>

using namespace l11;

namespace {

QPt pt(long a, long b, long c, long d) { return {qq(a, b), qq(c, d)}; }

CurveDiagram straight(long bx, long by) {
    CurveDiagram d;
    d.alpha.pts = {{Q(0), Q(0)}, {Q(1), Q(0)}};
    d.beta.pts = {pt(1, 3, 1, 7), {qq(1, 3) + bx, qq(1, 7) + by}};
    d.w = pt(1, 2, 1, 2);
    d.z = pt(1, 2, 1, 2);
    return d;
}

// vertical beta with a finger dipping under alpha: an empty bigon on an unknot diagram
CurveDiagram finger() {
    CurveDiagram d;
    d.alpha.pts = {{Q(0), Q(0)}, {Q(1), Q(0)}};
    d.beta.pts = {pt(3, 10, 1, 2),  pt(3, 10, 1, 10), pt(6, 10, 1, 10), pt(6, 10, -1, 10), pt(7, 10, -1, 10),
                  pt(7, 10, 1, 10), pt(8, 10, 1, 10), pt(8, 10, -1, 2),  pt(3, 10, -1, 2)};
    d.w = pt(1, 10, 7, 10);
    d.z = pt(1, 10, 3, 10);
    return d;
}

std::vector<ParamDiagram> all_params(int pmax) {
    std::vector<ParamDiagram> out;
    for (int p = 1; p <= pmax; ++p)
        for (int q = 0; 2 * q < p; ++q)
            for (int r = 0; r < p; ++r)
                for (int s = 0; s < p; ++s) {
                    try {
                        params_combinatorial({p, q, r, s});
                    } catch (const InvalidDiagram&) {
                        continue;
                    }
                    out.push_back({p, q, r, s});
                }
    return out;
}

// equal crossings and signs, basepoints in the same faces
bool same_labelled(const Combinatorial& a, const Combinatorial& b) {
    if (a.p != b.p || a.beta != b.beta || a.eps != b.eps) return false;
    Faces F = faces(a);
    return F.slot(a.w) == F.slot(b.w) && F.slot(a.z) == F.slot(b.z);
}

}  // namespace

TEST(FromParams, Unknot) {
    CurveDiagram d = from_params({1, 0, 0, 0});
    Analysis an = analyze(d);
    EXPECT_EQ(an.comb.p, 1);
    EXPECT_EQ(std::abs(an.data.sum_eps), 1);
    EXPECT_TRUE(ambient(d).is_s3);
    EXPECT_EQ(ambient(d).order, 1);
    EXPECT_TRUE(enumerate_bigons(d).empty());
    EXPECT_TRUE(is_reduced(d));
}

TEST(FromParams, SomeThreeCrossingDiagramIsTheTrefoil) {
    int found = 0;
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
            Combinatorial c;
            try {
                c = combinatorial(from_params({3, 1, r, s}));
            } catch (const InvalidDiagram&) {
                continue;
            }
            if (c.p == 3 && ambient(c).is_s3 && is_reduced(c) && alexander_from_diagram(c) == torus_alexander(2, 3))
                ++found;
        }
    EXPECT_GT(found, 0);
}

TEST(FromParams, Rejects) {
    EXPECT_THROW(from_params({2, 1, 0, 0}), InvalidDiagram);
    EXPECT_THROW(from_params({0, 0, 0, 0}), InvalidDiagram);
    EXPECT_THROW(from_params({3, -1, 0, 0}), InvalidDiagram);
    int disconnected = 0;
    for (int s = 0; s < 4; ++s) try {
            params_combinatorial({4, 0, 0, s});
        } catch (const InvalidDiagram&) {
            ++disconnected;
        }
    EXPECT_GT(disconnected, 0);
}

TEST(FromParams, CountsOnTheParameterSweep) {
    for (auto& pd : all_params(7)) {
        CurveDiagram d = from_params(pd);
        Analysis an = analyze(d);
        ASSERT_EQ(an.comb.p, pd.p);
        int left = 0, right = 0, bands = 0;
        for (auto& b : an.data.along_beta) {
            if (b.leaving == Strand::RainbowLeft) ++left;
            else if (b.leaving == Strand::RainbowRight) ++right;
            else ++bands;
        }
        EXPECT_EQ(left, pd.q);
        EXPECT_EQ(right, pd.q);
        EXPECT_EQ(bands, pd.p - 2 * pd.q);
        EXPECT_EQ(an.data.sum_eps, intersection_number(d.alpha.cls(), d.beta.cls()));
        EXPECT_TRUE(same_labelled(an.comb, params_combinatorial(pd))) << pd.p << pd.q << pd.r << pd.s;
    }
}

TEST(Analyze, LensSpaceDiagrams) {
    CurveDiagram two = straight(1, 2);
    Analysis an = analyze(two);
    EXPECT_EQ(an.comb.p, 2);
    EXPECT_EQ(an.comb.eps[0], an.comb.eps[1]);
    EXPECT_EQ(std::abs(an.data.sum_eps), 2);
    EXPECT_EQ(ambient(two).order, 2);
    EXPECT_FALSE(ambient(two).is_s3);
    CurveDiagram five = straight(1, 5);
    EXPECT_EQ(ambient(five).order, 5);
    EXPECT_FALSE(ambient(five).is_s3);
}

TEST(Analyze, RejectsBadInput) {
    CurveDiagram d = straight(0, 1);
    d.beta.pts = {pt(1, 3, 1, 7), {qq(1, 3) + 2, qq(1, 7) + 2}};
    EXPECT_THROW(analyze(d), InvalidDiagram);  // class (2,2) not primitive
    d = straight(1, 0);
    EXPECT_THROW(analyze(d), InvalidDiagram);  // parallel to alpha
    d = straight(0, 1);
    d.beta.pts = {{qq(1, 2), qq(-1, 2)}, {qq(1, 2), Q(0)}, {qq(1, 2), qq(1, 2)}};
    EXPECT_THROW(analyze(d), InvalidDiagram);  // crossing at a polyline vertex
    d = straight(0, 1);
    d.beta.pts = {{qq(1, 3), qq(1, 7)}, {qq(1, 3), qq(1, 7)}, {qq(1, 3), qq(8, 7)}};
    EXPECT_THROW(analyze(d), InvalidDiagram);  // degenerate segment
    d = straight(0, 1);
    d.w = {qq(1, 3), qq(1, 2)};
    EXPECT_THROW(analyze(d), InvalidDiagram);  // basepoint on beta
    CurveDiagram self;
    self.alpha.pts = {{Q(0), Q(0)}, {Q(1), Q(0)}};
    self.beta.pts = {pt(1, 5, 1, 7), pt(4, 5, 5, 7), pt(4, 5, 2, 7), pt(1, 5, 8, 7)};
    self.w = self.z = pt(9, 10, 9, 10);
    EXPECT_THROW(analyze(self), InvalidDiagram);  // beta not embedded
}

TEST(Analyze, Deterministic) {
    CurveDiagram d = construct_diagram({2, 3, 2, 3});
    EXPECT_EQ(combinatorial(d), combinatorial(d));
    EXPECT_EQ(to_json(d).dump(), to_json(construct_diagram({2, 3, 2, 3})).dump());
}

TEST(Bigons, ConstructorOutputHasAnEmptyBigon) {
    Combinatorial c = combinatorial(construct_diagram({1, 2, 1, 2}));
    auto bigons = enumerate_bigons(c);
    EXPECT_TRUE(std::any_of(bigons.begin(), bigons.end(), [](const Bigon& b) { return b.empty(); }));
    EXPECT_FALSE(is_reduced(c));
    Combinatorial r = reduce(c);
    EXPECT_TRUE(is_reduced(r));
    EXPECT_EQ(r.p, 3);
    for (auto& b : enumerate_bigons(r)) EXPECT_FALSE(b.empty());
}

TEST(Bigons, ReversalSymmetry) {
    for (auto& pd : all_params(6)) {
        Combinatorial c = params_combinatorial(pd);
        auto a = enumerate_bigons(c);
        auto b = enumerate_bigons(reverse_beta(c));
        ASSERT_EQ(a.size(), b.size());
        auto key = [](const Bigon& g) {
            std::vector<int> f = g.faces;
            std::sort(f.begin(), f.end());
            return std::tuple(f, g.has_w, g.has_z);
        };
        std::multiset<std::tuple<std::vector<int>, bool, bool>> ka, kb;
        for (auto& g : a) ka.insert(key(g));
        for (auto& g : b) kb.insert(key(g));
        EXPECT_EQ(ka, kb);
        std::multiset<int> ca, cb;
        for (auto& g : a)
            for (int o : g.coherent_under) ca.insert(o);
        for (auto& g : b)
            for (int o : g.coherent_under) cb.insert(-o);
        EXPECT_EQ(ca, cb);
        for (auto& g : a) EXPECT_LT(int(g.beta_segments(c.p).size()), c.p);
    }
}

TEST(Reduce, HandBuiltEmptyBigon) {
    CurveDiagram d = finger();
    Combinatorial c = combinatorial(d);
    EXPECT_EQ(c.p, 3);
    EXPECT_TRUE(ambient(c).is_s3);
    EXPECT_FALSE(is_reduced(c));
    Combinatorial r = reduce(c);
    EXPECT_EQ(r.p, 1);
    EXPECT_TRUE(is_reduced(r));
    EXPECT_EQ(alexander_from_diagram(r), Laurent(1));
}

TEST(Reduce, KnownCounts) {
    EXPECT_EQ(reduce(combinatorial(construct_diagram({2, 3, 2, 3}))).p, 5);
    Combinatorial tref = reduce(combinatorial(construct_diagram({1, 2, 1, 2})));
    EXPECT_EQ(reduce(tref), tref);
    CurveDiagram geo = reduce(construct_diagram({1, 2, 1, 2}));
    EXPECT_EQ(combinatorial(geo).p, 3);
}

TEST(Reduce, IdempotentBoundedAndSameAmbient) {
    for (auto& pd : all_params(7)) {
        Combinatorial c = params_combinatorial(pd);
        auto steps = reduction_steps(c);
        const Combinatorial& r = steps.back();
        EXPECT_TRUE(is_reduced(r));
        EXPECT_EQ(reduce(r).p, r.p);
        EXPECT_LE(int(steps.size()) - 1, c.p / 2);
        EXPECT_EQ(ambient(r).order, ambient(c).order);
        for (std::size_t k = 1; k < steps.size(); ++k) EXPECT_EQ(steps[k].p, steps[k - 1].p - 2);
    }
    for (auto& bp : knot_sweep(6)) {
        Combinatorial c = combinatorial(construct_diagram(bp));
        auto steps = reduction_steps(c);
        EXPECT_LE(int(steps.size()) - 1, c.p / 2);
        EXPECT_EQ(reduce(steps.back()), steps.back());
    }
}

TEST(Realize, RoundTripsThroughGeometry) {
    for (auto& pd : all_params(6)) {
        Combinatorial c = params_combinatorial(pd);
        EXPECT_TRUE(same_labelled(combinatorial(realize(c)), c));
    }
}

TEST(Json, RoundTrip) {
    CurveDiagram d = construct_diagram({2, 3, 2, 3});
    nlohmann::json j = to_json(d);
    CurveDiagram e = diagram_from_json(j);
    EXPECT_EQ(to_json(e), j);
    EXPECT_EQ(combinatorial(e), combinatorial(d));
    EXPECT_EQ(param_diagram_from_json(to_json(ParamDiagram{5, 2, 0, 1})).q, 2);
    EXPECT_THROW(diagram_from_json(nlohmann::json::parse(R"({"alpha": []})")), InvalidDiagram);
    EXPECT_THROW(
        diagram_from_json(nlohmann::json::parse(
            R"({"alpha": [[0,0],[1,0]], "beta": [[[1,3],[1,7]], [[1,3],[1,0]]], "w": [0,0], "z": [0,0]})")),
        InvalidDiagram);
}

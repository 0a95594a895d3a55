#include "l11/alexander.hpp"
#include "l11/knot_group.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace l11;

namespace {

std::vector<BraidParams> sweep_and_figure() {
    auto all = knot_sweep(8);
    all.push_back({6, 7, 4, 3});
    return all;
}

}  // namespace

TEST(Bridge, CrossingCounts) {
    for (BraidParams bp : {BraidParams{1, 2, 1, 2}, BraidParams{6, 7, 4, 3}, BraidParams{2, 3, 2, 3}}) {
        BridgeGeometry bg = bridge_geometry(bp);
        int vertical = 0, horizontal = 0;
        for (auto& c : bg.crossings) (c.disk == 0 ? vertical : horizontal)++;
        EXPECT_EQ(vertical, bp.omega) << bp.str();
        EXPECT_EQ(horizontal, bp.t) << bp.str();
        EXPECT_EQ(int(bg.d0_by_label.size()), bp.omega);
        EXPECT_EQ(int(bg.d1_by_label.size()), bp.t);
        EXPECT_TRUE(std::is_sorted(bg.crossings.begin(), bg.crossings.end(),
                                   [](auto& u, auto& v) { return u.param < v.param; }));
        for (auto& c : bg.crossings) {
            EXPECT_GT(c.param, 0);
            EXPECT_LT(c.param, 1);
        }
    }
    EXPECT_THROW(bridge_geometry({1, 1, 1, 1}), std::invalid_argument);
}

TEST(Presentation, DegreesAndFraming) {
    KnotPresentation kp = build_presentation(BraidParams{1, 2, 1, 2});
    EXPECT_EQ(kp.deg, (std::vector<long>{3, 2, 2, 1}));
    EXPECT_EQ(kp.k0, 5);
    EXPECT_EQ(kp.genus, 1);
    EXPECT_EQ(kp.pres.generators, (std::vector<std::string>{"x0", "y0", "x1", "y1"}));
    EXPECT_EQ(kp.mu.degree(kp.deg), 1);
    EXPECT_EQ(kp.mu1.degree(kp.deg), 1);
    EXPECT_EQ(build_presentation(BraidParams{6, 7, 4, 3}).k0, 49);
}

TEST(Presentation, AbelianizesToTheIntegersOnTheSweep) {
    for (auto& bp : sweep_and_figure()) {
        KnotPresentation kp = build_presentation(bp);
        for (auto& r : kp.pres.relators) EXPECT_EQ(r.degree(kp.deg), 0) << bp.str();
        EXPECT_EQ(kp.lambda().degree(kp.deg), 0) << bp.str();
        EXPECT_EQ(kp.longitude_hg.degree(kp.deg), kp.k0);
        EXPECT_EQ(kp.cone_base().degree(kp.deg), -(2 * kp.genus - 1)) << bp.str();
        EXPECT_EQ(int(kp.words.g.size()), bp.t);
        EXPECT_EQ(int(kp.words.h.size()), bp.omega);
        // the Fox matrix of the relators recovers the polynomial
        EXPECT_EQ(fox_alexander(kp.pres, kp.deg), l11::testing::oracle_alexander().at(bp)) << bp.str();
    }
}

TEST(Presentation, StructuralChecks) {
    for (auto& bp : sweep_and_figure()) {
        auto checks = structural_checks(build_presentation(bp));
        for (auto& c : checks) EXPECT_TRUE(c.ok) << bp.str() << ": " << c.name;
    }
}

TEST(Presentation, StructuralChecksCatchATamperedWord) {
    KnotPresentation kp = build_presentation(BraidParams{2, 3, 2, 3});
    ASSERT_TRUE(all_ok(structural_checks(kp)));
    KnotPresentation bad = kp;
    bad.words.g.front().letters.front().second = -1;
    EXPECT_FALSE(all_ok(structural_checks(bad)));
    bad = kp;
    std::swap(bad.words.g.front(), bad.words.g.back());
    EXPECT_FALSE(all_ok(structural_checks(bad)));
    bad = kp;
    bad.k0 += 1;
    EXPECT_FALSE(all_ok(structural_checks(bad)));
}

TEST(Presentation, TextAndJsonRoundTrip) {
    KnotPresentation kp = build_presentation(BraidParams{2, 3, 2, 3});
    Presentation back = parse_presentation(kp.str());
    EXPECT_EQ(back.generators, kp.pres.generators);
    ASSERT_EQ(back.relators.size(), kp.pres.relators.size());
    for (std::size_t i = 0; i < back.relators.size(); ++i) EXPECT_EQ(back.relators[i], kp.pres.relators[i]);
    EXPECT_EQ(back.relator_names, kp.pres.relator_names);
    Presentation j = presentation_from_json(to_json(kp.pres));
    EXPECT_EQ(j.relators, kp.pres.relators);
    EXPECT_EQ(parse_presentation(kp.pres.str()).relators, kp.pres.relators);
    EXPECT_THROW(parse_presentation("generators a\nrelator b\n"), std::invalid_argument);
}

TEST(Words, CyclicReduction) {
    Presentation p = parse_presentation("generators a b\n");
    Word w = p.parse_word("b a a^-1 b^-1 a b a^-1");
    EXPECT_EQ(reduce(w), p.parse_word("a b a^-1"));
    EXPECT_EQ(cyclic_reduce(w), p.parse_word("b"));
    EXPECT_TRUE(same_relator(p.parse_word("a b"), p.parse_word("b a")));
    EXPECT_TRUE(same_relator(p.parse_word("a b"), p.parse_word("a^-1 b^-1")));
    EXPECT_FALSE(same_relator(p.parse_word("a b"), p.parse_word("a b^-1")));
}

TEST(Suffixes, CountingIdentities) {
    int displayed = 0;
    for (auto& bp : sweep_and_figure()) {
        BridgeGeometry bg = bridge_geometry(bp);
        SuffixStats st = suffix_stats(bg, Convention{});
        EXPECT_TRUE(st.crossing_identities) << bp.str();
        EXPECT_TRUE(st.geometric_counts) << bp.str();
        EXPECT_EQ(st.t_prime + st.omega_prime + st.sum_m + st.sum_n, bp.t + bp.omega) << bp.str();
        EXPECT_EQ(int(st.g_suffix.size()), st.t_prime + 1);
        EXPECT_EQ(st.g_suffix.back(), st.words.g.front());
        displayed += st.displayed_identities;
    }
    // the identities with t and omega swapped hold only on part of the sweep
    EXPECT_LT(displayed, int(sweep_and_figure().size()));
}

TEST(Suffixes, TorusKnotThreeFour) {
    SuffixStats st = suffix_stats(bridge_geometry({2, 3, 2, 3}), Convention{});
    EXPECT_EQ(st.t_prime, 2);
    EXPECT_EQ(st.omega_prime, 1);
    EXPECT_EQ(3 + st.t_prime - st.omega_prime + 1, 5);
}

TEST(Suffixes, AllConventionsReport) {
    auto cs = all_conventions();
    EXPECT_EQ(cs.size(), 4u);
    for (auto& c : cs) EXPECT_FALSE(c.str().empty());
    SuffixStats st = suffix_stats(bridge_geometry({6, 7, 4, 3}), cs[0]);
    EXPECT_TRUE(st.crossing_identities);
}

TEST(ParallelLoop, UsesBothDiskSystems) {
    for (auto& bp : sweep_and_figure()) {
        BridgeGeometry bg = bridge_geometry(bp);
        ParallelLoop pl = parallel_loop(bg);
        auto deg = meridian_degrees(bp);
        EXPECT_FALSE(pl.word0.empty());
        EXPECT_FALSE(pl.word1.empty());
        EXPECT_TRUE(pl.word0.is_positive());
        EXPECT_TRUE(pl.word1.is_positive());
        EXPECT_EQ(pl.word0.degree(deg), pl.word1.degree(deg)) << bp.str();
        for (auto& l : pl.word0.letters) EXPECT_LE(l.first, Y0);
        for (auto& l : pl.word1.letters) EXPECT_GT(l.first, Y0);
    }
}

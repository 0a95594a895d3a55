#include "l11/alexander.hpp"
#include "l11/braid.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace l11;

namespace {

// the normal-form word without the normalization precondition
BraidWord raw_word(int omega, int t, int b0, int b1) {
    BraidWord w;
    w.strands = omega + 1;
    for (int i = omega; i > omega - b0; --i) w.letters.push_back({i, 1});
    for (int k = 0; k < b1; ++k)
        for (int i = omega; i >= 1; --i) w.letters.push_back({i, 1});
    for (int k = 0; k < t - b1; ++k)
        for (int i = omega - 1; i >= 1; --i) w.letters.push_back({i, 1});
    return w;
}

BraidWord word_of(int strands, std::vector<int> idx) {
    BraidWord w;
    w.strands = strands;
    for (int i : idx) w.letters.push_back({i, 1});
    return w;
}

}  // namespace

TEST(BraidWord, SixSevenFourThree) {
    BraidWord w = braid_from_params({6, 7, 4, 3});
    std::vector<int> expect{6, 5, 4, 3};
    for (int k = 0; k < 3; ++k)
        for (int i : {6, 5, 4, 3, 2, 1}) expect.push_back(i);
    for (int k = 0; k < 4; ++k)
        for (int i : {5, 4, 3, 2, 1}) expect.push_back(i);
    EXPECT_EQ(w.strands, 7);
    ASSERT_EQ(w.letters.size(), 42u);
    EXPECT_EQ(w.letters, word_of(7, expect).letters);
    EXPECT_EQ(braid_blocks({6, 7, 4, 3}), "s6 s5 s4 s3 (s6 s5 s4 s3 s2 s1)^3 (s5 s4 s3 s2 s1)^4");
}

TEST(BraidWord, SmallCases) {
    EXPECT_EQ(braid_from_params({1, 2, 1, 2}).str(), "s1 s1 s1");
    EXPECT_EQ(braid_from_params({2, 3, 2, 3}).letters, word_of(3, {2, 1, 2, 1, 2, 1, 2, 1}).letters);
}

TEST(BraidWord, RejectsUnnormalized) {
    EXPECT_THROW(braid_from_params({2, 3, 0, 2}), std::invalid_argument);
    EXPECT_THROW(braid_from_params({2, 3, 3, 2}), std::invalid_argument);
    EXPECT_THROW(braid_from_params({0, 3, 0, 2}), std::invalid_argument);
}

TEST(BraidWord, TextAndJsonRoundTrip) {
    BraidWord w = braid_from_params({3, 4, 2, 3});
    EXPECT_EQ(parse_braid(w.strands, w.str()).letters, w.letters);
    EXPECT_EQ(braid_from_json(to_json(w)).letters, w.letters);
    BraidWord m = parse_braid(3, "s2 s1^-1 s2");
    EXPECT_EQ(m.writhe(), 1);
    EXPECT_THROW(parse_braid(3, "s3"), std::invalid_argument);
    EXPECT_THROW(parse_braid(3, "x1"), std::invalid_argument);
    EXPECT_THROW(parse_braid(3, "s1^2"), std::invalid_argument);
}

TEST(Normalize, StandardRules) {
    EXPECT_EQ(normalize_params(2, 3, 0, 2), (BraidParams{2, 2, 2, 1}));
    EXPECT_EQ(normalize_params(3, 2, 2, 0), (BraidParams{2, 2, 1, 2}));
    EXPECT_EQ(normalize_params(2, 2, 1, 1), (BraidParams{2, 2, 1, 1}));
    EXPECT_THROW(normalize_params(2, 2, 0, 0), std::invalid_argument);
}

TEST(Normalize, IdempotentAndPreservesKnotType) {
    int checked = 0;
    for (int w = 1; w <= 5; ++w)
        for (int t = 1; t <= 5; ++t)
            for (int b0 = 0; b0 <= w; ++b0)
                for (int b1 = 0; b1 <= t; ++b1) {
                    if (b0 == 0 && b1 == 0) continue;
                    BraidParams n;
                    try {
                        n = normalize_params(w, t, b0, b1);
                    } catch (const std::invalid_argument&) {
                        continue;
                    }
                    EXPECT_TRUE(is_normalized(n));
                    EXPECT_EQ(normalize_params(n.omega, n.t, n.b0, n.b1), n);
                    BraidWord raw = raw_word(w, t, b0, b1);
                    if (closure_components(raw) != 1) continue;
                    ASSERT_EQ(closure_components(braid_from_params(n)), 1);
                    EXPECT_EQ(burau_alexander(raw), burau_alexander(braid_from_params(n)))
                        << w << ' ' << t << ' ' << b0 << ' ' << b1;
                    ++checked;
                }
    EXPECT_GT(checked, 50);
}

TEST(Closure, Components) {
    EXPECT_EQ(closure_components(word_of(2, {1, 1})), 2);
    EXPECT_EQ(closure_components(word_of(2, {1, 1, 1})), 1);
    EXPECT_EQ(closure_components(word_of(3, {})), 3);
    EXPECT_FALSE(is_knot_valid({1, 1, 1, 1}));
}

TEST(Stats, KnownValues) {
    BraidStats f = braid_stats({6, 7, 4, 3});
    EXPECT_EQ(f.genus, 18);
    EXPECT_EQ(f.crossings, 42);
    EXPECT_EQ(f.k0, 49);
    BraidStats tr = braid_stats({1, 2, 1, 2});
    EXPECT_EQ(tr.genus, 1);
    EXPECT_EQ(tr.k0, 5);
    EXPECT_EQ(genus({2, 3, 2, 3}), 3);
    try {
        braid_stats({1, 1, 1, 1});
        FAIL() << "link accepted";
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "closure has 2 components");
    }
}

TEST(Stats, SurgeryThreshold) {
    EXPECT_EQ(lspace_surgery_range({1, 2, 1, 2}).threshold, 1);
    EXPECT_EQ(lspace_surgery_range({2, 3, 2, 3}).threshold, 5);
    EXPECT_EQ(lspace_surgery_range({6, 7, 4, 3}).threshold, 35);
    EXPECT_EQ(lspace_surgery_range({1, 2, 1, 2}).str(), "slopes p/q >= 1 give L-spaces");
}

TEST(Sweep, LetterCountAndFramingFormulas) {
    auto all = knot_sweep(10);
    EXPECT_GT(all.size(), 100u);
    for (auto& bp : all) {
        BraidWord w = braid_from_params(bp);
        BraidStats st = braid_stats(bp);
        EXPECT_EQ(int(w.letters.size()), bp.b0 + bp.b1 * bp.omega + (bp.t - bp.b1) * (bp.omega - 1)) << bp.str();
        EXPECT_EQ(int(w.letters.size()), st.crossings);
        EXPECT_EQ(w.writhe(), st.crossings);
        EXPECT_EQ(st.k0, st.crossings + bp.t);
        EXPECT_EQ(st.k0, bp.t * bp.omega + bp.b0 + bp.b1);
        EXPECT_EQ(2 * st.genus, st.crossings - w.strands + 1);
    }
}

TEST(Sweep, IsSortedNormalizedKnots) {
    auto all = knot_sweep(8);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    for (auto& bp : all) {
        EXPECT_TRUE(is_normalized(bp));
        EXPECT_LE(bp.t + bp.omega, 8);
        EXPECT_EQ(closure_components(braid_from_params(bp)), 1);
    }
}

TEST(Sweep, TorusSpecialization) {
    for (int w = 1; w <= 6; ++w)
        for (int t = 1; w + t <= 8; ++t) {
            BraidParams bp{w, t, w, t};
            BraidWord word = braid_from_params(bp);
            std::vector<int> expect;
            for (int k = 0; k <= t; ++k)
                for (int i = w; i >= 1; --i) expect.push_back(i);
            EXPECT_EQ(word.letters, word_of(w + 1, expect).letters) << bp.str();
            if (std::gcd(w + 1, t + 1) != 1) continue;
            EXPECT_EQ(burau_alexander(word), torus_alexander(w + 1, t + 1)) << bp.str();
        }
}

#include "l11/cone.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace l11;

namespace {

struct Built {
    BridgeGeometry bg;
    KnotPresentation kp;
    GeneratedCertificate gen;
};

const Built& built(const BraidParams& bp) {
    static std::map<BraidParams, Built> cache;
    auto it = cache.find(bp);
    if (it == cache.end()) {
        Built b;
        b.bg = bridge_geometry(bp);
        b.kp = build_presentation(b.bg);
        b.gen = generate_certificate(b.kp, b.bg);
        it = cache.emplace(bp, std::move(b)).first;
    }
    return it->second;
}

CheckResult check(const Built& b, const ConeCertificate& c) { return check_certificate(b.kp.pres, c, cone_base(b.kp)); }

}  // namespace

TEST(Certificate, ValidOnSpotChecks) {
    for (BraidParams bp : {BraidParams{1, 2, 1, 2}, BraidParams{2, 3, 2, 3}, BraidParams{6, 7, 4, 3}}) {
        const Built& b = built(bp);
        CheckResult r = check(b, b.gen.cert);
        EXPECT_TRUE(r.steps_ok) << bp.str() << ": " << r.reason;
        EXPECT_TRUE(r.goal_met) << bp.str();
        EXPECT_TRUE(r.valid) << bp.str();
        ASSERT_TRUE(r.goal_id.has_value());
        EXPECT_EQ(b.gen.cert.corollary_of, r.goal_id);
        EXPECT_TRUE(collision_tail_ok(b.kp, b.gen.cert)) << bp.str();
    }
}

TEST(Certificate, GSideBound) {
    const Built& b = built({2, 3, 2, 3});
    const SuffixStats& st = b.gen.stats;
    EXPECT_EQ(b.gen.g_bound, 3 + st.t_prime - st.omega_prime + 1);
    EXPECT_EQ(b.gen.g_bound, 5);
    EXPECT_EQ(b.gen.conv.str(), Convention{}.str());
}

TEST(Certificate, CorruptedExponentIsRejected) {
    const Built& b = built({2, 3, 2, 3});
    ConeCertificate bad = b.gen.cert;
    std::optional<long> target;
    for (auto& j : bad.lines)
        if (j.rule == Rule::Base || j.rule == Rule::Trans) {
            if (j.u.empty()) continue;
            j.u.letters.front().second = -j.u.letters.front().second;
            target = j.id;
            break;
        }
    ASSERT_TRUE(target.has_value());
    CheckResult r = check(b, bad);
    EXPECT_FALSE(r.valid);
    ASSERT_TRUE(r.failing_judgment.has_value());
    EXPECT_LE(*r.failing_judgment, *target + 1);
    EXPECT_FALSE(r.reason.empty());
}

TEST(Certificate, SoundButNoGoal) {
    const Built& b = built({1, 2, 1, 2});
    ConeCertificate c{b.kp.mu, b.kp.cone_base(), {}, std::nullopt};
    Judgment refl;
    refl.id = 1;
    refl.rule = Rule::Refl;
    c.lines.push_back(refl);
    CheckResult r = check(b, c);
    EXPECT_TRUE(r.steps_ok) << r.reason;
    EXPECT_FALSE(r.goal_met);
    EXPECT_FALSE(r.valid);
}

TEST(Certificate, WrongBaseIsRejected) {
    const Built& b = built({1, 2, 1, 2});
    ConeBase base = cone_base(b.kp);
    base.cone = base.cone * b.kp.mu;
    EXPECT_FALSE(check_certificate(b.kp.pres, b.gen.cert, base).valid);
}

TEST(Certificate, TextRoundTrip) {
    for (BraidParams bp : {BraidParams{1, 2, 1, 2}, BraidParams{6, 7, 4, 3}}) {
        const Built& b = built(bp);
        std::string text = b.gen.cert.text(b.kp.pres);
        ConeCertificate back = parse_certificate(text, b.kp.pres);
        EXPECT_EQ(back.text(b.kp.pres), text);
        EXPECT_TRUE(check(b, back).valid);
    }
}

TEST(Certificate, MalformedText) {
    const Built& b = built({1, 2, 1, 2});
    const Presentation& p = b.kp.pres;
    EXPECT_THROW(parse_certificate("base mu: x0 y0^-1\n1 FROB | x0 | x0 |\n", p), MalformedCertificate);
    EXPECT_THROW(parse_certificate("base mu: x0 y0^-1\n1 REFL | z9 | x0 |\n", p), std::invalid_argument);
    EXPECT_THROW(parse_certificate("base mu: x0 y0^-1\n1 ROOT 1 | x0 | x0 | two\n", p), MalformedCertificate);
    EXPECT_THROW(parse_certificate("base mu: x0 y0^-1\nx REFL | x0 | x0 |\n", p), MalformedCertificate);
    EXPECT_THROW(parse_certificate("base mu: x0 y0^-1\n1 REFL x0 x0\n", p), MalformedCertificate);
}

TEST(Certificate, ForwardPremiseIsRejected) {
    const Built& b = built({1, 2, 1, 2});
    ConeCertificate c = b.gen.cert;
    for (auto& j : c.lines)
        if (!j.premises.empty()) {
            j.premises[0] = j.id;
            break;
        }
    EXPECT_THROW(check(b, c), MalformedCertificate);
}

TEST(Certificate, GeneratedOnTheSweep) {
    auto all = knot_sweep(8);
    for (auto& bp : all) {
        const Built& b = built(bp);
        EXPECT_TRUE(check(b, b.gen.cert).valid) << bp.str();
        EXPECT_TRUE(collision_tail_ok(b.kp, b.gen.cert)) << bp.str();
        EXPECT_EQ(b.gen.g_bound, bp.t + b.gen.stats.t_prime - b.gen.stats.omega_prime + 1) << bp.str();
    }
}

TEST(Certificate, LinksAreRejected) {
    EXPECT_THROW(generate_certificate({1, 1, 1, 1}), std::invalid_argument);
    EXPECT_THROW(property_d_report({1, 1, 1, 1}), std::invalid_argument);
}

TEST(Report, SpotChecks) {
    for (BraidParams bp : {BraidParams{1, 2, 1, 2}, BraidParams{2, 3, 2, 3}, BraidParams{6, 7, 4, 3}}) {
        PropertyDReport r = property_d_report(bp);
        EXPECT_TRUE(r.part1_ok()) << r.str();
        EXPECT_TRUE(r.part2) << r.str();
        EXPECT_TRUE(r.tail_ok);
        EXPECT_NE(r.str().find("part 2 verified"), std::string::npos);
        EXPECT_NE(r.str().find("not machine-checked"), std::string::npos);
    }
}

TEST(Fuzz, MutationsAreRejectedOrHarmless) {
    std::mt19937_64 rng(20261014);
    int rejected = 0;
    for (BraidParams bp : {BraidParams{1, 2, 1, 2}, BraidParams{2, 3, 2, 3}, BraidParams{3, 4, 2, 3}}) {
        const Built& b = built(bp);
        const ConeBase base = cone_base(b.kp);
        for (int k = 0; k < 100; ++k) {
            ConeCertificate m = mutate_certificate(b.gen.cert, 4, rng);
            EXPECT_TRUE(mutation_harmless(b.kp.pres, b.gen.cert, m, base)) << bp.str() << " mutation " << k;
            try {
                rejected += !check_certificate(b.kp.pres, m, base).valid;
            } catch (const MalformedCertificate&) {
                ++rejected;
            }
        }
    }
    EXPECT_GT(rejected, 250);
}

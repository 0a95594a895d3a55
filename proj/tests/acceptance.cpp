// One pass/fail line per acceptance criterion; exit status 1 if any fails.
#include "l11/sweep.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>

using namespace l11;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<BraidParams>& sweep72() {
    static const std::vector<BraidParams> s = knot_sweep(8);
    return s;
}

std::vector<BraidParams> sweep_and_figure() {
    auto all = sweep72();
    all.push_back({6, 7, 4, 3});
    return all;
}

Combinatorial reduced_constructed(const BraidParams& bp) { return reduce(combinatorial(construct_diagram(bp))); }

int failures = 0;

// Runs one criterion; detail is filled in by the check.
void criterion(int n, const char* what, double limit_s, const std::function<bool(std::string&)>& f) {
    std::string detail;
    bool ok = false;
    auto t0 = Clock::now();
    try {
        ok = f(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && s >= limit_s) {
        ok = false;
        detail += " (over the time limit)";
    }
    if (!ok) ++failures;
    std::printf("%s  %d  %-58s %8.3fs%s  %s\n", ok ? "PASS" : "FAIL", n, what, s,
                limit_s > 0 ? (" / " + std::to_string(int(limit_s)) + "s").c_str() : "", detail.c_str());
    std::fflush(stdout);
}

}  // namespace

int main() {
    criterion(1, "braid (6,7,4,3): 42 letters, g = 18, k0 = 49", 1, [](std::string& d) {
        BraidWord w = braid_from_params({6, 7, 4, 3});
        BraidStats st = braid_stats({6, 7, 4, 3});
        d = "letters " + std::to_string(w.letters.size()) + ", g " + std::to_string(st.genus) + ", k0 " +
            std::to_string(st.k0);
        return w.letters.size() == 42 && st.crossings == 42 && st.genus == 18 && st.k0 == 49 &&
               braid_blocks({6, 7, 4, 3}) == "s6 s5 s4 s3 (s6 s5 s4 s3 s2 s1)^3 (s5 s4 s3 s2 s1)^4";
    });

    criterion(2, "Burau = Fox = diagram Alexander on the 72-case sweep", 600, [](std::string& d) {
        int agree = 0, oracle = 0;
        for (auto& bp : sweep72()) {
            Laurent b = burau_alexander(braid_from_params(bp));
            KnotPresentation kp = build_presentation(bp);
            Laurent f = fox_alexander(kp.pres, kp.deg);
            Laurent g = alexander_from_diagram(reduced_constructed(bp));
            agree += b == f && f == g;
            oracle += b == l11::testing::oracle_alexander().at(bp);
        }
        d = std::to_string(agree) + "/" + std::to_string(sweep72().size()) + " agree, " + std::to_string(oracle) +
            " match the frozen oracle";
        return sweep72().size() == 72 && agree == 72 && oracle == 72;
    });

    criterion(3, "Alexander degree = genus", 0, [](std::string& d) {
        int ok = 0;
        auto all = sweep_and_figure();
        for (auto& bp : all) ok += burau_alexander(braid_from_params(bp)).hi() == genus(bp);
        d = std::to_string(ok) + "/" + std::to_string(all.size());
        return ok == int(all.size());
    });

    criterion(4, "construct -> reduce -> check: coherent, sign +1, S^3, every step", 0, [](std::string& d) {
        int ok = 0;
        auto all = sweep_and_figure();
        for (auto& bp : all) {
            ReductionTrace tr = reduce_traced(combinatorial(construct_diagram(bp)));
            const CoherenceVerdict& v = tr.verdicts.back();
            ok += v.coherent && v.sign == 1 && ambient(tr.steps.back()).is_s3 && is_reduced(tr.steps.back()) &&
                  tr.preserved();
        }
        d = std::to_string(ok) + "/" + std::to_string(all.size());
        return ok == int(all.size());
    });

    criterion(5, "positive path found, rectangle inequality 0 violations", 0, [](std::string& d) {
        int paths = 0, pairs = 0, violations = 0;
        auto all = sweep_and_figure();
        for (auto& bp : all) {
            Combinatorial c = reduced_constructed(bp);
            PositivePath path = find_positive_path(c);
            paths += positive_path_ok(c, path);
            for (auto& r : check_rectangle_inequality(c, path, false)) {
                ++pairs;
                violations += r.l3 > r.l4 || !r.identities_hold();
            }
        }
        d = std::to_string(paths) + "/" + std::to_string(all.size()) + " paths, " + std::to_string(pairs) +
            " rectangle pairs, " + std::to_string(violations) + " violations";
        return paths == int(all.size()) && violations == 0;
    });

    criterion(6, "staircase on the sweep; figure-eight fails staircase and coherence", 0, [](std::string& d) {
        int stair = 0;
        for (auto& bp : sweep72()) stair += staircase_check(alexander_from_diagram(reduced_constructed(bp)));
        Combinatorial f8 = combinatorial(figure_eight_diagram());
        Laurent a = alexander_from_diagram(f8);
        bool f8_ok = a == parse_laurent("-t^-1 + 3 - t") && !staircase_check(a) && !check_coherence(f8).coherent;
        d = std::to_string(stair) + "/72 staircase, figure-eight " + a.str() + (f8_ok ? " rejected" : " NOT rejected");
        return stair == 72 && f8_ok;
    });

    criterion(7, "certificates validate; 1000 mutations rejected or harmless", 300, [](std::string& d) {
        auto all = sweep_and_figure();
        struct Case {
            KnotPresentation kp;
            ConeCertificate cert;
        };
        std::vector<Case> cases;
        int valid = 0;
        for (auto& bp : all) {
            BridgeGeometry bg = bridge_geometry(bp);
            KnotPresentation kp = build_presentation(bg);
            GeneratedCertificate g = generate_certificate(kp, bg);
            CheckResult r = check_certificate(kp.pres, g.cert, cone_base(kp));
            valid += r.valid && collision_tail_ok(kp, g.cert);
            cases.push_back({kp, g.cert});
        }
        std::mt19937_64 rng(1000);
        int harmless = 0, rejected = 0;
        for (int k = 0; k < 1000; ++k) {
            const Case& c = cases[std::size_t(k) % cases.size()];
            ConeCertificate m = mutate_certificate(c.cert, 4, rng);
            const ConeBase base = cone_base(c.kp);
            harmless += mutation_harmless(c.kp.pres, c.cert, m, base);
            try {
                rejected += !check_certificate(c.kp.pres, m, base).valid;
            } catch (const MalformedCertificate&) {
                ++rejected;
            }
        }
        d = std::to_string(valid) + "/" + std::to_string(all.size()) + " valid, " + std::to_string(harmless) +
            "/1000 harmless (" + std::to_string(rejected) + " rejected)";
        return valid == int(all.size()) && harmless == 1000;
    });

    criterion(8, "torus specialization matches the closed form", 0, [](std::string& d) {
        int cases = 0, ok = 0;
        for (auto& bp : sweep72()) {
            if (bp.b0 != bp.omega || bp.b1 != bp.t || std::gcd(bp.omega + 1, bp.t + 1) != 1) continue;
            ++cases;
            const int p = bp.omega + 1, q = bp.t + 1;
            Laurent want = torus_alexander(p, q);
            KnotPresentation kp = build_presentation(bp);
            ok += burau_alexander(braid_from_params(bp)) == want && fox_alexander(kp.pres, kp.deg) == want &&
                  alexander_from_diagram(reduced_constructed(bp)) == want && genus(bp) == (p - 1) * (q - 1) / 2 &&
                  braid_stats(bp).k0 == p * q - 1;
        }
        d = std::to_string(ok) + "/" + std::to_string(cases) + " torus cases";
        return cases > 0 && ok == cases;
    });

    criterion(9, "spot checks: trefoil, T(3,4), (1,1,1,1) rejected", 0, [](std::string& d) {
        BraidStats t = braid_stats({1, 2, 1, 2});
        bool tref = t.genus == 1 && t.k0 == 5 && lspace_surgery_range({1, 2, 1, 2}).threshold == 1 &&
                    burau_alexander(braid_from_params({1, 2, 1, 2})) == torus_alexander(2, 3);
        bool t34 = genus({2, 3, 2, 3}) == 3 && lspace_surgery_range({2, 3, 2, 3}).threshold == 5 &&
                   burau_alexander(braid_from_params({2, 3, 2, 3})) == torus_alexander(3, 4);
        std::string msg;
        try {
            braid_stats({1, 1, 1, 1});
        } catch (const std::invalid_argument& e) {
            msg = e.what();
        }
        bool link = msg == "closure has 2 components";
        d = std::string("trefoil ") + (tref ? "ok" : "bad") + ", T(3,4) " + (t34 ? "ok" : "bad") + ", (1,1,1,1): \"" +
            msg + "\"";
        return tref && t34 && link;
    });

    std::printf("%s\n", failures ? "SOME CRITERIA FAILED" : "all criteria passed");
    return failures ? 1 : 0;
}

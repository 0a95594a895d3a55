#pragma once

#include "coherence.hpp"
#include "cone.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace l11 {

// One row of the consistency matrix.
struct SweepRow {
    BraidParams bp;
    int genus = 0, k0 = 0;
    std::string burau, fox, diagram;
    bool routes_agree = false;
    bool genus_law = false;   // Alexander degree == genus
    bool staircase = false;
    bool coherent = false;    // construct -> reduce -> check: coherent, sign +1, S^3
    bool steps_preserve = false;
    int reduced_p = 0;
    bool path_ok = false;
    int rectangles = 0, violations = 0;
    bool certificate = false;
    bool extract_ok = false;  // extracted parameters give the same Alexander polynomial and genus
    BraidParams extracted;
    std::vector<std::string> errors;

    bool ok() const {
        return errors.empty() && routes_agree && genus_law && staircase && coherent && steps_preserve && path_ok &&
               violations == 0 && certificate && extract_ok;
    }
};

inline SweepRow sweep_row(const BraidParams& bp, bool with_certificate = true, bool with_extract = true) {
    SweepRow r;
    r.bp = bp;
    auto guard = [&](const char* what, auto&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            r.errors.push_back(std::string(what) + ": " + e.what());
        }
    };
    Laurent burau, fox, diag;
    guard("braid", [&] {
        BraidStats st = braid_stats(bp);
        r.genus = st.genus;
        r.k0 = st.k0;
        burau = burau_alexander(braid_from_params(bp));
        r.burau = burau.str();
    });
    if (!r.errors.empty()) return r;
    BridgeGeometry bg;
    KnotPresentation kp;
    guard("group", [&] {
        bg = bridge_geometry(bp);
        kp = build_presentation(bg);
        fox = fox_alexander(kp.pres, kp.deg);
        r.fox = fox.str();
    });
    Combinatorial red;
    guard("diagram", [&] {
        ReductionTrace tr = reduce_traced(combinatorial(construct_diagram(bp, bg)));
        red = tr.steps.back();
        const CoherenceVerdict& v = tr.verdicts.back();
        r.coherent = v.coherent && v.sign == 1 && ambient(red).is_s3;
        r.steps_preserve = tr.preserved();
        r.reduced_p = red.p;
        diag = alexander_from_diagram(red);
        r.diagram = diag.str();
    });
    r.routes_agree = !r.fox.empty() && !r.diagram.empty() && burau == fox && burau == diag;
    r.genus_law = burau.hi() == r.genus;
    r.staircase = staircase_check(burau);
    if (r.coherent) {
        guard("positive path", [&] {
            PositivePath path = find_positive_path(red);
            r.path_ok = positive_path_ok(red, path);
            auto checks = check_rectangle_inequality(red, path, false);
            r.rectangles = int(checks.size());
            for (auto& c : checks)
                if (c.l3 > c.l4 || !c.identities_hold()) ++r.violations;
        });
    }
    if (with_certificate)
        guard("certificate", [&] {
            GeneratedCertificate g = generate_certificate(kp, bg);
            r.certificate = check_certificate(kp.pres, g.cert, cone_base(kp)).valid;
        });
    else
        r.certificate = true;
    if (with_extract && r.coherent)
        guard("extract", [&] {
            Extraction ex = extract_braid_params(red);
            r.extracted = ex.params;
            r.extract_ok = !ex.mirrored && genus(ex.params) == r.genus &&
                           burau_alexander(braid_from_params(ex.params)) == burau;
        });
    else
        r.extract_ok = !with_extract;
    return r;
}

inline nlohmann::json to_json(const SweepRow& r) {
    nlohmann::json j;
    j["params"] = {r.bp.omega, r.bp.t, r.bp.b0, r.bp.b1};
    j["genus"] = r.genus;
    j["k0"] = r.k0;
    j["alexander"] = {{"burau", r.burau}, {"fox", r.fox}, {"diagram", r.diagram}};
    j["routes_agree"] = r.routes_agree;
    j["genus_law"] = r.genus_law;
    j["staircase"] = r.staircase;
    j["coherent"] = r.coherent;
    j["steps_preserve"] = r.steps_preserve;
    j["reduced_intersections"] = r.reduced_p;
    j["positive_path"] = r.path_ok;
    j["rectangles"] = r.rectangles;
    j["rectangle_violations"] = r.violations;
    j["certificate"] = r.certificate;
    j["extract"] = {{"ok", r.extract_ok}, {"params", {r.extracted.omega, r.extracted.t, r.extracted.b0, r.extracted.b1}}};
    j["errors"] = r.errors;
    j["ok"] = r.ok();
    return j;
}

}  // namespace l11

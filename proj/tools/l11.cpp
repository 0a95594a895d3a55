// Command-line front end: braid words, diagrams, invariants, knot groups, certificates and sweeps.

#include "l11/svg.hpp"
#include "l11/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace l11;
using nlohmann::json;

namespace {

constexpr int kInvalid = 2, kViolation = 3;

struct Violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

CurveDiagram load_diagram(const std::string& path) {
    json j;
    try {
        j = json::parse(slurp(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("bad JSON: ") + e.what());
    }
    if (j.contains("p") && !j.contains("alpha")) return from_params(param_diagram_from_json(j));
    return diagram_from_json(j);
}

BraidParams knot_params(const std::vector<int>& v) {
    BraidParams bp{v.at(0), v.at(1), v.at(2), v.at(3)};
    braid_stats(bp);  // throws with the component count for links
    return bp;
}

std::string check_text(const Combinatorial& c) {
    std::ostringstream os;
    CoherenceVerdict v = check_coherence(c);
    Ambient a = ambient(c);
    auto bigons = enumerate_bigons(c);
    os << "intersections " << c.p << '\n';
    os << "ambient " << (a.is_s3 ? "S3" : "lens space of order " + std::to_string(a.order)) << '\n';
    os << "reduced " << (is_reduced(c) ? "yes" : "no") << '\n';
    os << "bigons " << bigons.size() << '\n';
    if (v.coherent) {
        os << "coherent yes, beta orientation " << (v.beta_orientation > 0 ? "as stored" : "reversed") << ", sign "
           << (v.sign > 0 ? "+1" : "-1") << '\n';
    } else {
        os << "coherent no, witness bigons need opposite beta orientations\n";
    }
    if (a.is_s3 && is_reduced(c)) os << "alexander " << alexander_from_diagram(c).str() << '\n';
    return os.str();
}

json check_json(const Combinatorial& c) {
    CoherenceVerdict v = check_coherence(c);
    Ambient a = ambient(c);
    json j;
    j["intersections"] = c.p;
    j["ambient_order"] = a.order;
    j["s3"] = a.is_s3;
    j["reduced"] = is_reduced(c);
    j["bigons"] = enumerate_bigons(c).size();
    j["coherent"] = v.coherent;
    if (v.coherent) {
        j["beta_orientation"] = v.beta_orientation;
        j["sign"] = v.sign;
    }
    if (a.is_s3 && is_reduced(c)) j["alexander"] = alexander_from_diagram(c).str();
    return j;
}

void print_row(std::ostream& os, const SweepRow& r) {
    auto yn = [](bool b) { return b ? "ok" : "FAIL"; };
    os << std::left << std::setw(11) << r.bp.str() << " g=" << std::setw(3) << r.genus << " p=" << std::setw(4)
       << r.reduced_p << " routes " << std::setw(4) << yn(r.routes_agree) << " genus " << std::setw(4)
       << yn(r.genus_law) << " stair " << std::setw(4) << yn(r.staircase) << " coh " << std::setw(4)
       << yn(r.coherent && r.steps_preserve) << " path " << std::setw(4) << yn(r.path_ok) << " rect "
       << r.rectangles - r.violations << '/' << std::setw(4) << r.rectangles << " cert " << std::setw(4)
       << yn(r.certificate) << " extract " << yn(r.extract_ok) << '\n';
    for (auto& e : r.errors) os << "    " << e << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positive (1,1) L-space knots: braids, genus one diagrams, invariants and certificates"};
    app.require_subcommand(1);

    std::vector<int> params;
    bool as_json = false;
    std::string out_path, in_path, svg_path, cert_path;
    int max_sum = 8;
    bool no_cert = false, no_extract = false, with_curve = false;
    std::vector<int> pqrs;

    auto add_params = [&](CLI::App* sub) {
        sub->add_option("params", params, "omega t b0 b1")->expected(4)->required();
    };

    auto* braid = app.add_subcommand("braid", "braid word, genus, k0 and surgery range");
    add_params(braid);
    braid->add_flag("--json", as_json);
    braid->add_option("--svg", svg_path, "write the braid picture");

    auto* diagram = app.add_subcommand("diagram", "genus one doubly pointed diagrams");
    diagram->require_subcommand(1);
    auto* build = diagram->add_subcommand("build", "construct the diagram of a braid, or a four-parameter diagram");
    build->add_option("params", params, "omega t b0 b1")->expected(4);
    build->add_option("--pqrs", pqrs, "four-parameter diagram p q r s")->expected(4);
    build->add_option("-o,--output", out_path);
    auto* dreduce = diagram->add_subcommand("reduce", "remove empty bigons");
    dreduce->add_option("file", in_path)->required();
    dreduce->add_option("-o,--output", out_path);
    auto* dcheck = diagram->add_subcommand("check", "coherence, sign, ambient manifold");
    dcheck->add_option("file", in_path)->required();
    dcheck->add_flag("--json", as_json);
    auto* render = diagram->add_subcommand("render", "SVG picture");
    render->add_option("file", in_path)->required();
    render->add_option("-o,--output", out_path);
    render->add_flag("--curve", with_curve, "draw a closed positive curve through w and z");
    auto* dextract = diagram->add_subcommand("extract", "braid parameters of a coherent diagram");
    dextract->add_option("file", in_path)->required();
    dextract->add_flag("--json", as_json);

    auto* inv = app.add_subcommand("invariants", "Alexander polynomial by three routes");
    add_params(inv);
    inv->add_flag("--json", as_json);

    auto* group = app.add_subcommand("group", "knot group presentation");
    add_params(group);
    group->add_option("-o,--output", out_path);
    group->add_flag("--json", as_json);

    auto* certify = app.add_subcommand("certify", "generate and check the positive-cone certificate");
    add_params(certify);
    certify->add_option("-o,--output", out_path, "certificate file");
    certify->add_option("--check", cert_path, "check this certificate file instead of generating one");

    auto* sweep = app.add_subcommand("sweep", "consistency matrix over all knots with t+omega <= max");
    sweep->add_option("--max", max_sum)->check(CLI::PositiveNumber);
    sweep->add_flag("--json", as_json);
    sweep->add_flag("--no-certificates", no_cert);
    sweep->add_flag("--no-extract", no_extract);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInvalid;
    }

    try {
        if (*braid) {
            BraidParams bp = knot_params(params);
            BraidWord w = braid_from_params(bp);
            BraidStats st = braid_stats(bp);
            if (!svg_path.empty()) emit(svg_path, render_braid_svg(w));
            if (as_json) {
                json j{{"params", params},       {"braid", to_json(w)},      {"blocks", braid_blocks(bp)},
                       {"letters", w.letters.size()}, {"genus", st.genus}, {"crossings", st.crossings},
                       {"k0", st.k0},             {"surgery_threshold", st.surgery_threshold}};
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "braid    " << braid_blocks(bp) << '\n';
                std::cout << "word     " << w.str() << '\n';
                std::cout << "strands  " << w.strands << ", letters " << w.letters.size() << '\n';
                std::cout << "genus    " << st.genus << '\n';
                std::cout << "k0       " << st.k0 << '\n';
                std::cout << "surgery  " << lspace_surgery_range(bp).str() << '\n';
            }
        } else if (*diagram) {
            if (*build) {
                CurveDiagram d;
                if (!pqrs.empty()) {
                    d = from_params({pqrs[0], pqrs[1], pqrs[2], pqrs[3]});
                } else {
                    if (params.empty()) throw std::invalid_argument("give omega t b0 b1 or --pqrs");
                    d = construct_diagram(knot_params(params));
                }
                emit(out_path, to_json(d).dump() + "\n");
            } else if (*dreduce) {
                emit(out_path, to_json(reduce(load_diagram(in_path))).dump() + "\n");
            } else if (*dcheck) {
                Combinatorial c = combinatorial(load_diagram(in_path));
                if (as_json)
                    std::cout << check_json(c).dump(2) << '\n';
                else
                    std::cout << check_text(c);
            } else if (*render) {
                CurveDiagram d = load_diagram(in_path);
                if (with_curve) {
                    PositiveCurve pc = close_positive_curve(d);
                    emit(out_path, render_svg(pc.diagram, pc.gamma));
                } else {
                    emit(out_path, render_svg(d));
                }
            } else if (*dextract) {
                Extraction ex = extract_braid_params(load_diagram(in_path));
                if (as_json) {
                    json j{{"params", {ex.params.omega, ex.params.t, ex.params.b0, ex.params.b1}},
                           {"mirrored", ex.mirrored},
                           {"gamma", ex.basis.gamma},
                           {"alpha_pairing", ex.basis.alpha[1]},
                           {"beta_pairing", ex.basis.beta[1]}};
                    std::cout << j.dump(2) << '\n';
                } else {
                    std::cout << "params   " << ex.params.str() << (ex.mirrored ? " (mirror)" : "") << '\n';
                    std::cout << "gamma    class (" << ex.basis.gamma[0] << "," << ex.basis.gamma[1]
                              << "), pairings alpha " << ex.basis.alpha[1] << " beta " << ex.basis.beta[1] << '\n';
                }
            }
        } else if (*inv) {
            BraidParams bp = knot_params(params);
            SweepRow r = sweep_row(bp, false, false);
            if (as_json) {
                json j = to_json(r)["alexander"];
                j["polynomial"] = to_json(parse_laurent(r.burau));
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "route    alexander polynomial\n";
                std::cout << "burau    " << r.burau << '\n';
                std::cout << "fox      " << r.fox << '\n';
                std::cout << "diagram  " << r.diagram << '\n';
                std::cout << "genus " << r.genus << ", degree " << (r.genus_law ? "matches" : "DIFFERS")
                          << ", staircase " << (r.staircase ? "yes" : "no") << '\n';
            }
            for (auto& e : r.errors) std::cerr << e << '\n';
            if (!r.routes_agree || !r.genus_law || !r.errors.empty()) throw Violation("routes disagree");
        } else if (*group) {
            KnotPresentation kp = build_presentation(knot_params(params));
            auto checks = structural_checks(kp);
            emit(out_path, as_json ? to_json(kp.pres).dump(2) + "\n" : kp.str());
            if (!all_ok(checks)) {
                for (auto& c : checks)
                    if (!c.ok) std::cerr << "FAIL " << c.name << '\n';
                throw Violation("presentation fails its structural checks");
            }
        } else if (*certify) {
            BraidParams bp = knot_params(params);
            BridgeGeometry bg = bridge_geometry(bp);
            KnotPresentation kp = build_presentation(bg);
            if (!cert_path.empty()) {
                ConeCertificate c = parse_certificate(slurp(cert_path), kp.pres);
                CheckResult r = check_certificate(kp.pres, c, cone_base(kp));
                std::cout << (r.valid ? "valid" : "invalid");
                if (!r.valid && r.failing_judgment) std::cout << ", judgment " << *r.failing_judgment;
                if (!r.reason.empty()) std::cout << ": " << r.reason;
                std::cout << '\n';
                if (!r.steps_ok) return kInvalid;
                if (!r.goal_met) std::cout << "goal 1 >= mu not reached\n";
                return r.valid ? 0 : kInvalid;
            }
            GeneratedCertificate g = generate_certificate(kp, bg);
            if (!out_path.empty()) emit(out_path, g.cert.text(kp.pres));
            CheckResult r = check_certificate(kp.pres, g.cert, cone_base(kp));
            std::cout << property_d_report(kp, bg, g.cert, g.conv.str()).str();
            if (!r.valid) throw Violation("generated certificate rejected");
        } else if (*sweep) {
            std::vector<BraidParams> all = knot_sweep(max_sum);
            bool ok = true;
            json rows = json::array();
            for (auto& bp : all) {
                SweepRow r = sweep_row(bp, !no_cert, !no_extract);
                ok = ok && r.ok();
                if (as_json)
                    rows.push_back(to_json(r));
                else
                    print_row(std::cout, r);
            }
            if (as_json)
                std::cout << json{{"max", max_sum}, {"cases", all.size()}, {"ok", ok}, {"rows", rows}}.dump(2) << '\n';
            else
                std::cout << all.size() << " cases, " << (ok ? "all consistent" : "INCONSISTENT") << '\n';
            if (!ok) return kViolation;
        }
    } catch (const Violation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kViolation;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kViolation;
    } catch (const GenerationFailed& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kViolation;
    } catch (const ExtractError& e) {
        std::cerr << e.what() << '\n';
        return e.kind == ExtractError::SearchExhausted ? kViolation : kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kInvalid;
    } catch (const NotFound& e) {
        std::cerr << e.what() << '\n';
        return kInvalid;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kViolation;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kInvalid;
    }
    return 0;
}

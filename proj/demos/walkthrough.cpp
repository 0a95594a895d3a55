// From braid parameters to a certified positive cone, for one knot.
#include "l11/coherence.hpp"
#include "l11/cone.hpp"

#include <cstdio>
#include <cstdlib>

using namespace l11;

int main(int argc, char** argv) {
    BraidParams bp{2, 3, 2, 3};
    if (argc == 5) bp = {std::atoi(argv[1]), std::atoi(argv[2]), std::atoi(argv[3]), std::atoi(argv[4])};
    BraidStats st = braid_stats(bp);
    std::printf("%s: %s\n", bp.str().c_str(), braid_blocks(bp).c_str());
    std::printf("genus %d, k0 %d, %s\n", st.genus, st.k0, lspace_surgery_range(bp).str().c_str());

    Combinatorial c = reduce(combinatorial(construct_diagram(bp)));
    CoherenceVerdict v = check_coherence(c);
    std::printf("diagram: %d intersections, coherent %s, sign %+d\n", c.p, v.coherent ? "yes" : "no", v.sign);
    std::printf("alexander %s\n", alexander_from_diagram(c).str().c_str());

    PositiveCurve pc = close_positive_curve(c);
    std::printf("positive curve: pairings %d with alpha, %d with beta\n", pc.alpha_pairing, pc.beta_pairing);

    GeneratedCertificate g = generate_certificate(bp);
    KnotPresentation kp = build_presentation(bp);
    CheckResult r = check_certificate(kp.pres, g.cert, cone_base(kp));
    std::printf("certificate: %zu judgments, %s\n", g.cert.lines.size(), r.valid ? "valid" : r.reason.c_str());
    return r.valid ? 0 : 1;
}

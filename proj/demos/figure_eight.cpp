// The figure-eight knot has a genus one diagram, but no coherent one.
#include "l11/coherence.hpp"

#include <cstdio>

using namespace l11;

int main() {
    Combinatorial c = combinatorial(figure_eight_diagram());
    Laurent a = alexander_from_diagram(c);
    CoherenceVerdict v = check_coherence(c);
    std::printf("alexander %s, staircase %s\n", a.str().c_str(), staircase_check(a) ? "yes" : "no");
    std::printf("coherent %s\n", v.coherent ? "yes" : "no");
    for (auto& b : v.witness) {
        std::printf("  bigon on faces");
        for (int f : b.faces) std::printf(" %d", f);
        std::printf(", coherent only with beta %s\n", b.coherent_under.at(0) > 0 ? "as stored" : "reversed");
    }
    try {
        find_positive_path(c);
    } catch (const NotFound& e) {
        std::printf("positive path: %s\n", e.what());
    }
    return v.coherent ? 1 : 0;
}

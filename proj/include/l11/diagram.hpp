#pragma once

#include "geometry.hpp"
#include "laurent.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace l11 {

struct InvalidDiagram : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Closed polyline given by a lift: pts.back() - pts.front() is an integer vector (the homology class).
struct Curve {
    std::vector<QPt> pts;

    std::size_t segs() const { return pts.size() - 1; }
    QPt cls() const { return pts.back() - pts.front(); }
};

struct CurveDiagram {
    Curve alpha, beta;
    QPt w, z;
};

// side 0: left of alpha (above, for alpha pointing east); side 1: right. gap g runs from T_g to T_{g+1}.
struct Slot {
    int side = 0, gap = 0;
    friend bool operator==(const Slot&, const Slot&) = default;
};

// Combinatorial (1,1)-diagram: alpha positions 0..p-1, beta visits them in the order beta[],
// eps[i] is the sign of (alpha', beta') at T_i.
struct Combinatorial {
    int p = 0;
    std::vector<int> beta;
    std::vector<int> eps;
    Slot w, z;

    int sum_eps() const { return std::accumulate(eps.begin(), eps.end(), 0); }
    std::vector<int> beta_pos() const {
        std::vector<int> k(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) k[std::size_t(beta[std::size_t(j)])] = j;
        return k;
    }
    friend bool operator==(const Combinatorial&, const Combinatorial&) = default;
};

struct ParamDiagram {
    int p = 1, q = 0, r = 0, s = 0;
};

enum class Strand { BandUp, BandDown, RainbowLeft, RainbowRight };

inline const char* strand_name(Strand s) {
    switch (s) {
        case Strand::BandUp: return "band-up";
        case Strand::BandDown: return "band-down";
        case Strand::RainbowLeft: return "rainbow-left";
        default: return "rainbow-right";
    }
}

struct IntersectionData {
    struct AlphaEntry {
        int id, eps;
    };
    struct BetaEntry {
        int id;
        Strand leaving;  // strand of beta that starts at this point
    };
    std::vector<AlphaEntry> along_alpha;
    std::vector<BetaEntry> along_beta;
    int sum_eps = 0;
};

// ---- faces ----

// Darts: edge e < p is the alpha gap e, edge p + k the beta segment from beta[k] to beta[k+1];
// dart 2e is forward, 2e+1 backward.
struct Faces {
    int count = 0;
    std::vector<int> of_dart;
    std::vector<std::vector<int>> darts;
    std::vector<std::array<int, 4>> ccw;  // outgoing darts at each vertex, counterclockwise from alpha forward
    std::vector<int> tail, head;

    int left(int edge) const { return of_dart[std::size_t(2 * edge)]; }
    int right(int edge) const { return of_dart[std::size_t(2 * edge + 1)]; }
    int slot(const Slot& s) const { return of_dart[std::size_t(2 * s.gap + s.side)]; }
    int quadrant(int v, int j) const { return of_dart[std::size_t(ccw[std::size_t(v)][std::size_t(j)])]; }
};

inline void check_combinatorial(const Combinatorial& c) {
    if (c.p < 1) throw InvalidDiagram("diagram needs at least one intersection");
    if (int(c.beta.size()) != c.p || int(c.eps.size()) != c.p) throw InvalidDiagram("diagram arrays have wrong size");
    std::vector<bool> seen(std::size_t(c.p), false);
    for (int b : c.beta) {
        if (b < 0 || b >= c.p || seen[std::size_t(b)]) throw InvalidDiagram("beta order is not a permutation");
        seen[std::size_t(b)] = true;
    }
    for (int e : c.eps)
        if (e != 1 && e != -1) throw InvalidDiagram("intersection sign must be +-1");
    for (const Slot& s : {c.w, c.z})
        if (s.side < 0 || s.side > 1 || s.gap < 0 || s.gap >= c.p) throw InvalidDiagram("basepoint slot out of range");
    if (c.sum_eps() == 0) throw InvalidDiagram("alpha.beta = 0");
}

inline Faces faces(const Combinatorial& c) {
    const int p = c.p;
    Faces F;
    const std::size_t nd = std::size_t(4 * p);
    F.tail.assign(nd, 0);
    F.head.assign(nd, 0);
    for (int g = 0; g < p; ++g) {
        F.tail[std::size_t(2 * g)] = g;
        F.head[std::size_t(2 * g)] = (g + 1) % p;
        F.tail[std::size_t(2 * g + 1)] = (g + 1) % p;
        F.head[std::size_t(2 * g + 1)] = g;
    }
    for (int k = 0; k < p; ++k) {
        int e = p + k, u = c.beta[std::size_t(k)], v = c.beta[std::size_t((k + 1) % p)];
        F.tail[std::size_t(2 * e)] = u;
        F.head[std::size_t(2 * e)] = v;
        F.tail[std::size_t(2 * e + 1)] = v;
        F.head[std::size_t(2 * e + 1)] = u;
    }
    auto kpos = c.beta_pos();
    F.ccw.resize(std::size_t(p));
    for (int i = 0; i < p; ++i) {
        int af = 2 * i, ab = 2 * ((i - 1 + p) % p) + 1;
        int k = kpos[std::size_t(i)];
        int bf = 2 * (p + k), bb = 2 * (p + (k - 1 + p) % p) + 1;
        if (c.eps[std::size_t(i)] > 0)
            F.ccw[std::size_t(i)] = {af, bf, ab, bb};
        else
            F.ccw[std::size_t(i)] = {af, bb, ab, bf};
    }
    auto next = [&](int d) {
        int v = F.head[std::size_t(d)], r = d ^ 1;
        auto& o = F.ccw[std::size_t(v)];
        for (int j = 0; j < 4; ++j)
            if (o[std::size_t(j)] == r) return o[std::size_t((j + 3) % 4)];
        throw std::logic_error("dart not found at its head");
    };
    F.of_dart.assign(nd, -1);
    for (std::size_t d0 = 0; d0 < nd; ++d0) {
        if (F.of_dart[d0] >= 0) continue;
        std::vector<int> cyc;
        int d = int(d0);
        do {
            F.of_dart[std::size_t(d)] = F.count;
            cyc.push_back(d);
            d = next(d);
        } while (d != int(d0));
        F.darts.push_back(cyc);
        ++F.count;
    }
    return F;
}

namespace detail {

// Solves c[left(e)] - c[right(e)] = coef[e] over faces; nullopt if inconsistent. Normalized to min 0.
inline std::optional<std::vector<long>> face_potential(const Faces& F, int nedges, const std::vector<long>& coef) {
    std::vector<std::vector<std::pair<int, long>>> adj(std::size_t(F.count));  // (neighbour, c[nb] - c[f])
    for (int e = 0; e < nedges; ++e) {
        int L = F.left(e), R = F.right(e);
        adj[std::size_t(R)].push_back({L, coef[std::size_t(e)]});
        adj[std::size_t(L)].push_back({R, -coef[std::size_t(e)]});
    }
    std::vector<long> c(std::size_t(F.count), 0);
    std::vector<bool> seen(std::size_t(F.count), false);
    std::deque<int> qu{0};
    seen[0] = true;
    while (!qu.empty()) {
        int f = qu.front();
        qu.pop_front();
        for (auto [nb, d] : adj[std::size_t(f)]) {
            long want = c[std::size_t(f)] + d;
            if (!seen[std::size_t(nb)]) {
                seen[std::size_t(nb)] = true;
                c[std::size_t(nb)] = want;
                qu.push_back(nb);
            } else if (c[std::size_t(nb)] != want) {
                return std::nullopt;
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return std::nullopt;
    long m = *std::min_element(c.begin(), c.end());
    for (auto& v : c) v -= m;
    return c;
}

inline int region_euler(const Faces& F, int p, const std::vector<bool>& in) {
    int Fc = 0, E = 0, V = 0;
    for (int f = 0; f < F.count; ++f) Fc += in[std::size_t(f)];
    for (int e = 0; e < 2 * p; ++e) E += (in[std::size_t(F.left(e))] || in[std::size_t(F.right(e))]);
    for (int v = 0; v < p; ++v) {
        bool any = false;
        for (int j = 0; j < 4; ++j) any = any || in[std::size_t(F.quadrant(v, j))];
        V += any;
    }
    return V - E + Fc;
}

inline int quadrants_in(const Faces& F, int v, const std::vector<bool>& in) {
    int n = 0;
    for (int j = 0; j < 4; ++j) n += in[std::size_t(F.quadrant(v, j))];
    return n;
}

}  // namespace detail

// ---- bigons ----

struct Bigon {
    int x = 0, y = 0;    // beta arc runs forward from T_x (beta index k1) to T_y (beta index k2)
    int k1 = 0, k2 = 0;
    int tau = 1;         // +1: alpha arc runs forward from T_y to T_x; -1: backward from T_y to T_x
    std::vector<int> faces;
    bool has_w = false, has_z = false;
    std::vector<int> coherent_under;  // beta orientations (+1 as stored, -1 reversed) giving a coherent boundary

    bool empty() const { return !has_w && !has_z; }
    // alpha gaps of the alpha arc, in alpha order
    std::vector<int> alpha_gaps(int p) const {
        std::vector<int> g;
        int from = tau > 0 ? y : x, to = tau > 0 ? x : y;
        for (int i = from; i != to; i = (i + 1) % p) g.push_back(i);
        return g;
    }
    std::vector<int> beta_segments(int p) const {
        std::vector<int> s;
        for (int k = k1; k != k2; k = (k + 1) % p) s.push_back(k);
        return s;
    }
};

inline std::vector<Bigon> enumerate_bigons(const Combinatorial& c) {
    check_combinatorial(c);
    const int p = c.p;
    const Faces F = faces(c);
    const int fw = F.slot(c.w), fz = F.slot(c.z);
    std::vector<Bigon> out;
    for (int k1 = 0; k1 < p; ++k1)
        for (int k2 = 0; k2 < p; ++k2) {
            if (k1 == k2) continue;
            const int x = c.beta[std::size_t(k1)], y = c.beta[std::size_t(k2)];
            std::vector<bool> on_b(std::size_t(p), false);
            for (int k = (k1 + 1) % p; k != k2; k = (k + 1) % p) on_b[std::size_t(c.beta[std::size_t(k)])] = true;
            for (int tau : {1, -1}) {
                Bigon b;
                b.x = x, b.y = y, b.k1 = k1, b.k2 = k2, b.tau = tau;
                auto gaps = b.alpha_gaps(p);
                bool simple = true;
                for (std::size_t m = 1; m < gaps.size(); ++m)
                    if (on_b[std::size_t(gaps[m])]) simple = false;
                if (!simple) continue;
                std::vector<long> coef(std::size_t(2 * p), 0);
                for (int g : gaps) coef[std::size_t(g)] = tau;
                for (int k : b.beta_segments(p)) coef[std::size_t(p + k)] = 1;
                auto pot = detail::face_potential(F, 2 * p, coef);
                if (!pot) continue;
                long mx = *std::max_element(pot->begin(), pot->end());
                if (mx != 1) continue;
                std::vector<bool> in(std::size_t(F.count));
                for (int f = 0; f < F.count; ++f) in[std::size_t(f)] = (*pot)[std::size_t(f)] == 1;
                if (detail::region_euler(F, p, in) != 1) {
                    in.flip();
                    if (detail::region_euler(F, p, in) != 1) continue;
                }
                if (detail::quadrants_in(F, x, in) != 1 || detail::quadrants_in(F, y, in) != 1) continue;
                for (int f = 0; f < F.count; ++f)
                    if (in[std::size_t(f)]) b.faces.push_back(f);
                b.has_w = in[std::size_t(fw)];
                b.has_z = in[std::size_t(fz)];
                b.coherent_under = {tau};
                out.push_back(b);
            }
        }
    return out;
}

inline bool is_reduced(const Combinatorial& c) {
    for (auto& b : enumerate_bigons(c))
        if (b.empty()) return false;
    return true;
}

// Same diagram with beta traversed the other way.
inline Combinatorial reverse_beta(const Combinatorial& c) {
    Combinatorial r = c;
    std::reverse(r.beta.begin(), r.beta.end());
    for (auto& e : r.eps) e = -e;
    return r;
}

// ---- reduction ----

namespace detail {

struct Removal {
    int gap, side;
};

inline std::optional<Removal> empty_two_gon(const Combinatorial& c, const Faces& F) {
    const int fw = F.slot(c.w), fz = F.slot(c.z);
    for (int g = 0; g < c.p; ++g)
        for (int side = 0; side < 2; ++side) {
            int f = F.slot({side, g});
            if (f == fw || f == fz || F.darts[std::size_t(f)].size() != 2) continue;
            return Removal{g, side};
        }
    return std::nullopt;
}

// Isotopes beta across the empty 2-gon face on the given side of gap g, removing T_g and T_{g+1}.
inline Combinatorial remove_two_gon(const Combinatorial& c, const Faces& F, Removal rm) {
    const int p = c.p, g = rm.gap;
    if (p < 3) throw std::logic_error("cannot remove a bigon from a diagram with fewer than 3 points");
    const int g1 = (g + 1) % p;
    std::vector<int> renum(std::size_t(p), -1);
    int n = 0;
    for (int i = 0; i < p; ++i)
        if (i != g && i != g1) renum[std::size_t(i)] = n++;
    Combinatorial r;
    r.p = p - 2;
    for (int i = 0; i < p; ++i)
        if (renum[std::size_t(i)] >= 0) r.eps.push_back(c.eps[std::size_t(i)]);
    for (int b : c.beta)
        if (renum[std::size_t(b)] >= 0) r.beta.push_back(renum[std::size_t(b)]);
    const int merged = renum[std::size_t((g - 1 + p) % p)];
    auto map_gap = [&](int h) {
        if (h == (g - 1 + p) % p || h == g1) return merged;
        return renum[std::size_t(h)];
    };
    auto map_slot = [&](const Slot& s) {
        int f = F.slot(s);
        if (s.gap != g) return Slot{s.side, map_gap(s.gap)};
        for (int h = 0; h < p; ++h)
            for (int side = 0; side < 2; ++side)
                if (h != g && F.slot({side, h}) == f) return Slot{side, map_gap(h)};
        throw std::logic_error("basepoint face lost during reduction");
    };
    r.w = map_slot(c.w);
    r.z = map_slot(c.z);
    return r;
}

}  // namespace detail

// Every intermediate diagram of the reduction, starting with c itself.
inline std::vector<Combinatorial> reduction_steps(const Combinatorial& c) {
    check_combinatorial(c);
    std::vector<Combinatorial> steps{c};
    while (true) {
        const Combinatorial& cur = steps.back();
        Faces F = faces(cur);
        auto rm = detail::empty_two_gon(cur, F);
        if (!rm) break;
        steps.push_back(detail::remove_two_gon(cur, F, *rm));
    }
    if (!is_reduced(steps.back())) throw std::logic_error("empty bigon left without an empty 2-gon face");
    return steps;
}

inline Combinatorial reduce(const Combinatorial& c) { return reduction_steps(c).back(); }

// ---- Alexander grading ----

namespace detail {

struct Affine {
    Q c, a, b;  // c + a*m_alpha + b*m_beta
    Affine operator+(const Affine& o) const { return {c + o.c, a + o.a, b + o.b}; }
    Affine operator-(const Affine& o) const { return {c - o.c, a - o.a, b - o.b}; }
    bool zero() const { return c == 0 && a == 0 && b == 0; }
};

// n_z - n_w of a domain from T_x to T_y: boundary alpha-path x->y plus beta-path y->x plus periodic correction.
inline Q grading_difference(const Combinatorial& cd, const Faces& F, int x, int y) {
    const int p = cd.p;
    std::vector<Affine> coef(std::size_t(2 * p));
    for (int g = 0; g < p; ++g) coef[std::size_t(g)] = {0, 1, 0};
    for (int k = 0; k < p; ++k) coef[std::size_t(p + k)] = {0, 0, 1};
    for (int i = x; i != y; i = (i + 1) % p) coef[std::size_t(i)].c += 1;
    auto kpos = cd.beta_pos();
    for (int k = kpos[std::size_t(y)]; k != kpos[std::size_t(x)]; k = (k + 1) % p) coef[std::size_t(p + k)].c += 1;
    std::vector<std::vector<std::pair<int, int>>> adj(std::size_t(F.count));  // (nb, edge * 2 + (nb is left))
    for (int e = 0; e < 2 * p; ++e) {
        int L = F.left(e), R = F.right(e);
        adj[std::size_t(R)].push_back({L, 2 * e + 1});
        adj[std::size_t(L)].push_back({R, 2 * e});
    }
    std::vector<Affine> pot(std::size_t(F.count));
    std::vector<bool> seen(std::size_t(F.count), false);
    std::vector<Affine> cons;
    std::deque<int> qu{0};
    seen[0] = true;
    while (!qu.empty()) {
        int f = qu.front();
        qu.pop_front();
        for (auto [nb, code] : adj[std::size_t(f)]) {
            const Affine& k = coef[std::size_t(code / 2)];
            Affine want = (code & 1) ? pot[std::size_t(f)] + k : pot[std::size_t(f)] - k;
            if (!seen[std::size_t(nb)]) {
                seen[std::size_t(nb)] = true;
                pot[std::size_t(nb)] = want;
                qu.push_back(nb);
            } else {
                Affine d = pot[std::size_t(nb)] - want;
                if (!d.zero()) cons.push_back(d);
            }
        }
    }
    // solve the constraints for (m_alpha, m_beta)
    Q ma = 0, mb = 0;
    bool have = false;
    for (std::size_t i = 0; i < cons.size() && !have; ++i)
        for (std::size_t j = i + 1; j < cons.size() && !have; ++j) {
            Q det = cons[i].a * cons[j].b - cons[i].b * cons[j].a;
            if (det == 0) continue;
            ma = (-cons[i].c * cons[j].b + cons[i].b * cons[j].c) / det;
            mb = (-cons[i].a * cons[j].c + cons[i].c * cons[j].a) / det;
            have = true;
        }
    if (!have) {
        for (auto& k : cons) {
            if (k.a != 0) {
                ma = -k.c / k.a;
                have = true;
                break;
            }
            if (k.b != 0) {
                mb = -k.c / k.b;
                have = true;
                break;
            }
        }
    }
    for (auto& k : cons)
        if (k.c + k.a * ma + k.b * mb != 0) throw InvalidDiagram("no domain connects the generators");
    auto val = [&](int f) -> Q {
        const Affine& v = pot[std::size_t(f)];
        return v.c + v.a * ma + v.b * mb;
    };
    return val(F.slot(cd.z)) - val(F.slot(cd.w));
}

inline Laurent alexander_unchecked(const Combinatorial& c) {
    Faces F = faces(c);
    Laurent d;
    for (int i = 0; i < c.p; ++i) {
        Q a = grading_difference(c, F, i, 0);
        if (a.get_den() != 1) throw InvalidDiagram("fractional Alexander grading");
        d += Laurent::monomial(a.get_num().get_si(), c.eps[std::size_t(i)]);
    }
    return alexander_normalize(d);
}

}  // namespace detail

inline Laurent alexander_from_diagram(const Combinatorial& c) {
    check_combinatorial(c);
    if (std::abs(c.sum_eps()) != 1) throw InvalidDiagram("diagram is not of the three-sphere");
    if (!is_reduced(c)) throw InvalidDiagram("diagram is not reduced");
    return detail::alexander_unchecked(c);
}

// ---- realization ----

namespace detail {

inline Strand strand_kind(int e_from, int e_to) {
    if (e_from > 0) return e_to > 0 ? Strand::BandUp : Strand::RainbowLeft;
    return e_to < 0 ? Strand::BandDown : Strand::RainbowRight;
}

}  // namespace detail

inline IntersectionData intersection_data(const Combinatorial& c) {
    IntersectionData d;
    for (int i = 0; i < c.p; ++i) d.along_alpha.push_back({i, c.eps[std::size_t(i)]});
    for (int k = 0; k < c.p; ++k) {
        int i = c.beta[std::size_t(k)], j = c.beta[std::size_t((k + 1) % c.p)];
        d.along_beta.push_back({i, detail::strand_kind(c.eps[std::size_t(i)], c.eps[std::size_t(j)])});
    }
    d.sum_eps = c.sum_eps();
    return d;
}

// Canonical picture: alpha is the segment (0,0)->(1,0), T_i sits at x = (i+1/2)/p, rainbows are boxes
// hugging alpha, bands cross the annulus between heights 1/3 and 2/3.
inline CurveDiagram realize(const Combinatorial& c) {
    check_combinatorial(c);
    const int p = c.p;
    auto X = [&](int i) { return qq(2 * i + 1, 2 * p); };
    struct Seg {
        int i, j;
        Strand kind;
    };
    std::vector<Seg> seg;
    std::vector<int> bottom_band(std::size_t(p), 0), top_band(std::size_t(p), 0);
    for (int k = 0; k < p; ++k) {
        int i = c.beta[std::size_t(k)], j = c.beta[std::size_t((k + 1) % p)];
        Strand s = detail::strand_kind(c.eps[std::size_t(i)], c.eps[std::size_t(j)]);
        seg.push_back({i, j, s});
        if (s == Strand::BandUp) bottom_band[std::size_t(i)] = top_band[std::size_t(j)] = 1;
        if (s == Strand::BandDown) top_band[std::size_t(i)] = bottom_band[std::size_t(j)] = 1;
    }
    // rainbow covers: (start, len) in alpha order, and the direction from i
    struct Cover {
        int start, len, dir, depth = 1;
        bool top;
    };
    std::map<int, Cover> cover;  // keyed by beta segment index
    for (int k = 0; k < p; ++k) {
        const Seg& s = seg[std::size_t(k)];
        if (s.kind == Strand::BandUp || s.kind == Strand::BandDown) continue;
        const bool top = s.kind == Strand::RainbowRight;
        const auto& feet = top ? top_band : bottom_band;
        auto clear = [&](int from, int to) {
            for (int m = (from + 1) % p; m != to; m = (m + 1) % p)
                if (feet[std::size_t(m)]) return false;
            return true;
        };
        if (clear(s.i, s.j))
            cover[k] = {s.i, (s.j - s.i + p) % p, 1, 1, top};
        else if (clear(s.j, s.i))
            cover[k] = {s.j, (s.i - s.j + p) % p, -1, 1, top};
        else
            throw InvalidDiagram("rainbow encloses a band foot");
    }
    std::vector<int> order;
    for (auto& [k, cv] : cover) order.push_back(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return cover[a].len < cover[b].len; });
    int D = 0;
    for (int a : order) {
        Cover& A = cover[a];
        for (int b : order) {
            const Cover& B = cover[b];
            if (b == a || B.top != A.top || B.len >= A.len) continue;
            if ((B.start - A.start + p) % p + B.len <= A.len) A.depth = std::max(A.depth, B.depth + 1);
        }
        D = std::max(D, A.depth);
    }
    auto height = [&](int depth) { return qq(depth, 3 * (D + 1)); };
    // bands: top lifts monotone in the order of bottom feet
    struct Band {
        int bottom, top;
        Q lift;
    };
    std::vector<Band> bands;
    for (auto& s : seg) {
        if (s.kind == Strand::BandUp) bands.push_back({s.i, s.j, 0});
        if (s.kind == Strand::BandDown) bands.push_back({s.j, s.i, 0});
    }
    std::sort(bands.begin(), bands.end(), [](auto& a, auto& b) { return a.bottom < b.bottom; });
    if (bands.empty()) throw InvalidDiagram("diagram has no band");
    {
        Q first = X(bands[0].top) + qfloor(X(bands[0].bottom) - X(bands[0].top) + Q(1, 2));
        bands[0].lift = first;
        for (std::size_t m = 1; m < bands.size(); ++m) {
            Q l = X(bands[m].top) + qfloor(bands[m - 1].lift - X(bands[m].top)) + 1;
            bands[m].lift = l;
        }
        if (bands.back().lift >= first + 1) throw InvalidDiagram("bands cross");
    }
    auto band_of = [&](int bottom) -> const Band& {
        for (auto& b : bands)
            if (b.bottom == bottom) return b;
        throw std::logic_error("band not found");
    };
    std::vector<QPt> pts;
    QPt off{0, 0};
    const Q third = qq(1, 3), two_thirds = qq(2, 3);
    for (int k = 0; k < p; ++k) {
        const Seg& s = seg[std::size_t(k)];
        switch (s.kind) {
            case Strand::BandUp: {
                const Band& b = band_of(s.i);
                pts.push_back(off + QPt{X(s.i), third});
                pts.push_back(off + QPt{b.lift, two_thirds});
                off = off + QPt{b.lift - X(s.j), 1};
                break;
            }
            case Strand::BandDown: {
                const Band& b = band_of(s.j);
                QPt sh{X(s.i) - b.lift, -1};
                pts.push_back(off + sh + QPt{b.lift, two_thirds});
                pts.push_back(off + sh + QPt{X(s.j), third});
                off = off + sh;
                break;
            }
            default: {
                const Cover& cv = cover[k];
                Q h = height(cv.depth);
                if (s.kind == Strand::RainbowRight) h = -h;
                Q xj = X(s.i) + qq(cv.dir * cv.len, p);
                pts.push_back(off + QPt{X(s.i), h});
                pts.push_back(off + QPt{xj, h});
                off = off + QPt{xj - X(s.j), 0};
                break;
            }
        }
    }
    // start just before T_{beta[0]}
    CurveDiagram d;
    d.beta.pts.push_back(pts.back() - off);
    for (auto& q : pts) d.beta.pts.push_back(q);
    d.alpha.pts = {{0, 0}, {1, 0}};
    const Q eta = qq(1, 6 * (D + 2));
    auto place = [&](const Slot& s) {
        Q mid = qfrac(qq(s.gap + 1, p));
        return QPt{mid, s.side == 0 ? eta : 1 - eta};
    };
    d.w = place(c.w);
    d.z = place(c.z);
    return d;
}

// ---- geometric analysis ----

namespace detail {

inline std::pair<long, long> lattice_range(const Q& lo_a, const Q& hi_a, const Q& lo_b, const Q& hi_b) {
    // integers v with [lo_b + v, hi_b + v] meeting [lo_a, hi_a]
    return {qceil(lo_a - hi_b).get_num().get_si(), qfloor(hi_a - lo_b).get_num().get_si()};
}

template <class F>
void for_translates(const QPt& a0, const QPt& a1, const QPt& b0, const QPt& b1, F&& f) {
    auto [x0, x1] = lattice_range(std::min(a0.x, a1.x), std::max(a0.x, a1.x), std::min(b0.x, b1.x), std::max(b0.x, b1.x));
    auto [y0, y1] = lattice_range(std::min(a0.y, a1.y), std::max(a0.y, a1.y), std::min(b0.y, b1.y), std::max(b0.y, b1.y));
    for (long vx = x0; vx <= x1; ++vx)
        for (long vy = y0; vy <= y1; ++vy) f(QPt{Q(vx), Q(vy)});
}

inline bool integral(const QPt& v) { return v.x.get_den() == 1 && v.y.get_den() == 1; }

inline void check_curve(const Curve& c, const char* name) {
    const std::string nm = name;
    if (c.pts.size() < 2) throw InvalidDiagram(nm + " needs at least one segment");
    QPt cl = c.cls();
    if (!integral(cl)) throw InvalidDiagram(nm + " does not close up modulo the lattice");
    mpz_class g = gcd(cl.x.get_num(), cl.y.get_num());
    if (g != 1) throw InvalidDiagram(nm + " homology class is not primitive");
    const std::size_t n = c.segs();
    for (std::size_t i = 0; i < n; ++i)
        if (c.pts[i] == c.pts[i + 1]) throw InvalidDiagram(nm + " has a degenerate segment");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const QPt &a0 = c.pts[i], &a1 = c.pts[i + 1], &b0 = c.pts[j], &b1 = c.pts[j + 1];
            for_translates(a0, a1, b0, b1, [&](const QPt& v) {
                bool self = i == j && v.x == 0 && v.y == 0;
                if (self) return;
                SegHit h = segment_hit(a0, a1, b0 + v, b1 + v);
                if (h.kind == SegHit::None) return;
                if (h.kind == SegHit::Touch) {
                    QPt at = a0 + h.s * (a1 - a0);
                    bool shared = (j == i + 1 && v.x == 0 && v.y == 0 && at == a1) ||
                                  (i == 0 && j == n - 1 && v == QPt{-cl.x, -cl.y} && at == a0) ||
                                  (i == j && n == 1 && (at == a0 || at == a1));
                    if (shared) return;
                }
                throw InvalidDiagram(nm + " is not embedded");
            });
        }
}

struct Crossing {
    std::size_t aseg, bseg;
    Q as, bt;
    int sign;
};

inline std::vector<Crossing> crossings(const CurveDiagram& d) {
    std::vector<Crossing> out;
    for (std::size_t i = 0; i < d.alpha.segs(); ++i)
        for (std::size_t j = 0; j < d.beta.segs(); ++j) {
            const QPt &a0 = d.alpha.pts[i], &a1 = d.alpha.pts[i + 1], &b0 = d.beta.pts[j], &b1 = d.beta.pts[j + 1];
            for_translates(a0, a1, b0, b1, [&](const QPt& v) {
                SegHit h = segment_hit(a0, a1, b0 + v, b1 + v);
                if (h.kind == SegHit::None) return;
                if (h.kind != SegHit::Proper) throw InvalidDiagram("alpha and beta meet non-transversally or at a vertex");
                out.push_back({i, j, h.s, h.t, qsign(cross(a1 - a0, b1 - b0))});
            });
        }
    return out;
}

struct RayHit {
    int curve;  // 0 alpha, 1 beta
    std::size_t seg;
    Q param;
    bool from_left;
};

// First curve point met by the ray from P in direction +x (axis 0) or +y (axis 1), within one period.
inline std::optional<RayHit> cast_ray(const CurveDiagram& d, const QPt& P, int axis) {
    std::optional<RayHit> best;
    Q best_d;
    std::optional<Q> first_overlap;
    for (int cv = 0; cv < 2; ++cv) {
        const Curve& C = cv == 0 ? d.alpha : d.beta;
        for (std::size_t i = 0; i < C.segs(); ++i) {
            QPt a = C.pts[i], b = C.pts[i + 1];
            if (axis == 1) {
                std::swap(a.x, a.y);
                std::swap(b.x, b.y);
            }
            QPt Pp = axis == 0 ? P : QPt{P.y, P.x};
            const Q lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
            if (a.y == b.y) {
                if (qfrac(a.y - Pp.y) != 0) continue;
                Q s0 = qfrac(std::min(a.x, b.x) - Pp.x), len = std::max(a.x, b.x) - std::min(a.x, b.x);
                if (s0 == 0 || s0 + len >= 1) throw InvalidDiagram("basepoint lies on a curve");
                if (!first_overlap || s0 < *first_overlap) first_overlap = s0;
                continue;
            }
            for (Q n = qceil(lo - Pp.y); Pp.y + n < hi; n += 1) {
                Q Y = Pp.y + n;
                Q t = (Y - a.y) / (b.y - a.y);
                Q x = a.x + t * (b.x - a.x);
                Q dist = qfrac(x - Pp.x);
                if (dist == 0) throw InvalidDiagram("basepoint lies on a curve");
                if (!best || dist < best_d) {
                    best_d = dist;
                    bool up = b.y > a.y;
                    // axis 0: ray east, curve north => P on its left. axis 1 swaps orientation.
                    best = RayHit{cv, i, t, axis == 0 ? up : !up};
                }
            }
        }
    }
    if (first_overlap && best && *first_overlap < best_d) return std::nullopt;
    return best;
}

}  // namespace detail

struct Analysis {
    Combinatorial comb;
    IntersectionData data;
    QPt alpha_cls, beta_cls;
};

inline int intersection_number(const QPt& a, const QPt& b) { return int(cross(a, b).get_num().get_si()); }

inline void validate(const CurveDiagram& d) {
    detail::check_curve(d.alpha, "alpha");
    detail::check_curve(d.beta, "beta");
    if (cross(d.alpha.cls(), d.beta.cls()) == 0) throw InvalidDiagram("alpha.beta = 0");
}

inline Analysis analyze(const CurveDiagram& d) {
    validate(d);
    auto cr = detail::crossings(d);
    const int p = int(cr.size());
    if (p == 0) throw InvalidDiagram("alpha and beta are disjoint");
    std::vector<int> by_alpha(static_cast<std::size_t>(p)), by_beta(static_cast<std::size_t>(p));
    std::iota(by_alpha.begin(), by_alpha.end(), 0);
    std::iota(by_beta.begin(), by_beta.end(), 0);
    std::sort(by_alpha.begin(), by_alpha.end(), [&](int u, int v) {
        return std::tie(cr[std::size_t(u)].aseg, cr[std::size_t(u)].as) < std::tie(cr[std::size_t(v)].aseg, cr[std::size_t(v)].as);
    });
    std::sort(by_beta.begin(), by_beta.end(), [&](int u, int v) {
        return std::tie(cr[std::size_t(u)].bseg, cr[std::size_t(u)].bt) < std::tie(cr[std::size_t(v)].bseg, cr[std::size_t(v)].bt);
    });
    std::vector<int> apos(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) apos[std::size_t(by_alpha[std::size_t(i)])] = i;
    Analysis an;
    Combinatorial& c = an.comb;
    c.p = p;
    for (int i = 0; i < p; ++i) c.eps.push_back(cr[std::size_t(by_alpha[std::size_t(i)])].sign);
    for (int k = 0; k < p; ++k) c.beta.push_back(apos[std::size_t(by_beta[std::size_t(k)])]);
    an.alpha_cls = d.alpha.cls();
    an.beta_cls = d.beta.cls();
    if (c.sum_eps() != intersection_number(an.alpha_cls, an.beta_cls))
        throw std::logic_error("sign sum disagrees with the homology intersection number");
    const Faces F = faces(c);
    auto locate = [&](const QPt& P) {
        std::optional<detail::RayHit> h = detail::cast_ray(d, P, 0);
        if (!h) h = detail::cast_ray(d, P, 1);
        if (!h) throw InvalidDiagram("cannot locate basepoint");
        int edge;
        if (h->curve == 0) {
            int g = p - 1;
            for (int i = 0; i < p; ++i) {
                const auto& x = cr[std::size_t(by_alpha[std::size_t(i)])];
                if (std::tie(x.aseg, x.as) < std::tie(h->seg, h->param)) g = i;
            }
            edge = g;
        } else {
            int k = p - 1;
            for (int j = 0; j < p; ++j) {
                const auto& x = cr[std::size_t(by_beta[std::size_t(j)])];
                if (std::tie(x.bseg, x.bt) < std::tie(h->seg, h->param)) k = j;
            }
            edge = p + k;
        }
        int f = h->from_left ? F.left(edge) : F.right(edge);
        for (int g = 0; g < p; ++g)
            for (int side = 0; side < 2; ++side)
                if (F.slot({side, g}) == f) return Slot{side, g};
        throw std::logic_error("face without an alpha edge");
    };
    c.w = locate(d.w);
    c.z = locate(d.z);
    an.data = intersection_data(c);
    return an;
}

inline Combinatorial combinatorial(const CurveDiagram& d) { return analyze(d).comb; }

inline std::vector<Bigon> enumerate_bigons(const CurveDiagram& d) { return enumerate_bigons(combinatorial(d)); }
inline bool is_reduced(const CurveDiagram& d) { return is_reduced(combinatorial(d)); }
inline CurveDiagram reduce(const CurveDiagram& d) { return realize(reduce(combinatorial(d))); }
inline Laurent alexander_from_diagram(const CurveDiagram& d) { return alexander_from_diagram(combinatorial(d)); }

struct Ambient {
    int order;
    bool is_s3;
};

inline Ambient ambient(const CurveDiagram& d) {
    validate(d);
    int o = std::abs(intersection_number(d.alpha.cls(), d.beta.cls()));
    return {o, o == 1};
}
inline Ambient ambient(const Combinatorial& c) {
    int o = std::abs(c.sum_eps());
    return {o, o == 1};
}

// ---- four-parameter diagrams ----

inline Combinatorial params_combinatorial(const ParamDiagram& pd) {
    const int p = pd.p, q = pd.q;
    if (p < 1 || q < 0) throw InvalidDiagram("p >= 1 and q >= 0 required");
    if (2 * q >= p) throw InvalidDiagram("2q < p required (no band strand)");
    auto md = [p](long v) { return int(((v % p) + p) % p); };
    const int r = md(pd.r), s = md(pd.s);
    // bottom-end and top-end partner of each alpha point: (is_bottom_end, alpha point)
    struct End {
        bool bottom;
        int pt;
    };
    std::vector<End> bot(static_cast<std::size_t>(p)), top(static_cast<std::size_t>(p));
    auto top_pt = [&](int j) { return md(j + s); };
    for (int k = 0; k < q; ++k) {
        int u = md(r + k), v = md(r + 2 * q - 1 - k);
        bot[std::size_t(u)] = {true, v};
        bot[std::size_t(v)] = {true, u};
        int a = top_pt(k), b = top_pt(2 * q - 1 - k);
        top[std::size_t(a)] = {false, b};
        top[std::size_t(b)] = {false, a};
    }
    for (int i = 0; i < p - 2 * q; ++i) {
        int u = md(r + 2 * q + i), v = top_pt(2 * q + i);
        bot[std::size_t(u)] = {false, v};
        top[std::size_t(v)] = {true, u};
    }
    Combinatorial c;
    c.p = p;
    c.eps.assign(std::size_t(p), 0);
    int cur = 0;
    bool up = true;  // crossing direction at cur
    for (int n = 0; n < p; ++n) {
        if (c.eps[std::size_t(cur)] != 0) throw InvalidDiagram("beta is disconnected");
        c.eps[std::size_t(cur)] = up ? 1 : -1;
        c.beta.push_back(cur);
        const End& e = up ? bot[std::size_t(cur)] : top[std::size_t(cur)];
        // arriving from the bottom boundary means heading down through alpha
        up = e.bottom ? false : true;
        cur = e.pt;
    }
    if (cur != 0 || !up) throw InvalidDiagram("beta is disconnected");
    c.w = {0, md(r + q - 1)};
    c.z = {1, md(q - 1 + s)};
    check_combinatorial(c);
    return c;
}

inline CurveDiagram from_params(const ParamDiagram& pd) { return realize(params_combinatorial(pd)); }

// ---- JSON ----

namespace detail {

inline nlohmann::json q_json(const Q& v) { return nlohmann::json::array({v.get_num().get_si(), v.get_den().get_si()}); }
inline nlohmann::json pt_json(const QPt& v) { return nlohmann::json::array({q_json(v.x), q_json(v.y)}); }

inline Q json_q(const nlohmann::json& j) {
    if (j.is_number_integer()) return Q(j.get<long>());
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw InvalidDiagram("rational must be [num, den]");
    long den = j[1].get<long>();
    if (den == 0) throw InvalidDiagram("zero denominator");
    Q v(j[0].get<long>(), den);
    v.canonicalize();
    return v;
}
inline QPt json_pt(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidDiagram("point must be [x, y]");
    return {json_q(j[0]), json_q(j[1])};
}

}  // namespace detail

inline nlohmann::json to_json(const CurveDiagram& d) {
    nlohmann::json j;
    for (const char* k : {"alpha", "beta"}) {
        const Curve& c = std::string(k) == "alpha" ? d.alpha : d.beta;
        j[k] = nlohmann::json::array();
        for (auto& q : c.pts) j[k].push_back(detail::pt_json(q));
    }
    j["w"] = detail::pt_json(d.w);
    j["z"] = detail::pt_json(d.z);
    return j;
}

inline CurveDiagram diagram_from_json(const nlohmann::json& j) {
    CurveDiagram d;
    try {
        for (auto& q : j.at("alpha")) d.alpha.pts.push_back(detail::json_pt(q));
        for (auto& q : j.at("beta")) d.beta.pts.push_back(detail::json_pt(q));
        d.w = detail::json_pt(j.at("w"));
        d.z = detail::json_pt(j.at("z"));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidDiagram(std::string("bad diagram JSON: ") + e.what());
    }
    validate(d);
    return d;
}

inline nlohmann::json to_json(const ParamDiagram& pd) { return {{"p", pd.p}, {"q", pd.q}, {"r", pd.r}, {"s", pd.s}}; }

inline ParamDiagram param_diagram_from_json(const nlohmann::json& j) {
    try {
        return {j.at("p").get<int>(), j.at("q").get<int>(), j.at("r").get<int>(), j.at("s").get<int>()};
    } catch (const nlohmann::json::exception& e) {
        throw InvalidDiagram(std::string("bad parameter JSON: ") + e.what());
    }
}

}  // namespace l11

#pragma once

#include "alexander.hpp"
#include "braid.hpp"
#include "geometry.hpp"
#include "group.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <set>
#include <tuple>
#include <stdexcept>
#include <string>
#include <vector>

namespace l11 {

enum Gen { X0 = 0, Y0 = 1, X1 = 2, Y1 = 3 };

inline Presentation knot_generators() { return Presentation{{"x0", "y0", "x1", "y1"}, {}, {}, {}}; }

inline std::vector<long> meridian_degrees(const BraidParams& bp) {
    return {long(bp.t) + 1, long(bp.t), long(bp.omega) + 1, long(bp.omega)};
}

// rho is the lifted segment R=(c,0) -> P=(omega+1, t+a); D0 is bounded by x = 0, D1 by y = 0,
// Q = (0,0), P = (0,a), R = (c,0) modulo Z^2.
struct BridgeGeometry {
    struct Crossing {
        Q param;     // position along rho in (0,1)
        int disk;    // 0: vertical line, 1: horizontal line
        int letter;  // generator
        Q offset;    // fractional coordinate along the boundary line
        int label;   // P_label or R_label
    };

    BraidParams bp;
    Q a, c;
    QPt R, P;
    std::vector<Crossing> crossings;  // rho-order
    std::vector<int> d0_by_label;     // index of P_1..P_omega in crossings
    std::vector<int> d1_by_label;     // index of R_1..R_t in crossings
    Q q2_param;                       // Q'' on rho

    QPt dir() const { return P - R; }
    QPt at(const Q& s) const { return R + s * dir(); }
};

namespace detail {

// Fills crossings for rho with the given endpoints; returns false if some crossing is degenerate.
inline bool rho_crossings(BridgeGeometry& g) {
    const int w = g.bp.omega, t = g.bp.t;
    const QPt D = g.dir();
    g.crossings.clear();
    for (int k = 1; k <= w; ++k) {
        Q s = (Q(k) - g.R.x) / D.x;
        Q y = g.R.y + s * D.y;
        Q f = qfrac(y);
        if (f == 0 || f == g.a) return false;
        g.crossings.push_back({s, 0, f < g.a ? X0 : Y0, f, 0});
    }
    for (int j = 1; j <= t; ++j) {
        Q s = (Q(j) - g.R.y) / D.y;
        Q x = g.R.x + s * D.x;
        Q f = qfrac(x);
        if (f == 0 || f == g.c) return false;
        g.crossings.push_back({s, 1, f < g.c ? Y1 : X1, f, 0});
    }
    std::sort(g.crossings.begin(), g.crossings.end(), [](auto& u, auto& v) { return u.param < v.param; });
    for (std::size_t i = 1; i < g.crossings.size(); ++i)
        if (g.crossings[i].param == g.crossings[i - 1].param) return false;
    return true;
}

}  // namespace detail

inline BridgeGeometry bridge_geometry(const BraidParams& bp) {
    if (!is_knot_valid(bp)) throw std::invalid_argument("parameters are not normalized knot-valid: " + bp.str());
    const int w = bp.omega, t = bp.t;
    const long N = 2L * (w + 1) * (t + 1);
    for (long i = 0; i < N; ++i) {
        for (long j = 0; j < N; ++j) {
            BridgeGeometry g;
            g.bp = bp;
            g.a = qq(2 * i + 1, 2 * N);
            g.c = qq(2 * j + 1, 2 * N + 2);
            g.a.canonicalize();
            g.c.canonicalize();
            g.R = {g.c, Q(0)};
            g.P = {Q(w + 1), Q(t) + g.a};
            if (!detail::rho_crossings(g)) continue;
            int b0 = 0, b1 = 0;
            for (auto& x : g.crossings) {
                if (x.letter == X0) ++b0;
                if (x.letter == X1) ++b1;
            }
            if (b0 != bp.b0 || b1 != bp.b1) continue;
            // labels: P_1..P_omega and R_1..R_t by boundary offset, descending
            for (int disk = 0; disk < 2; ++disk) {
                std::vector<int> idx;
                for (int k = 0; k < int(g.crossings.size()); ++k)
                    if (g.crossings[k].disk == disk) idx.push_back(k);
                std::sort(idx.begin(), idx.end(),
                          [&](int u, int v) { return g.crossings[u].offset > g.crossings[v].offset; });
                for (int l = 0; l < int(idx.size()); ++l) g.crossings[idx[l]].label = l + 1;
                (disk == 0 ? g.d0_by_label : g.d1_by_label) = idx;
            }
            const Q& s1 = g.crossings[g.d1_by_label.front()].param;  // R_1
            const Q& s2 = g.crossings[g.d0_by_label.back()].param;   // P_omega
            g.q2_param = (s1 + s2) / 2;
            return g;
        }
    }
    throw std::logic_error("no bridge geometry realizes " + bp.str());
}

// ---------------------------------------------------------------------------------------------
// Reading loops on the torus as relators.

struct LoopReading {
    Word u0, u1;                               // letters from D0 and D1 crossings, in loop order
    Word relator() const { return (u0 * u1.inverse()).reduced(); }
    Word combined;                             // interleaved letters
};

namespace detail {

inline bool seg_intersect(const QPt& p1, const QPt& p2, const QPt& q1, const QPt& q2) {
    QPt r = p2 - p1, s = q2 - q1;
    Q den = cross(r, s);
    QPt qp = q1 - p1;
    if (den == 0) {
        if (cross(qp, r) != 0) return false;
        // collinear: overlap test on projection
        Q rr = r.x * r.x + r.y * r.y;
        Q t0 = (qp.x * r.x + qp.y * r.y) / rr;
        QPt q2p = q2 - p1;
        Q t1 = (q2p.x * r.x + q2p.y * r.y) / rr;
        if (t0 > t1) std::swap(t0, t1);
        return !(t1 < 0 || t0 > 1);
    }
    Q tt = cross(qp, s) / den;
    Q uu = cross(qp, r) / den;
    return tt >= 0 && tt <= 1 && uu >= 0 && uu <= 1;
}

inline long lfloor(const Q& v) { return qfloor(v).get_num().get_si(); }

}  // namespace detail

// Reads a closed polyline (given in the plane; the last point must equal the first modulo Z^2 and
// is joined back implicitly) avoiding rho and Q. Throws if the loop meets rho, Q, P, R or lattice corners.
inline LoopReading read_loop(const BridgeGeometry& g, const std::vector<QPt>& pts, bool closed = true) {
    LoopReading out;
    const QPt D = g.dir();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const QPt& p = pts[k];
        const QPt& q = pts[k + 1];
        // rho translates
        Q minx = std::min(p.x, q.x), maxx = std::max(p.x, q.x);
        Q miny = std::min(p.y, q.y), maxy = std::max(p.y, q.y);
        Q rminx = std::min(g.R.x, g.P.x), rmaxx = std::max(g.R.x, g.P.x);
        Q rminy = std::min(g.R.y, g.P.y), rmaxy = std::max(g.R.y, g.P.y);
        for (long m = detail::lfloor(minx - rmaxx) - 1; m <= detail::lfloor(maxx - rminx) + 1; ++m)
            for (long n = detail::lfloor(miny - rmaxy) - 1; n <= detail::lfloor(maxy - rminy) + 1; ++n) {
                QPt sh{Q(m), Q(n)};
                if (detail::seg_intersect(p, q, g.R + sh, g.P + sh))
                    throw std::logic_error("loop meets rho");
            }
        // lattice-line crossings in order along the segment
        struct Ev {
            Q s;
            int disk;
            Q where;
            int dir;
        };
        std::vector<Ev> ev;
        const QPt d = q - p;
        if (d.x != 0) {
            long lo = detail::lfloor(minx), hi = detail::lfloor(maxx);
            for (long k2 = lo; k2 <= hi + 1; ++k2) {
                Q X(k2);
                if (X < minx || X > maxx) continue;
                Q s = (X - p.x) / d.x;
                if (s == 0 || s == 1) throw std::logic_error("loop vertex on a lattice line");
                ev.push_back({s, 0, p.y + s * d.y, d.x > 0 ? 1 : -1});
            }
        } else if (qfrac(p.x) == 0) {
            throw std::logic_error("loop runs along a lattice line");
        }
        if (d.y != 0) {
            long lo = detail::lfloor(miny), hi = detail::lfloor(maxy);
            for (long k2 = lo; k2 <= hi + 1; ++k2) {
                Q Y(k2);
                if (Y < miny || Y > maxy) continue;
                Q s = (Y - p.y) / d.y;
                if (s == 0 || s == 1) throw std::logic_error("loop vertex on a lattice line");
                ev.push_back({s, 1, p.x + s * d.x, d.y > 0 ? 1 : -1});
            }
        } else if (qfrac(p.y) == 0) {
            throw std::logic_error("loop runs along a lattice line");
        }
        std::sort(ev.begin(), ev.end(), [](auto& u, auto& v) { return u.s < v.s; });
        for (std::size_t i = 1; i < ev.size(); ++i)
            if (ev[i].s == ev[i - 1].s) throw std::logic_error("loop passes through a lattice corner");
        for (auto& e : ev) {
            Q f = qfrac(e.where);
            if (e.disk == 0) {
                if (f == 0 || f == g.a) throw std::logic_error("loop passes through Q or P");
                Letter l{f < g.a ? X0 : Y0, e.dir};
                out.u0.letters.push_back(l);
                out.combined.letters.push_back(l);
            } else {
                if (f == 0 || f == g.c) throw std::logic_error("loop passes through Q or R");
                Letter l{f < g.c ? Y1 : X1, e.dir};
                out.u1.letters.push_back(l);
                out.combined.letters.push_back(l);
            }
        }
    }
    if (closed && !pts.empty()) {
        QPt d = pts.back() - pts.front();
        if (qfrac(d.x) != 0 || qfrac(d.y) != 0) throw std::logic_error("loop does not close on the torus");
    }
    return out;
}

namespace detail {

// Closed loop along a lattice-parallel line with a finger along rho around every crossing with rho.
// axis 0: horizontal line y = level traversed in direction sgn; axis 1: vertical line x = level.
// Fingers run toward P when to_p, otherwise back toward R.
inline std::vector<QPt> finger_loop(const BridgeGeometry& g, int axis, const Q& level, int sgn, bool to_p,
                                    const Q& eps) {
    const QPt D = g.dir();
    const QPt nrm{-D.y, D.x};  // left normal
    struct Hit {
        Q pos;   // coordinate along the base line
        QPt off;  // translation of rho
        Q s;      // parameter on rho
    };
    std::vector<Hit> hits;
    // translates of rho meeting the base line within one period [start, start+1)
    const Q start(1, 1000003);
    for (long m = -1 - g.bp.omega - 2; m <= 2; ++m)
        for (long n = -g.bp.t - 3; n <= 2; ++n) {
            QPt sh{Q(m), Q(n)};
            QPt r0 = g.R + sh, r1p = g.P + sh;
            Q s;
            if (axis == 0) {
                if (D.y == 0) continue;
                s = (level - r0.y) / D.y;
            } else {
                if (D.x == 0) continue;
                s = (level - r0.x) / D.x;
            }
            if (s <= 0 || s >= 1) continue;
            QPt hp = r0 + s * D;
            Q pos = axis == 0 ? hp.x : hp.y;
            if (pos < start || pos >= start + 1) continue;
            hits.push_back({pos, sh, s});
            (void)r1p;
        }
    std::sort(hits.begin(), hits.end(), [](auto& u, auto& v) { return u.pos < v.pos; });
    // nest: fingers starting farther from the free end are inner
    std::vector<std::size_t> rank(hits.size());
    {
        std::vector<std::size_t> ord(hits.size());
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](auto u, auto v) {
            return to_p ? hits[u].s < hits[v].s : hits[u].s > hits[v].s;
        });
        for (std::size_t r = 0; r < ord.size(); ++r) rank[ord[r]] = r + 1;
    }
    auto base_pt = [&](const Q& pos) { return axis == 0 ? QPt{pos, level} : QPt{level, pos}; };
    // base line direction unit vector
    const QPt u = axis == 0 ? QPt{Q(1), Q(0)} : QPt{Q(0), Q(1)};
    std::vector<QPt> pts;
    pts.push_back(base_pt(start));
    for (std::size_t h = 0; h < hits.size(); ++h) {
        const Hit& hit = hits[h];
        Q e = eps * Q(long(rank[h]));
        QPt r0 = g.R + hit.off;
        QPt end = to_p ? g.P + hit.off : r0;
        QPt fwd = to_p ? D : Q(-1) * D;  // direction from hit toward the free end
        // offset lines rho +- e*nrm meet the base line at these points
        auto meet = [&](const Q& side) {
            QPt o = r0 + (side * e) * nrm;
            Q s = axis == 0 ? (level - o.y) / D.y : (level - o.x) / D.x;
            return o + s * D;
        };
        QPt A = meet(Q(1)), B = meet(Q(-1));
        Q pa = axis == 0 ? A.x : A.y, pb = axis == 0 ? B.x : B.y;
        // enter on the side met first along the base direction (increasing coordinate)
        Q first_side = pa < pb ? Q(1) : Q(-1);
        QPt in = pa < pb ? A : B, out = pa < pb ? B : A;
        Q kap = Q(1) + (D.y > D.x ? D.y / D.x : D.x / D.y);
        QPt cap1 = end + (first_side * e) * nrm + (e * kap) * fwd;
        QPt cap2 = end - (first_side * e) * nrm + (e * kap) * fwd;
        pts.push_back(in);
        pts.push_back(cap1);
        pts.push_back(cap2);
        pts.push_back(out);
    }
    pts.push_back(base_pt(start + 1));
    (void)u;
    if (sgn < 0) std::reverse(pts.begin(), pts.end());
    return pts;
}

}  // namespace detail

struct BridgeWords {
    std::vector<Word> g;  // g_1..g_t
    std::vector<Word> h;  // h_1..h_omega
    Word mu;              // x0 y0^-1
};

// Direction used to number R_1..R_t and P_1..P_omega.
enum class Labeling { Boundary, Reversed };

// g_i: D0 letters along rho after R_i; h_i: D1 letters along rho before P_i.
inline BridgeWords bridge_words(const BridgeGeometry& bg, Labeling lab = Labeling::Boundary) {
    BridgeWords pw;
    const auto& cr = bg.crossings;
    for (int idx : bg.d1_by_label) {
        Word w;
        for (int k = idx + 1; k < int(cr.size()); ++k)
            if (cr[k].disk == 0) w.letters.push_back({cr[k].letter, 1});
        pw.g.push_back(w);
    }
    for (int idx : bg.d0_by_label) {
        Word w;
        for (int k = 0; k < idx; ++k)
            if (cr[k].disk == 1) w.letters.push_back({cr[k].letter, 1});
        pw.h.push_back(w);
    }
    if (lab == Labeling::Reversed) {
        std::reverse(pw.g.begin(), pw.g.end());
        std::reverse(pw.h.begin(), pw.h.end());
    }
    pw.mu = Word({{X0, 1}, {Y0, -1}});
    return pw;
}

struct KnotPresentation {
    BraidParams bp;
    Presentation pres;  // generators x0 y0 x1 y1; relators r1 r2 r3 then mechanical ones
    std::vector<long> deg;
    BridgeWords words;
    Word mu;        // x0 y0^-1
    Word mu1;       // y1^-1 x1
    Word longitude_hg;  // h_omega g_1
    int k0 = 0;
    int genus = 0;
    Word lambda() const { return (mu.pow(-k0) * longitude_hg).reduced(); }
    // base element of the cone, (mu^{2g-1} lambda)^{-1}, which reduces to g_1^-1 h_omega^-1 mu^{t+omega+1}
    Word cone_base() const { return (mu.pow(2 * genus - 1) * lambda()).inverse().reduced(); }
    const Word& relator(const std::string& name) const {
        for (std::size_t i = 0; i < pres.relators.size(); ++i)
            if (pres.relator_names[i] == name) return pres.relators[i];
        throw std::out_of_range("no relator " + name);
    }
    std::string str() const;
};

// Faces of the unit square cut by the chords of rho, with the lattice edges between them.
struct SquareComplex {
    struct Edge {
        int u, v;  // crossing from face u to face v reads l
        Letter l;
    };
    std::vector<Q> boundary;  // sorted positions on the square boundary, parametrized by [0,4)
    std::vector<int> face;    // face of the boundary interval starting at boundary[i]
    int nfaces = 0;
    std::vector<Edge> edges;
    int base = 0;  // face containing the corner (1, 0+)
    std::vector<std::optional<std::tuple<int, int, int>>> parent;  // BFS tree from base
    std::vector<bool> tree;

    // word read along the tree path from the base face to f
    Word path(int f) const {
        Word w;
        while (parent[f]) {
            auto [u, k, sg] = *parent[f];
            w.letters.push_back({edges[k].l.first, sg});
            f = u;
        }
        std::reverse(w.letters.begin(), w.letters.end());
        return w;
    }
    int face_at(const Q& pos) const {
        auto it = std::upper_bound(boundary.begin(), boundary.end(), pos);
        if (it != boundary.begin() && *std::prev(it) == pos) throw std::logic_error("point on a face corner");
        std::size_t i = it == boundary.begin() ? boundary.size() - 1 : std::size_t(it - boundary.begin()) - 1;
        return face[i];
    }
};

inline Q boundary_pos(const QPt& p) {
    if (p.y == 0) return p.x;
    if (p.x == 1) return 1 + p.y;
    if (p.y == 1) return 3 - p.x;
    if (p.x == 0) return 4 - p.y;
    throw std::logic_error("point off the square boundary");
}

inline SquareComplex square_complex(const BridgeGeometry& g) {
    SquareComplex sc;
    // boundary of the unit square parametrized by [0,4): bottom x, right 1+y, top 3-x, left 4-y
    struct Chord {
        QPt p, q;
    };
    std::vector<Chord> chords;
    {
        const QPt D = g.dir();
        std::vector<Q> cuts{Q(0), Q(1)};
        for (auto& c : g.crossings) cuts.push_back(c.param);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            QPt p = g.at(cuts[k]), q = g.at(cuts[k + 1]);
            QPt m = Q(1, 2) * (p + q);
            QPt sh{qfloor(m.x), qfloor(m.y)};
            chords.push_back({p - sh, q - sh});
        }
        (void)D;
    }
    auto pos_of = boundary_pos;
    std::map<Q, std::optional<Q>> pts;
    std::vector<Q> ends;
    for (auto& ch : chords) {
        // interior endpoints R and P lie inside the square; they are not on the boundary
        bool pin = ch.p.x > 0 && ch.p.x < 1 && ch.p.y > 0 && ch.p.y < 1;
        bool qin = ch.q.x > 0 && ch.q.x < 1 && ch.q.y > 0 && ch.q.y < 1;
        if (pin || qin) throw std::logic_error("rho endpoint in the open square");
        Q pp = pos_of(ch.p), qq = pos_of(ch.q);
        pts[pp] = qq;
        pts[qq] = pp;
    }
    {
        std::vector<Q> keys;
        for (auto& [k, v] : pts) keys.push_back(k);
        for (auto& ps : keys) {
            Q partner;
            if (ps < 1)
                partner = 3 - ps;
            else if (ps > 2 && ps < 3)
                partner = 3 - ps;
            else if (ps > 1 && ps < 2)
                partner = 5 - ps;
            else if (ps > 3 && ps < 4)
                partner = 5 - ps;
            else
                continue;
            if (!pts.count(partner)) pts[partner] = std::nullopt;
        }
        for (int k = 0; k < 4; ++k)
            if (!pts.count(Q(k))) pts[Q(k)] = std::nullopt;
    }
    std::vector<Q> Pv;
    for (auto& [k, v] : pts) Pv.push_back(k);
    const int n = int(Pv.size());
    std::map<Q, int> idx;
    for (int i = 0; i < n; ++i) idx[Pv[i]] = i;
    std::vector<int> face(n, -1);
    int nf = 0;
    for (int s = 0; s < n; ++s) {
        if (face[s] >= 0) continue;
        int i = s;
        while (face[i] < 0) {
            face[i] = nf;
            const Q& e = Pv[(i + 1) % n];
            auto nxt = pts[e];
            i = nxt ? idx[*nxt] : (i + 1) % n;
        }
        ++nf;
    }
    struct E {
        int u, v;
        Letter l;
    };
    std::vector<E> edges;
    for (int i = 0; i < n; ++i) {
        Q lo = Pv[i], hi = i + 1 < n ? Pv[i + 1] : Q(4);
        if (hi <= 1) {
            int j = idx.at(3 - hi);
            Q mid = (lo + hi) / 2;
            edges.push_back({face[j], face[i], {mid < g.c ? Y1 : X1, 1}});
        } else if (lo >= 1 && hi <= 2) {
            int j = idx.at(5 - hi);
            Q y = (lo + hi) / 2 - 1;
            edges.push_back({face[i], face[j], {y < g.a ? X0 : Y0, 1}});
        }
    }
    int base = face[idx.at(Q(1)) - 1];
    std::vector<std::vector<std::tuple<int, int, int>>> adj(nf);
    for (int k = 0; k < int(edges.size()); ++k) {
        adj[edges[k].u].push_back({edges[k].v, k, 1});
        adj[edges[k].v].push_back({edges[k].u, k, -1});
    }
    std::vector<std::optional<std::tuple<int, int, int>>> par(nf);
    std::vector<bool> seen(nf, false), tree(edges.size(), false);
    std::deque<int> dq{base};
    seen[base] = true;
    while (!dq.empty()) {
        int u = dq.front();
        dq.pop_front();
        for (auto& [v, k, sg] : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                par[v] = std::tuple<int, int, int>{u, k, sg};
                tree[k] = true;
                dq.push_back(v);
            }
    }
    sc.boundary = Pv;
    sc.face = face;
    sc.nfaces = nf;
    for (auto& e : edges) sc.edges.push_back({e.u, e.v, e.l});
    sc.base = base;
    sc.parent = par;
    sc.tree = tree;
    return sc;
}

// Relators from the dual graph of the square cut by the chords of rho (complete presentation).
inline std::vector<Word> mechanical_relators(const BridgeGeometry& g) {
    SquareComplex sc = square_complex(g);
    std::vector<Word> rels;
    for (int k = 0; k < int(sc.edges.size()); ++k) {
        if (sc.tree[k]) continue;
        Word loop = sc.path(sc.edges[k].u) * Word({sc.edges[k].l}) * sc.path(sc.edges[k].v).inverse();
        Word w0, w1;
        for (auto& l : loop.letters) (l.first <= Y0 ? w0 : w1).letters.push_back(l);
        rels.push_back((w0 * w1.inverse()).reduced());
    }
    return rels;
}

struct LoopRelators {
    LoopReading r1, r2, r3;
};

// Reads r1 (horizontal loop with fingers to P), r2 (vertical loop with fingers to R), r3 (loop around Q).
inline LoopRelators loop_relators(const BridgeGeometry& g) {
    Q eta(1, 1000 * (g.bp.omega + 2) * (g.bp.t + 2));
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            Q eps = eta / Q(1000 * (g.bp.omega + g.bp.t + 2));
            LoopRelators L;
            L.r1 = read_loop(g, detail::finger_loop(g, 0, -eta, -1, true, eps));
            L.r2 = read_loop(g, detail::finger_loop(g, 1, eta, 1, false, eps));
            // r1 and r2 only meet one disk system after reduction, so their start point is irrelevant
            if (!L.r1.u1.reduced().empty() || !L.r2.u0.reduced().empty())
                throw std::logic_error("finger loop crosses both disk systems");
            // the square starts in the base face, the corner of the unit square at (1, 0+)
            std::vector<QPt> sq{{-eta, eta}, {-eta, -eta}, {eta, -eta}, {eta, eta}, {-eta, eta}};
            L.r3 = read_loop(g, sq);
            return L;
        } catch (const std::logic_error&) {
            eta /= 16;
        }
    }
    throw std::logic_error("could not place relator loops for " + g.bp.str());
}


namespace detail {

inline Word product_word(const std::vector<Word>& ws, const Word& mu, bool h_side) {
    Word r;
    for (auto& w : ws) r = r * (h_side ? w.inverse() * mu * w : w * mu * w.inverse());
    return r;
}

}  // namespace detail

// Relator forms written in terms of the g_i, h_i words.
inline Word formula_r1(const BridgeWords& pw) {
    return (Word({{Y0, -1}}) * detail::product_word(pw.g, pw.mu, false)).reduced();
}
inline Word formula_r2(const BridgeWords& pw) {
    Word mu1({{Y1, -1}, {X1, 1}});
    return (Word({{Y1, -1}}) * detail::product_word(pw.h, mu1, true)).reduced();
}
inline Word formula_r3() { return Word({{X0, 1}, {Y0, -1}, {X1, -1}, {Y1, 1}}); }

inline KnotPresentation build_presentation(const BridgeGeometry& bg) {
    KnotPresentation kp;
    kp.bp = bg.bp;
    kp.pres = knot_generators();
    kp.deg = meridian_degrees(bg.bp);
    kp.words = bridge_words(bg);
    LoopRelators L = loop_relators(bg);
    kp.pres.relators = {L.r1.relator(), L.r2.relator(), L.r3.relator()};
    kp.pres.relator_names = {"r1", "r2", "r3"};
    auto mech = mechanical_relators(bg);
    for (std::size_t i = 0; i < mech.size(); ++i) {
        kp.pres.relators.push_back(mech[i]);
        kp.pres.relator_names.push_back("m" + std::to_string(i + 1));
    }
    kp.mu = kp.words.mu;
    kp.mu1 = Word({{Y1, -1}, {X1, 1}});
    kp.longitude_hg = kp.words.h.back() * kp.words.g.front();
    auto st = braid_stats(bg.bp);
    kp.k0 = st.k0;
    kp.genus = st.genus;
    return kp;
}

inline KnotPresentation build_presentation(const BraidParams& bp) { return build_presentation(bridge_geometry(bp)); }

inline std::string KnotPresentation::str() const {
    std::ostringstream os;
    os << "# knot group for braid parameters " << bp.str() << "\n";
    os << "# degrees x0=" << deg[0] << " y0=" << deg[1] << " x1=" << deg[2] << " y1=" << deg[3] << ", k0=" << k0
       << "\n";
    os << pres.str();
    auto def = [&](const std::string& n, const Word& w) { os << "define " << n << ": " << pres.word_str(w) << "\n"; };
    def("mu", mu);
    def("mu1", mu1);
    for (std::size_t i = 0; i < words.g.size(); ++i) def("g" + std::to_string(i + 1), words.g[i]);
    for (std::size_t i = 0; i < words.h.size(); ++i) def("h" + std::to_string(i + 1), words.h[i]);
    def("longitude", longitude_hg);
    return os.str();
}

struct CheckItem {
    std::string name;
    bool ok;
};

// Prerequisites read off the presentation; nothing here throws.
inline std::vector<CheckItem> structural_checks(const KnotPresentation& kp) {
    std::vector<CheckItem> out;
    const auto& g1 = kp.words.g.front();
    const auto& hw = kp.words.h.back();
    out.push_back({"g1 starts with x0", !g1.empty() && g1.letters.front() == Letter{X0, 1}});
    out.push_back({"h_omega ends with x1", !hw.empty() && hw.letters.back() == Letter{X1, 1}});
    out.push_back({"mu = x0 y0^-1", kp.mu == Word({{X0, 1}, {Y0, -1}})});
    bool have = kp.pres.relators.size() >= 3;
    out.push_back({"r1 = y0^-1 prod g_i mu g_i^-1", have && same_relator(kp.relator("r1"), formula_r1(kp.words))});
    out.push_back({"r2 = y1^-1 prod h_i^-1 mu h_i", have && same_relator(kp.relator("r2"), formula_r2(kp.words))});
    out.push_back({"r3: x0 y0^-1 = y1^-1 x1", have && same_relator(kp.relator("r3"), formula_r3())});
    bool degs = true;
    for (auto& r : kp.pres.relators) degs = degs && r.degree(kp.deg) == 0;
    out.push_back({"relators have degree 0", degs});
    out.push_back({"deg(h_omega g_1) = k0", kp.longitude_hg.degree(kp.deg) == kp.k0});
    out.push_back({"k0 = t*omega + b0 + b1", kp.k0 == kp.bp.t * kp.bp.omega + kp.bp.b0 + kp.bp.b1});
    // along rho the g_i are suffixes of one D0 sequence and the h_i prefixes of one D1 sequence
    bool mono = true;
    {
        auto lg = std::max_element(kp.words.g.begin(), kp.words.g.end(),
                                   [](const Word& u, const Word& v) { return u.size() < v.size(); });
        auto lh = std::max_element(kp.words.h.begin(), kp.words.h.end(),
                                   [](const Word& u, const Word& v) { return u.size() < v.size(); });
        for (auto& w : kp.words.g)
            mono = mono && std::equal(w.letters.rbegin(), w.letters.rend(), lg->letters.rbegin());
        for (auto& w : kp.words.h) mono = mono && std::equal(w.letters.begin(), w.letters.end(), lh->letters.begin());
    }
    out.push_back({"g_i, h_i nested along rho", mono});
    return out;
}

inline bool all_ok(const std::vector<CheckItem>& v) {
    return std::all_of(v.begin(), v.end(), [](const CheckItem& c) { return c.ok; });
}

// How "appears m_i times in g_1..g_t" is counted.
enum class Multiplicity { Element, Suffix };

struct Convention {
    Labeling labeling = Labeling::Boundary;
    Multiplicity multiplicity = Multiplicity::Element;
    std::string str() const {
        return std::string(labeling == Labeling::Boundary ? "boundary-labels" : "reversed-labels") + "/" +
               (multiplicity == Multiplicity::Element ? "element-count" : "suffix-count");
    }
};

inline std::vector<Convention> all_conventions() {
    return {{Labeling::Boundary, Multiplicity::Element},
            {Labeling::Boundary, Multiplicity::Suffix},
            {Labeling::Reversed, Multiplicity::Element},
            {Labeling::Reversed, Multiplicity::Suffix}};
}

struct SuffixStats {
    Convention conv;
    BridgeWords words;
    int t_prime = 0, omega_prime = 0;
    std::vector<Word> g_suffix;  // g~_0 .. g~_{t'}
    std::vector<Word> h_prefix;  // h~_0 .. h~_{omega'}
    std::vector<int> m, n;
    int sum_m = 0, sum_n = 0;
    bool displayed_identities = false;  // sum m = omega - omega', sum n = t - t'
    bool crossing_identities = false;   // sum m = t - omega', sum n = omega - t'
    bool geometric_counts = false;      // t', omega' agree with the crossings of rho on either side of Q''
};

inline SuffixStats suffix_stats(const BridgeGeometry& bg, const Convention& conv) {
    SuffixStats st;
    st.conv = conv;
    st.words = bridge_words(bg, conv.labeling);
    const Word& g1 = st.words.g.front();
    const Word& hw = st.words.h.back();
    st.t_prime = int(g1.size());
    st.omega_prime = int(hw.size());
    for (int i = 0; i <= st.t_prime; ++i)
        st.g_suffix.push_back(Word(std::vector<Letter>(g1.letters.end() - i, g1.letters.end())));
    for (int i = 0; i <= st.omega_prime; ++i)
        st.h_prefix.push_back(Word(std::vector<Letter>(hw.letters.begin(), hw.letters.begin() + i)));
    auto is_suffix = [](const Word& s, const Word& w) {
        return s.size() <= w.size() && std::equal(s.letters.rbegin(), s.letters.rend(), w.letters.rbegin());
    };
    auto is_prefix = [](const Word& s, const Word& w) {
        return s.size() <= w.size() && std::equal(s.letters.begin(), s.letters.end(), w.letters.begin());
    };
    for (int i = 0; i < st.t_prime; ++i) {
        int c = 0;
        for (auto& w : st.words.g)
            c += conv.multiplicity == Multiplicity::Element ? w == st.g_suffix[i] : is_suffix(st.g_suffix[i], w);
        st.m.push_back(c);
        st.sum_m += c;
    }
    for (int i = 0; i < st.omega_prime; ++i) {
        int c = 0;
        for (auto& w : st.words.h)
            c += conv.multiplicity == Multiplicity::Element ? w == st.h_prefix[i] : is_prefix(st.h_prefix[i], w);
        st.n.push_back(c);
        st.sum_n += c;
    }
    const int t = bg.bp.t, w = bg.bp.omega;
    st.displayed_identities = st.sum_m == w - st.omega_prime && st.sum_n == t - st.t_prime;
    st.crossing_identities = st.sum_m == t - st.omega_prime && st.sum_n == w - st.t_prime;
    int tp = 0, wp = 0;
    for (auto& c : bg.crossings) {
        if (c.disk == 0 && c.param > bg.q2_param) ++tp;
        if (c.disk == 1 && c.param < bg.q2_param) ++wp;
    }
    st.geometric_counts = tp == st.t_prime && wp == st.omega_prime;
    return st;
}

// The element g_0 of a curve in Sigma - rho that, like a geodesic parallel to rho, crosses both families of
// lattice lines only in the positive direction, leaving and re-entering the base face; read in both disk systems.
struct ParallelLoop {
    Word word0, word1;
};

inline ParallelLoop parallel_loop(const BridgeGeometry& bg) {
    const SquareComplex sc = square_complex(bg);
    // shortest directed cycle at the base face using both kinds of edges
    const int nf = sc.nfaces;
    auto id = [&](int f, int mask) { return f * 4 + mask; };
    std::vector<int> prev(std::size_t(nf) * 4, -2), via(std::size_t(nf) * 4, -1);
    std::deque<int> dq;
    int goal = -1;
    prev[id(sc.base, 0)] = -1;
    dq.push_back(id(sc.base, 0));
    while (!dq.empty() && goal < 0) {
        int st = dq.front();
        dq.pop_front();
        int f = st / 4, mask = st % 4;
        for (int k = 0; k < int(sc.edges.size()); ++k) {
            const auto& e = sc.edges[k];
            if (e.u != f) continue;
            int nm = mask | (e.l.first <= Y0 ? 1 : 2);
            int nx = id(e.v, nm);
            if (e.v == sc.base && nm == 3) {
                goal = nx;
                prev[nx] = st;
                via[nx] = k;
                break;
            }
            if (prev[nx] != -2) continue;
            prev[nx] = st;
            via[nx] = k;
            dq.push_back(nx);
        }
    }
    if (goal < 0) throw std::logic_error("no positive loop through the base face for " + bg.bp.str());
    Word loop;
    for (int st = goal; prev[st] != -1; st = prev[st]) loop.letters.push_back(sc.edges[std::size_t(via[st])].l);
    std::reverse(loop.letters.begin(), loop.letters.end());
    ParallelLoop pl;
    for (auto& l : loop.letters) (l.first <= Y0 ? pl.word0 : pl.word1).letters.push_back(l);
    auto deg = meridian_degrees(bg.bp);
    if (pl.word0.empty() || pl.word1.empty() || pl.word0.degree(deg) != pl.word1.degree(deg))
        throw std::logic_error("parallel loop is degenerate for " + bg.bp.str());
    return pl;
}

}  // namespace l11

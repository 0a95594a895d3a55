#pragma once

#include "alexander.hpp"
#include "braid.hpp"
#include "diagram.hpp"
#include "knot_group.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace l11 {

struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// ---- coherence ----

struct CoherenceVerdict {
    bool coherent = false;
    int beta_orientation = 1;    // +1: beta as stored, -1: reversed (when coherent)
    int sign = 0;                // sign of alpha.beta under that orientation (when coherent)
    std::vector<Bigon> witness;  // incoherent: two bigons needing opposite beta orientations
};

inline CoherenceVerdict check_coherence(const Combinatorial& c) {
    auto bigons = enumerate_bigons(c);
    CoherenceVerdict v;
    const Bigon* plus = nullptr;
    const Bigon* minus = nullptr;
    for (auto& b : bigons) {
        if (b.tau > 0 && !plus) plus = &b;
        if (b.tau < 0 && !minus) minus = &b;
    }
    if (plus && minus) {
        v.witness = {*plus, *minus};
        return v;
    }
    v.coherent = true;
    v.beta_orientation = minus ? -1 : 1;
    v.sign = v.beta_orientation * (c.sum_eps() > 0 ? 1 : -1);
    return v;
}

inline CoherenceVerdict check_coherence(const CurveDiagram& d) { return check_coherence(combinatorial(d)); }

struct ReductionTrace {
    std::vector<Combinatorial> steps;
    std::vector<CoherenceVerdict> verdicts;
    bool preserved() const {
        for (auto& v : verdicts)
            if (v.coherent != verdicts.front().coherent || v.sign != verdicts.front().sign) return false;
        return true;
    }
};

// Reduction with the coherence verdict recorded at every step.
inline ReductionTrace reduce_traced(const Combinatorial& c) {
    ReductionTrace t;
    t.steps = reduction_steps(c);
    for (auto& s : t.steps) t.verdicts.push_back(check_coherence(s));
    return t;
}

// ---- positive paths ----

struct PathCrossing {
    int edge;         // alpha gap e < p, beta segment p + k
    int from, to;     // regions: right side -> left side of the oriented edge
};

struct PositivePath {
    std::vector<int> region_sequence;
    std::vector<PathCrossing> crossings;
    int beta_orientation = 1;  // orientation of beta used for "left" and "right"
};

struct NotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Orientation of beta for positive curves: opposite to the coherent one, so rainbows run left to right.
inline int positive_orientation(const Combinatorial& c) { return -check_coherence(c).beta_orientation; }

inline std::optional<PositivePath> bfs_path(const Combinatorial& c, const Faces& F, int ob, int from, int to,
                                            const std::vector<bool>& banned) {
    const int p = c.p;
    std::vector<int> prev(std::size_t(F.count), -2), via(std::size_t(F.count), -1);
    std::deque<int> qu{from};
    prev[std::size_t(from)] = -1;
    while (!qu.empty() && prev[std::size_t(to)] == -2) {
        int f = qu.front();
        qu.pop_front();
        for (int e = 0; e < 2 * p; ++e) {
            int L = F.left(e), R = F.right(e);
            if (e >= p && ob < 0) std::swap(L, R);
            if (R != f || prev[std::size_t(L)] != -2) continue;
            if (L != to && banned[std::size_t(L)]) continue;
            prev[std::size_t(L)] = f;
            via[std::size_t(L)] = e;
            qu.push_back(L);
        }
    }
    if (prev[std::size_t(to)] == -2) return std::nullopt;
    PositivePath path;
    path.beta_orientation = ob;
    for (int f = to; f != -1; f = prev[std::size_t(f)]) path.region_sequence.push_back(f);
    std::reverse(path.region_sequence.begin(), path.region_sequence.end());
    for (std::size_t i = 1; i < path.region_sequence.size(); ++i) {
        int f = path.region_sequence[i];
        path.crossings.push_back({via[std::size_t(f)], path.region_sequence[i - 1], f});
    }
    return path;
}

}  // namespace detail

// Shortest positive path from the region of w to the region of z.
inline PositivePath find_positive_path(const Combinatorial& c) {
    check_combinatorial(c);
    const Faces F = faces(c);
    const int ob = detail::positive_orientation(c);
    auto path = detail::bfs_path(c, F, ob, F.slot(c.w), F.slot(c.z), std::vector<bool>(std::size_t(F.count), false));
    if (path) return *path;
    if (check_coherence(c).coherent && is_reduced(c))
        throw InvariantViolation("no positive path on a coherent reduced diagram");
    throw NotFound("no positive path from w to z");
}

inline PositivePath find_positive_path(const CurveDiagram& d) { return find_positive_path(combinatorial(d)); }

inline bool positive_path_ok(const Combinatorial& c, const PositivePath& path) {
    const Faces F = faces(c);
    if (path.region_sequence.empty() || path.region_sequence.front() != F.slot(c.w) ||
        path.region_sequence.back() != F.slot(c.z))
        return false;
    if (path.crossings.size() + 1 != path.region_sequence.size()) return false;
    for (std::size_t i = 0; i < path.crossings.size(); ++i) {
        const auto& x = path.crossings[i];
        int L = F.left(x.edge), R = F.right(x.edge);
        if (x.edge >= c.p && path.beta_orientation < 0) std::swap(L, R);
        if (x.from != R || x.to != L) return false;
        if (x.from != path.region_sequence[i] || x.to != path.region_sequence[i + 1]) return false;
    }
    return true;
}

// ---- rectangle inequality ----

struct RectangleCheck {
    int down_band, up_band;     // beta segment indices of e1, e2
    long l3, l4;                // assigned lengths of the alpha edges e3 (w side) and e4 (z side)
    int beta3, beta4;           // |e3 n beta|, |e4 n beta|
    int gamma1, gamma2, gamma3, gamma4;  // crossings of the positive path with e1..e4
    bool w_inside, z_inside;
    int q;
    // the two counting identities behind l3 <= l4
    bool identities_hold() const {
        return beta4 - beta3 == 2 * q * (int(z_inside) - int(w_inside)) &&
               gamma4 - gamma3 == gamma1 + gamma2 + int(w_inside) - int(z_inside);
    }
};

namespace detail {

// Alpha gaps met by the positive path.
inline std::vector<bool> gaps_on_path(const Combinatorial& c, const PositivePath& path) {
    std::vector<bool> on(std::size_t(c.p), false);
    for (auto& x : path.crossings)
        if (x.edge < c.p) on[std::size_t(x.edge)] = true;
    return on;
}

// beta segment k traversed under orientation ob: (from, to, kind)
struct OrientedSegment {
    int from, to;
    Strand kind;
};

inline OrientedSegment oriented_segment(const Combinatorial& c, int ob, int k) {
    int i = c.beta[std::size_t(k)], j = c.beta[std::size_t((k + 1) % c.p)];
    if (ob < 0) std::swap(i, j);
    return {i, j, strand_kind(ob * c.eps[std::size_t(i)], ob * c.eps[std::size_t(j)])};
}

inline int rainbow_count(const Combinatorial& c, int ob, bool left) {
    int n = 0;
    for (int k = 0; k < c.p; ++k) {
        Strand s = oriented_segment(c, ob, k).kind;
        if (s == (left ? Strand::RainbowLeft : Strand::RainbowRight)) ++n;
    }
    return n;
}

// alpha gaps from T_from forward to T_to
inline std::vector<int> arc_gaps(int p, int from, int to) {
    std::vector<int> g;
    for (int m = from; m != to; m = (m + 1) % p) g.push_back(m);
    return g;
}

}  // namespace detail

struct LengthAssignment {
    int q = 0;
    std::vector<long> gap_len;
    long total() const { return std::accumulate(gap_len.begin(), gap_len.end(), 0L); }
};

inline LengthAssignment assign_lengths(const Combinatorial& c, const PositivePath& path) {
    LengthAssignment la;
    const int ob = path.beta_orientation;
    la.q = detail::rainbow_count(c, ob, true);
    if (detail::rainbow_count(c, ob, false) != la.q) throw InvariantViolation("rainbow families have different sizes");
    auto on = detail::gaps_on_path(c, path);
    for (int g = 0; g < c.p; ++g) la.gap_len.push_back(on[std::size_t(g)] ? 2L * la.q + 1 : 1L);
    return la;
}

namespace detail {

struct RectangleArcs {
    int e1, e2;                // beta segments: downward and upward band
    std::vector<int> g3, g4;   // alpha gaps of e3 (w side) and e4 (z side)
};

// For each (downward band e1, upward band e2) the strip R between them, east of e1 and west of e2, has
// alpha edges e3 on the side of w and e4 on the side of z. With w below alpha the picture is turned
// over: up and down, east and west exchange.
inline std::vector<RectangleArcs> rectangle_arcs(const Combinatorial& c, int ob) {
    const int p = c.p;
    const int wside = c.w.side;
    if (wside == c.z.side) throw InvalidDiagram("w and z lie on the same side of alpha");
    struct B {
        int seg, bottom, top;
        bool up;
    };
    std::vector<B> bands;
    for (int k = 0; k < p; ++k) {
        auto [i, j, s] = oriented_segment(c, ob, k);
        if (s == Strand::BandUp) bands.push_back({k, i, j, wside == 0});
        if (s == Strand::BandDown) bands.push_back({k, j, i, wside != 0});
    }
    auto arc = [&](int a, int b) { return wside == 0 ? arc_gaps(p, a, b) : arc_gaps(p, b, a); };
    std::vector<RectangleArcs> out;
    for (auto& e1 : bands) {
        if (e1.up) continue;
        for (auto& e2 : bands) {
            if (!e2.up) continue;
            auto bottom = arc(e1.bottom, e2.bottom), top = arc(e1.top, e2.top);
            if (wside == 0)
                out.push_back({e1.seg, e2.seg, bottom, top});
            else
                out.push_back({e1.seg, e2.seg, top, bottom});
        }
    }
    return out;
}

}  // namespace detail

inline std::vector<RectangleCheck> check_rectangle_inequality(const Combinatorial& c, const PositivePath& path,
                                                              bool throw_on_violation = true) {
    const int p = c.p;
    LengthAssignment la = assign_lengths(c, path);
    std::vector<long> gap_hits(std::size_t(p), 0);
    std::vector<int> seg_hits(std::size_t(p), 0);
    for (auto& x : path.crossings) {
        if (x.edge < p)
            ++gap_hits[std::size_t(x.edge)];
        else
            ++seg_hits[std::size_t(x.edge - p)];
    }
    auto sum = [](const std::vector<int>& gs, const std::vector<long>& v) {
        long n = 0;
        for (int g : gs) n += v[std::size_t(g)];
        return n;
    };
    auto has = [](const std::vector<int>& gs, int g) { return std::find(gs.begin(), gs.end(), g) != gs.end(); };
    std::vector<RectangleCheck> out;
    for (auto& ra : detail::rectangle_arcs(c, path.beta_orientation)) {
        RectangleCheck rc;
        rc.down_band = ra.e1;
        rc.up_band = ra.e2;
        rc.l3 = sum(ra.g3, la.gap_len);
        rc.l4 = sum(ra.g4, la.gap_len);
        rc.beta3 = int(ra.g3.size()) + 1;
        rc.beta4 = int(ra.g4.size()) + 1;
        rc.gamma1 = seg_hits[std::size_t(ra.e1)];
        rc.gamma2 = seg_hits[std::size_t(ra.e2)];
        rc.gamma3 = int(sum(ra.g3, gap_hits));
        rc.gamma4 = int(sum(ra.g4, gap_hits));
        rc.w_inside = has(ra.g3, c.w.gap);
        rc.z_inside = has(ra.g4, c.z.gap);
        rc.q = la.q;
        out.push_back(rc);
        if (throw_on_violation && rc.l3 > rc.l4)
            throw InvariantViolation("rectangle inequality fails: l3 = " + std::to_string(rc.l3) +
                                     " > l4 = " + std::to_string(rc.l4));
    }
    return out;
}

// ---- relabelling ----

// The diagram turned over by the half turn (x, y) -> (-x, -y); alpha is re-oriented to keep its direction.
inline Combinatorial half_turn(const Combinatorial& c) {
    const int p = c.p;
    Combinatorial r;
    r.p = p;
    r.eps.assign(std::size_t(p), 0);
    for (int i = 0; i < p; ++i) r.eps[std::size_t(p - 1 - i)] = -c.eps[std::size_t(i)];
    for (int k = 0; k < p; ++k) r.beta.push_back(p - 1 - c.beta[std::size_t(k)]);
    auto slot = [&](Slot x) { return Slot{1 - x.side, ((p - 2 - x.gap) % p + p) % p}; };
    r.w = slot(c.w);
    r.z = slot(c.z);
    return r;
}

// Mirror image: reflection across alpha followed by exchanging the basepoints.
inline Combinatorial mirror(const Combinatorial& c) {
    Combinatorial r = c;
    for (auto& e : r.eps) e = -e;
    r.w = Slot{1 - c.z.side, c.z.gap};
    r.z = Slot{1 - c.w.side, c.w.gap};
    return r;
}

// Equal up to the starting points of alpha and beta, basepoints compared by region.
inline bool isomorphic(const Combinatorial& a, const Combinatorial& b) {
    if (a.p != b.p) return false;
    const int p = a.p;
    const Faces Fb = faces(b);
    for (int s = 0; s < p; ++s) {
        bool eps_ok = true;
        for (int i = 0; i < p && eps_ok; ++i) eps_ok = a.eps[std::size_t(i)] == b.eps[std::size_t((i + s) % p)];
        if (!eps_ok) continue;
        auto mp = [&](Slot x) { return Fb.slot(Slot{x.side, (x.gap + s) % p}); };
        for (int k = 0; k < p; ++k) {
            bool ok = true;
            for (int m = 0; m < p && ok; ++m)
                ok = (a.beta[std::size_t(m)] + s) % p == b.beta[std::size_t((m + k) % p)];
            if (ok && mp(a.w) == Fb.slot(b.w) && mp(a.z) == Fb.slot(b.z)) return true;
        }
    }
    return false;
}

// ---- closed positive curve ----

struct CurveCrossings {
    int alpha = 0, beta = 0;
    bool positive = true;
};

// Crossings of g with alpha and with beta (oriented by ob); positive when g always passes from right to left.
inline CurveCrossings curve_crossings(const CurveDiagram& d, const Curve& g, int ob) {
    CurveCrossings cc;
    auto scan = [&](const Curve& c, int orient, int& count) {
        for (std::size_t i = 0; i < c.segs(); ++i)
            for (std::size_t j = 0; j < g.segs(); ++j) {
                const QPt &a0 = c.pts[i], &a1 = c.pts[i + 1], &b0 = g.pts[j], &b1 = g.pts[j + 1];
                detail::for_translates(a0, a1, b0, b1, [&](const QPt& v) {
                    SegHit h = segment_hit(a0, a1, b0 + v, b1 + v);
                    if (h.kind == SegHit::None) return;
                    if (h.kind != SegHit::Proper) throw InvalidDiagram("curve meets the diagram non-transversally");
                    ++count;
                    if (qsign(cross(orient * (a1 - a0), b1 - b0)) <= 0) cc.positive = false;
                });
            }
    };
    scan(d.alpha, 1, cc.alpha);
    scan(d.beta, ob, cc.beta);
    return cc;
}

inline bool passes_through(const Curve& g, const QPt& P) {
    for (std::size_t j = 0; j < g.segs(); ++j) {
        const QPt &b0 = g.pts[j], &b1 = g.pts[j + 1];
        bool hit = false;
        detail::for_translates(P, P, b0, b1, [&](const QPt& v) {
            QPt a = b0 + v, b = b1 + v;
            if (cross(b - a, P - a) != 0) return;
            Q t = dot(P - a, b - a) / dot(b - a, b - a);
            if (t >= 0 && t <= 1) hit = true;
        });
        if (hit) return true;
    }
    return false;
}

struct PositiveCurve {
    CurveDiagram diagram;       // realization carrying gamma
    Curve gamma;
    int beta_orientation = 1;
    std::vector<long> gap_len;  // alpha gap lengths of the realization
    Q slope;                    // leaf direction (slope, 1), x measured in units of the alpha length
    int alpha_pairing = 0, beta_pairing = 0;  // [alpha].[gamma], [beta].[gamma]
    bool mirrored = false;      // built on the mirror of a negative diagram
};

namespace detail {

// Gap lengths M*l + mu: the assigned lengths, perturbed so that every rectangle pair is strict.
inline std::vector<long> window_lengths(const Combinatorial& c, const PositivePath& path, const LengthAssignment& la) {
    const int p = c.p;
    std::vector<std::vector<int>> tight;
    for (auto& ra : rectangle_arcs(c, path.beta_orientation)) {
        std::vector<int> cf(std::size_t(p), 0);
        for (int g : ra.g4) ++cf[std::size_t(g)];
        for (int g : ra.g3) --cf[std::size_t(g)];
        long v = 0;
        for (int g = 0; g < p; ++g) v += cf[std::size_t(g)] * la.gap_len[std::size_t(g)];
        if (v < 0) throw InvariantViolation("rectangle inequality fails");
        if (v == 0) tight.push_back(cf);
    }
    std::vector<long> mu(std::size_t(p), 0);
    bool done = tight.empty();
    for (int round = 0; round < 100000 && !done; ++round) {
        done = true;
        for (auto& cf : tight) {
            long v = 0;
            for (int g = 0; g < p; ++g) v += cf[std::size_t(g)] * mu[std::size_t(g)];
            if (v > 0) continue;
            for (int g = 0; g < p; ++g) mu[std::size_t(g)] += cf[std::size_t(g)];
            done = false;
        }
    }
    if (!done) throw InvariantViolation("no gap lengths separate the band directions");
    long m = 0;
    for (long x : mu) m = std::max(m, x < 0 ? -x : x);
    const long M = long(p) * m + 1;
    std::vector<long> len;
    for (int g = 0; g < p; ++g) len.push_back(M * la.gap_len[std::size_t(g)] + mu[std::size_t(g)]);
    return len;
}

struct LeafModel {
    CurveDiagram d;             // coordinates: alpha has length L, the annulus height is 1
    std::vector<int> owner;     // beta segment -> beta strand, -1 for the short pieces through alpha
    std::vector<Q> X;           // alpha positions
    Q L;
    QPt v;                      // leaf direction
    long period = 0;            // passes before the leaf closes
};

inline LeafModel leaf_model(const Combinatorial& c, int ob, const std::vector<long>& len, Q& slope_out) {
    const int p = c.p;
    LeafModel m;
    m.X.assign(std::size_t(p) + 1, 0);
    for (int g = 0; g < p; ++g) m.X[std::size_t(g) + 1] = m.X[std::size_t(g)] + Q(len[std::size_t(g)]);
    m.L = m.X[std::size_t(p)];
    const Q L = m.L;
    auto X = [&](int i) { return m.X[std::size_t(i)]; };
    struct Band {
        int seg, bottom, top;
        bool up;
        Q lift;
    };
    std::vector<Band> bands;
    std::vector<int> bottom_foot(std::size_t(p), 0), top_foot(std::size_t(p), 0);
    for (int k = 0; k < p; ++k) {
        int i = c.beta[std::size_t(k)], j = c.beta[std::size_t((k + 1) % p)];
        Strand s = strand_kind(c.eps[std::size_t(i)], c.eps[std::size_t(j)]);
        bool up = oriented_segment(c, ob, k).kind == Strand::BandUp;
        if (s == Strand::BandUp) bands.push_back({k, i, j, up, 0});
        if (s == Strand::BandDown) bands.push_back({k, j, i, up, 0});
    }
    if (bands.empty()) throw InvalidDiagram("diagram has no band");
    for (auto& b : bands) bottom_foot[std::size_t(b.bottom)] = top_foot[std::size_t(b.top)] = 1;
    std::sort(bands.begin(), bands.end(), [](auto& a, auto& b) { return a.bottom < b.bottom; });
    bands[0].lift = X(bands[0].top) + L * qfloor((X(bands[0].bottom) - X(bands[0].top)) / L + Q(1, 2));
    for (std::size_t n = 1; n < bands.size(); ++n)
        bands[n].lift = X(bands[n].top) + L * (qfloor((bands[n - 1].lift - X(bands[n].top)) / L) + 1);
    if (bands.back().lift >= bands[0].lift + L) throw InvalidDiagram("bands cross");
    std::optional<Q> lo, hi;
    for (auto& b : bands) {
        Q d = b.lift - X(b.bottom);
        if (b.up && (!hi || d < *hi)) hi = d;
        if (!b.up && (!lo || d > *lo)) lo = d;
    }
    if (!lo) lo = *hi - 2;
    if (!hi) hi = *lo + 2;
    if (!(*lo < *hi)) throw InvariantViolation("band directions do not separate");
    // leaf slope a/n (in units of L) strictly inside the window with gcd(a, n) = 1 and n > L: the leaf
    // closes after n passes and meets alpha at spacing L/n < 1, so it visits every region
    Q kappa;
    for (long n = L.get_num().get_si() + 1;; ++n) {
        Q a_lo = *lo * n / L, a_hi = *hi * n / L;
        bool found = false;
        for (mpz_class a = qfloor(a_lo).get_num() + 1; Q(a) < a_hi; ++a)
            if (gcd(a, mpz_class(n)) == 1) {
                kappa = Q(a) * L / n;
                kappa.canonicalize();
                found = true;
                break;
            }
        if (found) break;
    }
    slope_out = kappa / L;
    slope_out.canonicalize();
    m.period = slope_out.get_den().get_si();
    const QPt v{kappa, 1};
    m.v = v;
    // rainbow covers and nesting depth
    struct Cover {
        int from, to, dir, len, depth = 1;
        bool top;
    };
    std::map<int, Cover> cover;
    for (int k = 0; k < p; ++k) {
        int i = c.beta[std::size_t(k)], j = c.beta[std::size_t((k + 1) % p)];
        Strand s = strand_kind(c.eps[std::size_t(i)], c.eps[std::size_t(j)]);
        if (s == Strand::BandUp || s == Strand::BandDown) continue;
        bool top = s == Strand::RainbowRight;
        const auto& feet = top ? top_foot : bottom_foot;
        auto clear = [&](int a, int b) {
            for (int x = (a + 1) % p; x != b; x = (x + 1) % p)
                if (feet[std::size_t(x)]) return false;
            return true;
        };
        if (clear(i, j))
            cover[k] = {i, j, 1, (j - i + p) % p, 1, top};
        else if (clear(j, i))
            cover[k] = {i, j, -1, (i - j + p) % p, 1, top};
        else
            throw InvalidDiagram("rainbow encloses a band foot");
    }
    std::vector<int> order;
    for (auto& [k, cv] : cover) order.push_back(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return cover[a].len < cover[b].len; });
    int D = 0;
    for (int a : order) {
        Cover& A = cover[a];
        int sa = A.dir > 0 ? A.from : A.to;
        for (int b : order) {
            const Cover& B = cover[b];
            if (b == a || B.top != A.top || B.len >= A.len) continue;
            int sb = B.dir > 0 ? B.from : B.to;
            if ((sb - sa + p) % p + B.len <= A.len) A.depth = std::max(A.depth, B.depth + 1);
        }
        D = std::max(D, A.depth);
    }
    Q K = (kappa < 0 ? -kappa : kappa) + 1;
    for (auto& b : bands) {
        Q e = b.lift - X(b.bottom) - kappa;
        K += e < 0 ? -e : e;
    }
    const Q unit = 1 / (4 * (D + 1) * K);
    const Q eta = unit / 4;
    // strands: start representative, vertices, end representative (annulus coordinates)
    struct Piece {
        QPt start;
        std::vector<QPt> pts;
        QPt end;
    };
    auto lift_of = [&](int seg) -> const Band& {
        for (auto& b : bands)
            if (b.seg == seg) return b;
        throw std::logic_error("band lookup");
    };
    std::vector<Piece> pieces;
    for (int k = 0; k < p; ++k) {
        int i = c.beta[std::size_t(k)], j = c.beta[std::size_t((k + 1) % p)];
        Strand s = strand_kind(c.eps[std::size_t(i)], c.eps[std::size_t(j)]);
        Piece pc;
        if (s == Strand::BandUp) {
            const Band& b = lift_of(k);
            pc.start = {X(i), 0};
            pc.end = {b.lift, 1};
            pc.pts = {pc.start + eta * v, pc.end - eta * v};
        } else if (s == Strand::BandDown) {
            const Band& b = lift_of(k);
            pc.start = {b.lift, 1};
            pc.end = {X(j), 0};
            pc.pts = {pc.start - eta * v, pc.end + eta * v};
        } else {
            const Cover& cv = cover[k];
            Q xj = cv.dir > 0 ? Q(X(j) + (j < i ? L : Q(0))) : Q(X(j) - (j > i ? L : Q(0)));
            Q h = unit * cv.depth;
            if (cv.top) {
                pc.start = {X(i), 1};
                pc.end = {xj, 1};
                pc.pts = {pc.start - h * v, pc.end - h * v};
            } else {
                pc.start = {X(i), 0};
                pc.end = {xj, 0};
                pc.pts = {pc.start + h * v, pc.end + h * v};
            }
        }
        pieces.push_back(pc);
    }
    Curve& beta = m.d.beta;
    const int i0 = c.beta[0];
    QPt anchor = pieces[0].start;
    beta.pts.push_back(anchor - c.eps[std::size_t(i0)] * (eta / 2) * v);
    m.owner.push_back(-1);
    for (int k = 0; k < p; ++k) {
        const Piece& pc = pieces[std::size_t(k)];
        QPt t = anchor - pc.start;
        for (std::size_t n = 0; n < pc.pts.size(); ++n) {
            beta.pts.push_back(pc.pts[n] + t);
            m.owner.push_back(n + 1 < pc.pts.size() ? k : -1);
        }
        anchor = pc.end + t;
    }
    QPt cls = anchor - pieces[0].start;
    beta.pts.push_back(beta.pts[0] + cls);
    m.d.alpha.pts = {{Q(-1, 2), 0}, {L - Q(1, 2), 0}};
    auto mid = [&](int g) -> Q { return X(g) + Q(len[std::size_t(g)], 2); };
    auto height = [&](int side) { return side == 0 ? Q(eta / 2) : Q(1 - eta / 2); };
    m.d.w = {mid(c.w.gap), height(c.w.side)};
    m.d.z = {mid(c.z.gap), height(c.z.side)};
    return m;
}

inline Curve scaled(const Curve& c, const Q& L) {
    Curve r = c;
    for (auto& q : r.pts) q.x /= L;
    return r;
}

struct LeafHit {
    Q s;
    int edge;  // alpha gap g < p, beta segment p + k
    QPt dir;   // direction of the crossed curve
};

// Crossings of the leaf piece P + s v, s in (s0, s1] (or [s1, s0) backward), in order of travel.
inline std::vector<LeafHit> leaf_hits(const LeafModel& m, const Combinatorial& c, const QPt& P, const Q& s0, const Q& s1) {
    const int p = c.p;
    std::vector<LeafHit> out;
    const QPt A = P + s0 * m.v, B = P + s1 * m.v;
    auto add = [&](const QPt& a0, const QPt& a1, int edge_or_owner, bool is_alpha) {
        // periods of the model: (L, 0) and (0, 1)
        const Q L = m.L;
        Q ymin = std::min({a0.y, a1.y}), ymax = std::max({a0.y, a1.y});
        Q xmin = std::min({a0.x, a1.x}), xmax = std::max({a0.x, a1.x});
        Q Ay = std::min(A.y, B.y), By = std::max(A.y, B.y), Ax = std::min(A.x, B.x), Bx = std::max(A.x, B.x);
        long ny0 = qceil(Ay - ymax).get_num().get_si(), ny1 = qfloor(By - ymin).get_num().get_si();
        long nx0 = qceil((Ax - xmax) / L).get_num().get_si(), nx1 = qfloor((Bx - xmin) / L).get_num().get_si();
        for (long ny = ny0; ny <= ny1; ++ny)
            for (long nx = nx0; nx <= nx1; ++nx) {
                QPt tv{L * nx, Q(ny)};
                SegHit h = segment_hit(A, B, a0 + tv, a1 + tv);
                if (h.kind == SegHit::None) continue;
                Q s = s0 + h.s * (s1 - s0);
                if (s == s0) continue;
                if (h.kind != SegHit::Proper || edge_or_owner < 0)
                    throw InvalidDiagram("leaf is not generic");
                int edge = edge_or_owner;
                if (is_alpha) {
                    Q x = A.x + h.s * (B.x - A.x);
                    Q xr = x - L * qfloor(x / L);
                    edge = -1;
                    for (int i = 0; i < p; ++i)
                        if (xr > m.X[std::size_t(i)] && xr < m.X[std::size_t(i) + 1]) edge = i;
                    if (edge < 0) throw InvalidDiagram("leaf is not generic");
                }
                out.push_back({s, edge, a1 - a0});
            }
    };
    add(m.d.alpha.pts[0], m.d.alpha.pts[1], 0, true);
    for (std::size_t n = 0; n < m.d.beta.segs(); ++n)
        add(m.d.beta.pts[n], m.d.beta.pts[n + 1], m.owner[n] < 0 ? -1 : p + m.owner[n], false);
    const bool fwd = s1 > s0;
    std::sort(out.begin(), out.end(), [&](auto& a, auto& b) { return fwd ? a.s < b.s : a.s > b.s; });
    return out;
}

// Follows the leaf through w until it enters the region of z; returns the parameter just inside it.
inline Q follow_leaf(const LeafModel& m, const Combinatorial& c, const Faces& F, int ob, int dir) {
    const int p = c.p;
    const int target = F.slot(c.z);
    int face = F.slot(c.w);
    const long max_units = m.period + 2;
    Q s0 = 0;
    for (long u = 0; u < max_units; ++u) {
        Q s1 = s0 + dir;
        auto hits = leaf_hits(m, c, m.d.w, s0, s1);
        for (std::size_t n = 0; n < hits.size(); ++n) {
            const LeafHit& h = hits[n];
            int L = 0, R = 0;
            QPt d = h.dir;
            if (h.edge < p) {
                L = F.slot(Slot{0, h.edge});
                R = F.slot(Slot{1, h.edge});
            } else {
                L = F.left(h.edge);
                R = F.right(h.edge);
                if (ob < 0) {
                    std::swap(L, R);
                    d = Q(-1) * d;
                }
            }
            if (qsign(cross(d, m.v)) <= 0) throw InvariantViolation("leaf crosses beta negatively");
            int from = dir > 0 ? R : L, to = dir > 0 ? L : R;
            if (face != from) throw InvariantViolation("leaf and region structure disagree");
            face = to;
            if (face == target) {
                Q next = n + 1 < hits.size() ? hits[n + 1].s : s1;
                if (n + 1 >= hits.size()) {
                    auto more = leaf_hits(m, c, m.d.w, s1, s1 + dir);
                    if (!more.empty()) next = more.front().s;
                }
                return (h.s + next) / 2;
            }
        }
        s0 = s1;
    }
    throw InvariantViolation("leaf never reaches the region of z");
}

}  // namespace detail

// Positive simple closed curve through w and z, built by following a linear foliation from w.
inline PositiveCurve close_positive_curve(const Combinatorial& c_in) {
    check_combinatorial(c_in);
    const CoherenceVerdict v0 = check_coherence(c_in);
    if (!v0.coherent) throw NotFound("diagram is not coherent");
    const Combinatorial c1 = v0.sign < 0 ? mirror(c_in) : c_in;
    const Combinatorial c = c1.w.side == 0 ? c1 : half_turn(c1);
    const PositivePath path = find_positive_path(c);
    const int ob = path.beta_orientation;
    if (c.p == 1) {
        // a single region: any straight line through w meeting each curve once, with z moved onto it
        PositiveCurve out;
        out.mirrored = v0.sign < 0;
        out.beta_orientation = ob;
        out.gap_len = {1};
        CurveDiagram ds = realize(c);
        for (long a : {1L, -1L})
            for (long b : {1L, -1L}) {
                const QPt dir{Q(a), Q(b)};
                Curve g;
                g.pts = {ds.w, ds.w + dir};
                CurveDiagram e = ds;
                const QPt zm = ds.w + Q(37, 101) * dir;
                e.z = {qfrac(zm.x), qfrac(zm.y)};
                try {
                    detail::check_curve(g, "gamma");
                    if (!isomorphic(analyze(e).comb, c)) continue;
                    CurveCrossings cc = curve_crossings(e, g, ob);
                    if (!cc.positive) continue;
                    out.diagram = e;
                    out.gamma = g;
                    out.slope = Q(b) / Q(a);
                    out.alpha_pairing = intersection_number(e.alpha.cls(), g.cls());
                    out.beta_pairing = ob * intersection_number(e.beta.cls(), g.cls());
                    if (out.alpha_pairing != cc.alpha || out.beta_pairing != cc.beta) continue;
                    return out;
                } catch (const InvalidDiagram&) {
                }
            }
        throw InvariantViolation("no straight positive curve on the one-region diagram");
    }
    const LengthAssignment la = assign_lengths(c, path);
    check_rectangle_inequality(c, path);
    const std::vector<long> len = detail::window_lengths(c, path, la);
    PositiveCurve out;
    out.mirrored = v0.sign < 0;
    out.beta_orientation = ob;
    out.gap_len = len;
    detail::LeafModel m = detail::leaf_model(c, ob, len, out.slope);
    const Faces F = faces(c);
    {
        Analysis an = analyze(CurveDiagram{detail::scaled(m.d.alpha, m.L), detail::scaled(m.d.beta, m.L),
                                           {m.d.w.x / m.L, m.d.w.y}, {m.d.z.x / m.L, m.d.z.y}});
        if (!isomorphic(an.comb, c)) throw InvariantViolation("leaf realization differs from the diagram");
    }
    const Q sf = detail::follow_leaf(m, c, F, ob, 1);
    const Q sb = detail::follow_leaf(m, c, F, ob, -1);
    const QPt Gf = m.d.w + sf * m.v, Gb = m.d.w + sb * m.v;
    const Q L = m.L;
    auto nearest = [&](const QPt& base, const QPt& to) {
        return QPt{L * qfloor((to.x - base.x) / L + Q(1, 2)), qfloor(to.y - base.y + Q(1, 2))};
    };
    CurveDiagram ds{detail::scaled(m.d.alpha, L), detail::scaled(m.d.beta, L), {}, {}};
    auto unit = [&](const QPt& q) { return QPt{q.x / L, q.y}; };
    ds.w = {qfrac(m.d.w.x / L), qfrac(m.d.w.y)};
    ds.z = {qfrac(m.d.z.x / L), qfrac(m.d.z.y)};
    // close with a chord of the (convex) region of z; z moves to the middle of the chord
    const QPt back = Gb + nearest(Gb, Gf);
    for (long bx = -1; bx <= 1; ++bx)
        for (long by = -1; by <= 1; ++by) {
            const QPt gb = back + QPt{L * bx, Q(by)};
            Curve g;
            g.pts = {unit(Gb), unit(Gf), unit(gb)};
            Curve chord;
            chord.pts = {unit(Gf), unit(gb)};
            try {
                CurveCrossings cc = curve_crossings(ds, chord, ob);
                if (cc.alpha || cc.beta) continue;
                detail::check_curve(g, "gamma");
            } catch (const InvalidDiagram&) {
                continue;
            }
            QPt zm = unit(Q(1, 2) * (Gf + gb));
            ds.z = {qfrac(zm.x), qfrac(zm.y)};
            if (!isomorphic(analyze(ds).comb, c)) throw InvariantViolation("closing chord leaves the region of z");
            CurveCrossings cc = curve_crossings(ds, g, ob);
            if (!cc.positive) throw InvariantViolation("closed curve is not positive");
            out.diagram = ds;
            out.gamma = g;
            out.alpha_pairing = intersection_number(ds.alpha.cls(), g.cls());
            out.beta_pairing = ob * intersection_number(ds.beta.cls(), g.cls());
            if (out.alpha_pairing != cc.alpha || out.beta_pairing != cc.beta)
                throw InvariantViolation("closed curve pairings disagree with its crossings");
            return out;
        }
    throw InvariantViolation("cannot close the leaf inside the region of z");
}

inline PositiveCurve close_positive_curve(const CurveDiagram& d) { return close_positive_curve(combinatorial(d)); }

// ---- construction from braid parameters ----

namespace detail {

inline Q dist2_point_segment(const QPt& P, const QPt& A, const QPt& B) {
    QPt d = B - A;
    Q t = dot(P - A, d) / dot(d, d);
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    QPt f = A + t * d;
    return dot(P - f, P - f);
}

inline Q dist2_segments(const QPt& a0, const QPt& a1, const QPt& b0, const QPt& b1) {
    if (segment_hit(a0, a1, b0, b1).kind != SegHit::None) return 0;
    return std::min({dist2_point_segment(a0, b0, b1), dist2_point_segment(a1, b0, b1),
                     dist2_point_segment(b0, a0, a1), dist2_point_segment(b1, a0, a1)});
}

// Squared clearance of the bridge path: distances between distinct passes, and to Q, P, R and the line beta_1.
inline Q rho_clearance2(const BridgeGeometry& bg, const Q& beta_level) {
    std::vector<QPt> pts{bg.R};
    for (auto& x : bg.crossings) pts.push_back(bg.at(x.param));
    pts.push_back(bg.P);
    const std::size_t n = pts.size() - 1;
    std::optional<Q> best;
    auto upd = [&](const Q& v) {
        if (!best || v < *best) best = v;
    };
    auto near_translates = [&](const QPt& a0, const QPt& a1, const QPt& b0, const QPt& b1, auto&& f) {
        QPt one{1, 1};
        for_translates(a0 - one, a1 + one, b0, b1, f);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            near_translates(pts[i], pts[i + 1], pts[j], pts[j + 1], [&](const QPt& v) {
                bool zero = v.x == 0 && v.y == 0;
                if (zero && j <= i + 1) return;
                upd(dist2_segments(pts[i], pts[i + 1], pts[j] + v, pts[j + 1] + v));
            });
    const QPt Qp{0, 0};
    for (std::size_t i = 0; i < n; ++i)
        for (long vx = -2; vx <= long(bg.bp.omega) + 3; ++vx)
            for (long vy = -2; vy <= long(bg.bp.t) + 3; ++vy) {
                QPt v{Q(vx), Q(vy)};
                upd(dist2_point_segment(Qp + v, pts[i], pts[i + 1]));
                if (i + 1 != n) upd(dist2_point_segment(bg.P + v, pts[i], pts[i + 1]));
                if (i != 0) upd(dist2_point_segment(bg.R + v, pts[i], pts[i + 1]));
            }
    Q py = qfrac(bg.P.y - beta_level);
    upd(py * py);
    upd((1 - py) * (1 - py));
    return *best;
}

}  // namespace detail

// alpha = vertical meridian x = 1/2; beta = the horizontal meridian below tau_1 pushed along rho from R to P
// by finger moves; w = P, z = Q.
inline CurveDiagram construct_diagram(const BraidParams& bp, const BridgeGeometry& bg) {
    const Q eps1 = (1 - bg.a) / 2;
    const Q level = -eps1;
    const QPt r = bg.dir();
    const QPt nu{-r.y, r.x};
    const Q r2 = dot(r, r);
    // finger half-width delta*|r| must stay below a quarter of the clearance
    const Q clear2 = detail::rho_clearance2(bg, level);
    Q delta = 1;
    while (4 * 16 * delta * delta * r2 >= clear2) delta /= 2;
    const int t = bp.t;
    struct Finger {
        Q fx;  // position along beta_1
        std::vector<QPt> pts;
    };
    std::vector<Finger> fingers;
    for (int k = 1; k <= t; ++k) {
        const Q yk = Q(k) + level;
        const Q dk = delta * k / (t + 1);
        auto on_line = [&](const QPt& off) {
            Q s = (yk - bg.R.y - off.y) / r.y;
            return bg.R + off + s * r;
        };
        QPt A = on_line(dk * nu), B = on_line(-dk * nu);
        QPt C1 = bg.P + dk * r + dk * nu, C2 = bg.P + dk * r - dk * nu;
        QPt Xk = on_line({0, 0});
        QPt sh{-qfloor(Xk.x), -Q(k)};
        fingers.push_back({qfrac(Xk.x), {A + sh, C1 + sh, C2 + sh, B + sh}});
    }
    // start beta_1 in the widest gap between finger feet and alpha
    std::vector<Q> marks{Q(1, 2)};
    for (auto& f : fingers) marks.push_back(f.fx);
    std::sort(marks.begin(), marks.end());
    Q xs = 0, widest = -1;
    for (std::size_t i = 0; i < marks.size(); ++i) {
        Q lo = marks[i], hi = i + 1 < marks.size() ? marks[i + 1] : marks[0] + 1;
        if (hi - lo > widest) {
            widest = hi - lo;
            xs = (lo + hi) / 2;
        }
    }
    for (auto& f : fingers) {
        Q lift = qfloor(f.fx - xs);  // finger foot moves into (xs, xs+1)
        for (auto& q : f.pts) q = q - QPt{lift, 0};
        f.fx -= lift;
    }
    std::sort(fingers.begin(), fingers.end(), [](auto& u, auto& v) { return u.fx < v.fx; });
    CurveDiagram d;
    d.beta.pts.push_back({xs, level});
    for (auto& f : fingers)
        for (auto& q : f.pts) d.beta.pts.push_back(q);
    d.beta.pts.push_back({xs + 1, level});
    Q y0 = qfrac(level + Q(1, 2));
    d.alpha.pts = {{Q(1, 2), y0}, {Q(1, 2), y0 + 1}};
    d.w = {qfrac(bg.P.x), qfrac(bg.P.y)};
    d.z = {0, 0};
    // the pushed picture is drawn from the other side of the torus: reflect x -> 1-x
    for (auto& q : d.beta.pts) q.x = 1 - q.x;
    d.w.x = qfrac(1 - d.w.x);
    d.z.x = qfrac(1 - d.z.x);
    return d;
}

inline CurveDiagram construct_diagram(const BraidParams& bp) { return construct_diagram(bp, bridge_geometry(bp)); }

// ---- extraction ----

struct ExtractError : std::runtime_error {
    enum Kind { NotS3, Incoherent, SearchExhausted } kind;
    ExtractError(Kind k, const std::string& m) : std::runtime_error(m), kind(k) {}
};

// Unimodular M with M*[gamma] = (1,0), and the images of [alpha], [beta].
struct GammaBasis {
    using Vec = std::array<long, 2>;
    Vec gamma{}, alpha{}, beta{};
    std::array<long, 4> M{};  // row major
};

inline GammaBasis gamma_basis(const PositiveCurve& pc) {
    auto lvec = [](const QPt& v) {
        if (v.x.get_den() != 1 || v.y.get_den() != 1) throw InvariantViolation("non-integral homology class");
        return GammaBasis::Vec{v.x.get_num().get_si(), v.y.get_num().get_si()};
    };
    GammaBasis b;
    b.gamma = lvec(pc.gamma.cls());
    const long g1 = b.gamma[0], g2 = b.gamma[1];
    long x = 1, y = 0, x1 = 0, y1 = 1, r = g1, r1 = g2;
    while (r1 != 0) {
        long q = r / r1;
        std::tie(r, r1) = std::pair(r1, r - q * r1);
        std::tie(x, x1) = std::pair(x1, x - q * x1);
        std::tie(y, y1) = std::pair(y1, y - q * y1);
    }
    if (r < 0) x = -x, y = -y, r = -r;
    if (r != 1) throw InvariantViolation("gamma class is not primitive");
    b.M = {x, y, -g2, g1};
    auto apply = [&](const GammaBasis::Vec& v) {
        return GammaBasis::Vec{b.M[0] * v[0] + b.M[1] * v[1], b.M[2] * v[0] + b.M[3] * v[1]};
    };
    b.alpha = apply(lvec(pc.diagram.alpha.cls()));
    b.beta = apply(lvec(pc.diagram.beta.cls()));
    return b;
}

struct Extraction {
    BraidParams params;
    bool mirrored = false;
    GammaBasis basis;
    int hint_omega = 0, hint_t = 0;  // strand counts read off gamma
    int candidates_tried = 0;
};

inline Extraction extract_braid_params(const Combinatorial& c_in) {
    if (!ambient(c_in).is_s3) throw ExtractError(ExtractError::NotS3, "diagram is not of the three-sphere");
    Combinatorial c = is_reduced(c_in) ? c_in : reduce(c_in);
    CoherenceVerdict v = check_coherence(c);
    if (!v.coherent) throw ExtractError(ExtractError::Incoherent, "diagram is not coherent");
    Extraction ex;
    ex.mirrored = v.sign < 0;
    if (ex.mirrored) c = mirror(c);
    PositiveCurve pc = close_positive_curve(c);
    ex.basis = gamma_basis(pc);
    ex.hint_omega = int(std::abs(ex.basis.alpha[1])) - 1;
    ex.hint_t = int(std::abs(ex.basis.beta[1])) - 1;

    const Laurent delta = alexander_from_diagram(c);
    const long g = delta.hi();
    std::vector<BraidParams> cands = knot_sweep(c.p + 2);
    std::stable_sort(cands.begin(), cands.end(), [&](const BraidParams& a, const BraidParams& b) {
        auto key = [&](const BraidParams& x) {
            bool hit = (x.omega == ex.hint_omega && x.t == ex.hint_t) || (x.omega == ex.hint_t && x.t == ex.hint_omega);
            return std::tuple(!hit, x.t + x.omega, x.omega, x.t, x.b0, x.b1);
        };
        return key(a) < key(b);
    });
    for (auto& bp : cands) {
        if (genus(bp) != g) continue;
        if (burau_alexander(braid_from_params(bp)) != delta) continue;
        ++ex.candidates_tried;
        if (reduce(combinatorial(construct_diagram(bp))).p != c.p) continue;
        ex.params = bp;
        return ex;
    }
    throw ExtractError(ExtractError::SearchExhausted,
                       "no braid parameters with t+omega <= " + std::to_string(c.p + 2) + " match the diagram");
}

inline Extraction extract_braid_params(const CurveDiagram& d) { return extract_braid_params(combinatorial(d)); }

inline CurveDiagram figure_eight_diagram() { return from_params({5, 2, 0, 1}); }

}  // namespace l11

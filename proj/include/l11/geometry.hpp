#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>

namespace l11 {

using Q = mpq_class;

struct QPt {
    Q x, y;
    friend QPt operator+(const QPt& a, const QPt& b) { return {a.x + b.x, a.y + b.y}; }
    friend QPt operator-(const QPt& a, const QPt& b) { return {a.x - b.x, a.y - b.y}; }
    friend QPt operator*(const Q& k, const QPt& a) { return {k * a.x, k * a.y}; }
    friend bool operator==(const QPt& a, const QPt& b) { return a.x == b.x && a.y == b.y; }
};

// n/d in lowest terms (mpq_class(n, d) does not canonicalize).
inline Q qq(long n, long d) {
    Q v(n, d);
    v.canonicalize();
    return v;
}

inline Q qfloor(const Q& v) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return Q(f);
}
inline Q qceil(const Q& v) { return -qfloor(-v); }
inline Q qfrac(const Q& v) { return v - qfloor(v); }
inline Q cross(const QPt& a, const QPt& b) { return a.x * b.y - a.y * b.x; }
inline Q dot(const QPt& a, const QPt& b) { return a.x * b.x + a.y * b.y; }
inline int qsign(const Q& v) { return sgn(v); }

// Intersection of closed segments [a,b] and [c,d].
struct SegHit {
    enum Kind { None, Proper, Touch, Overlap } kind = None;
    Q s, t;  // parameters on ab and cd (valid for Proper and Touch)
};

inline SegHit segment_hit(const QPt& a, const QPt& b, const QPt& c, const QPt& d) {
    SegHit h;
    const QPt r = b - a, q = d - c;
    const Q den = cross(r, q);
    const QPt ac = c - a;
    if (den == 0) {
        if (cross(ac, r) != 0) return h;
        // collinear: compare projections
        const Q rr = dot(r, r);
        Q t0 = dot(ac, r) / rr, t1 = dot(d - a, r) / rr;
        if (t0 > t1) std::swap(t0, t1);
        if (t1 < 0 || t0 > 1) return h;
        if (t1 == 0 || t0 == 1) {
            h.kind = SegHit::Touch;
            h.s = t1 == 0 ? Q(0) : Q(1);
            h.t = dot((a + h.s * r) - c, q) / dot(q, q);
            return h;
        }
        h.kind = SegHit::Overlap;
        return h;
    }
    h.s = cross(ac, q) / den;
    h.t = cross(ac, r) / den;
    if (h.s < 0 || h.s > 1 || h.t < 0 || h.t > 1) return h;
    h.kind = (h.s == 0 || h.s == 1 || h.t == 0 || h.t == 1) ? SegHit::Touch : SegHit::Proper;
    return h;
}

}  // namespace l11

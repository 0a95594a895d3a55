#pragma once

#include <gmpxx.h>
#include <json.hpp>

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace l11 {

// Integer Laurent polynomial in one variable t.
class Laurent {
public:
    Laurent() = default;
    Laurent(long c) { if (c) coef_[0] = c; }
    static Laurent monomial(long e, const mpz_class& c = 1) {
        Laurent p;
        if (c != 0) p.coef_[e] = c;
        return p;
    }

    bool is_zero() const { return coef_.empty(); }
    long lo() const { return coef_.empty() ? 0 : coef_.begin()->first; }
    long hi() const { return coef_.empty() ? 0 : coef_.rbegin()->first; }
    mpz_class operator[](long e) const {
        auto it = coef_.find(e);
        return it == coef_.end() ? mpz_class(0) : it->second;
    }
    const std::map<long, mpz_class>& terms() const { return coef_; }
    std::size_t term_count() const { return coef_.size(); }

    void add_term(long e, const mpz_class& c) {
        if (c == 0) return;
        auto& v = coef_[e];
        v += c;
        if (v == 0) coef_.erase(e);
    }

    Laurent& operator+=(const Laurent& o) {
        for (auto& [e, c] : o.coef_) add_term(e, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (auto& [e, c] : o.coef_) add_term(e, -c);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    Laurent operator-() const {
        Laurent r;
        for (auto& [e, c] : coef_) r.coef_[e] = -c;
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (auto& [e1, c1] : a.coef_)
            for (auto& [e2, c2] : b.coef_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.coef_ == b.coef_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    Laurent shifted(long k) const {
        Laurent r;
        for (auto& [e, c] : coef_) r.coef_[e + k] = c;
        return r;
    }
    mpz_class eval1() const {
        mpz_class s = 0;
        for (auto& [e, c] : coef_) s += c;
        return s;
    }
    // substitute t -> t^-1
    Laurent reflected() const {
        Laurent r;
        for (auto& [e, c] : coef_) r.coef_[-e] = c;
        return r;
    }

    // Exact division; throws if b does not divide a.
    friend Laurent exact_div(const Laurent& a, const Laurent& b) {
        if (b.is_zero()) throw std::domain_error("division by zero polynomial");
        Laurent rem = a, q;
        const long bl = b.hi();
        const mpz_class& lead = b.coef_.rbegin()->second;
        while (!rem.is_zero()) {
            long e = rem.hi();
            if (rem.hi() - rem.lo() < b.hi() - b.lo()) throw std::domain_error("inexact polynomial division");
            mpz_class c = rem.coef_.rbegin()->second;
            if (c % lead != 0) throw std::domain_error("inexact polynomial division");
            mpz_class k = c / lead;
            Laurent m = monomial(e - bl, k);
            q += m;
            rem -= m * b;
        }
        return q;
    }

    std::string str() const;

private:
    std::map<long, mpz_class> coef_;
};

inline Laurent T(long e = 1) { return Laurent::monomial(e); }

namespace detail {

using Dense = std::vector<mpz_class>;  // index = exponent, trimmed

inline void trim(Dense& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline mpz_class content(const Dense& a) {
    mpz_class g = 0;
    for (auto& c : a) g = gcd(g, c);
    return g;
}

inline Dense primitive(Dense a) {
    mpz_class g = content(a);
    if (g != 0)
        for (auto& c : a) c /= g;
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
    return a;
}

// pseudo-remainder of a by b
inline Dense prem(Dense a, const Dense& b) {
    const std::size_t db = b.size() - 1;
    const mpz_class& lb = b.back();
    while (a.size() >= b.size()) {
        mpz_class la = a.back();
        std::size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lb;
        for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
        trim(a);
    }
    return a;
}

inline Dense to_dense(const Laurent& p) {
    Dense d;
    if (p.is_zero()) return d;
    long lo = p.lo();
    d.assign(p.hi() - lo + 1, 0);
    for (auto& [e, c] : p.terms()) d[e - lo] = c;
    return d;
}

inline Laurent from_dense(const Dense& d) {
    Laurent p;
    for (std::size_t i = 0; i < d.size(); ++i) p.add_term(long(i), d[i]);
    return p;
}

}  // namespace detail

// gcd in Z[t,t^-1] up to units, returned with lowest exponent 0 and positive leading term.
inline Laurent gcd(const Laurent& a, const Laurent& b) {
    using namespace detail;
    auto unit_normal = [](const Laurent& p) {
        Dense d = to_dense(p);
        if (!d.empty() && d.back() < 0)
            for (auto& c : d) c = -c;
        return from_dense(d);
    };
    if (a.is_zero()) return unit_normal(b);
    if (b.is_zero()) return unit_normal(a);
    Dense x = to_dense(a), y = to_dense(b);
    mpz_class g = ::gcd(content(x), content(y));
    x = primitive(x);
    y = primitive(y);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        Dense r = prem(x, y);
        x = y;
        y = r.empty() ? r : primitive(r);
    }
    x = primitive(x);
    for (auto& c : x) c *= g;
    return from_dense(x);
}

// Symmetric normalization: Δ(t) = Δ(t^-1), Δ(1) > 0.
inline Laurent alexander_normalize(const Laurent& p) {
    if (p.is_zero()) return p;
    long s = p.lo() + p.hi();
    if (s % 2 != 0) throw std::domain_error("polynomial has no symmetric normalization");
    Laurent q = p.shifted(-s / 2);
    if (q.eval1() < 0) q = -q;
    if (q.eval1() == 0 && q.terms().rbegin()->second < 0) q = -q;
    return q;
}

inline std::string Laurent::str() const {
    if (coef_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : coef_) {
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        os << "t";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

// Parses the canonical text form written by str(), e.g. "t^-1 - 1 + t".
inline Laurent parse_laurent(const std::string& s) {
    Laurent p;
    std::size_t i = 0, n = s.size();
    auto skip = [&] { while (i < n && s[i] == ' ') ++i; };
    skip();
    if (s.substr(i) == "0") return p;
    int sign = 1;
    bool need_sign = false;
    while (true) {
        skip();
        if (i >= n) break;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (need_sign) {
            throw std::invalid_argument("bad polynomial: " + s);
        }
        mpz_class c = 1;
        long e = 0;
        bool have_num = false;
        std::size_t j = i;
        while (j < n && isdigit((unsigned char)s[j])) ++j;
        if (j > i) {
            c = mpz_class(s.substr(i, j - i));
            have_num = true;
            i = j;
        }
        if (i < n && s[i] == '*') ++i;
        if (i < n && s[i] == 't') {
            ++i;
            e = 1;
            if (i < n && s[i] == '^') {
                ++i;
                std::size_t k = i;
                if (k < n && s[k] == '-') ++k;
                while (k < n && isdigit((unsigned char)s[k])) ++k;
                if (k == i) throw std::invalid_argument("bad exponent: " + s);
                e = std::stol(s.substr(i, k - i));
                i = k;
            }
        } else if (!have_num) {
            throw std::invalid_argument("bad polynomial: " + s);
        }
        p.add_term(e, sign * c);
        sign = 1;
        need_sign = true;
    }
    return p;
}

// (n x n) determinant over Z[t,t^-1] by fraction-free elimination.
inline Laurent determinant(std::vector<std::vector<Laurent>> m) {
    const std::size_t n = m.size();
    if (n == 0) return Laurent(1);
    Laurent prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return Laurent();
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = Laurent();
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// {"-1": 1, "0": -1, "1": 1}; coefficients too large for a long are written as strings.
inline nlohmann::json to_json(const Laurent& p) {
    nlohmann::json j = nlohmann::json::object();
    for (auto& [e, c] : p.terms()) {
        if (c.fits_slong_p())
            j[std::to_string(e)] = c.get_si();
        else
            j[std::to_string(e)] = c.get_str();
    }
    return j;
}

inline Laurent laurent_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("polynomial JSON must be an object");
    Laurent p;
    for (auto& [k, v] : j.items()) {
        std::size_t used = 0;
        long e = std::stol(k, &used);
        if (used != k.size()) throw std::invalid_argument("bad exponent key " + k);
        if (v.is_number_integer())
            p.add_term(e, mpz_class(v.get<long>()));
        else if (v.is_string())
            p.add_term(e, mpz_class(v.get<std::string>()));
        else
            throw std::invalid_argument("bad coefficient for exponent " + k);
    }
    return p;
}

}  // namespace l11

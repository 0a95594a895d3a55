#pragma once

#include "braid.hpp"
#include "group.hpp"
#include "laurent.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace l11 {

using LMatrix = std::vector<std::vector<Laurent>>;

namespace detail {

inline LMatrix identity(std::size_t m) {
    LMatrix I(m, std::vector<Laurent>(m));
    for (std::size_t i = 0; i < m; ++i) I[i][i] = Laurent(1);
    return I;
}

inline LMatrix matmul(const LMatrix& a, const LMatrix& b) {
    const std::size_t n = a.size();
    LMatrix c(n, std::vector<Laurent>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

// Reduced Burau matrix of sigma_i^{sign} on n strands (size n-1).
inline LMatrix burau_letter(std::size_t n, int i, int sign) {
    const std::size_t m = n - 1;
    LMatrix S = identity(m);
    const std::size_t k = std::size_t(i - 1);
    if (sign > 0) {
        S[k][k] = -T(1);
        if (k >= 1) S[k][k - 1] = T(1);
        if (k + 1 < m) S[k][k + 1] = Laurent(1);
    } else {
        S[k][k] = -T(-1);
        if (k >= 1) S[k][k - 1] = Laurent(1);
        if (k + 1 < m) S[k][k + 1] = T(-1);
    }
    return S;
}

}  // namespace detail

inline LMatrix burau_matrix(const BraidWord& w) {
    w.validate();
    LMatrix M = detail::identity(std::size_t(w.strands - 1));
    for (auto& [i, s] : w.letters) M = detail::matmul(M, detail::burau_letter(std::size_t(w.strands), i, s));
    return M;
}

// Δ = det(I − B) · (1 − t)/(1 − t^n), symmetric-normalized.
inline Laurent burau_alexander(const BraidWord& w) {
    if (closure_components(w) != 1) throw std::invalid_argument("braid closure is a link, not a knot");
    const std::size_t m = std::size_t(w.strands - 1);
    LMatrix M = burau_matrix(w);
    LMatrix A = detail::identity(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) A[i][j] -= M[i][j];
    Laurent d = determinant(A);
    Laurent geo;  // 1 + t + ... + t^{n-1}
    for (int e = 0; e < w.strands; ++e) geo += T(e);
    return alexander_normalize(exact_div(d, geo));
}

inline Laurent torus_alexander(int p, int q) {
    if (p < 2 || q < 2 || std::gcd(p, q) != 1) throw std::invalid_argument("torus knot needs coprime p,q >= 2");
    Laurent num = (T(p * q) - Laurent(1)) * (T(1) - Laurent(1));
    Laurent den = (T(p) - Laurent(1)) * (T(q) - Laurent(1));
    return alexander_normalize(exact_div(num, den));
}

inline bool staircase_check(const Laurent& p) {
    if (p.is_zero()) return false;
    if (p.reflected() != p) return false;
    if (p.term_count() % 2 == 0) return false;
    int expect = 1;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const mpz_class& c = it->second;
        if (c != 1 && c != -1) return false;
        if (first) {
            if (c != 1) return false;
            first = false;
        } else if (c != expect) {
            return false;
        }
        expect = -expect;
    }
    return true;
}

// Free derivative of w with respect to generator g, abelianized by gens -> t^{deg}.
inline Laurent fox_derivative(const Word& w, int g, const std::vector<long>& deg) {
    Laurent r;
    long prefix = 0;
    for (auto& [h, e] : w.letters) {
        if (e > 0) {
            if (h == g) r += T(prefix);
            prefix += deg.at(h);
        } else {
            prefix -= deg.at(h);
            if (h == g) r -= T(prefix);
        }
    }
    return r;
}

namespace detail {

inline mpz_class int_det(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

// Checks that the abelianization is infinite cyclic with the given degree map.
inline void check_abelianization(const Presentation& p, const std::vector<long>& deg) {
    const std::size_t n = p.generators.size();
    if (deg.size() != n) throw std::invalid_argument("degree map size mismatch");
    long g = 0;
    for (long d : deg) g = std::gcd(g, d);
    if (n > 0 && g != 1) throw std::invalid_argument("degree map is not onto Z");
    for (auto& r : p.relators)
        if (r.degree(deg) != 0) throw std::invalid_argument("relator has nonzero degree: " + p.word_str(r));
    if (n <= 1) {
        if (!p.relators.empty())
            for (auto& r : p.relators)
                if (!r.reduced().empty() && r.exponent_sums(int(n))[0] != 0)
                    throw std::invalid_argument("abelianization is finite");
        return;
    }
    // gcd of (n-1)-minors of the exponent-sum matrix must be 1
    std::vector<std::vector<mpz_class>> E;
    for (auto& r : p.relators) {
        auto v = r.exponent_sums(int(n));
        E.emplace_back(v.begin(), v.end());
    }
    mpz_class gg = 0;
    detail::for_each_subset(E.size(), n - 1, [&](const std::vector<std::size_t>& rows) {
        for (std::size_t skip = 0; skip < n; ++skip) {
            std::vector<std::vector<mpz_class>> m;
            for (auto r : rows) {
                std::vector<mpz_class> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != skip) row.push_back(E[r][c]);
                m.push_back(row);
            }
            gg = gcd(gg, detail::int_det(m));
        }
    });
    if (abs(gg) != 1) throw std::invalid_argument("abelianization is not infinite cyclic");
}

// gcd of the (n-1)-minors of the abelianized Fox matrix.
inline Laurent fox_alexander(const Presentation& p, const std::vector<long>& deg) {
    check_abelianization(p, deg);
    const std::size_t n = p.generators.size();
    if (n <= 1) return Laurent(1);
    LMatrix F;
    for (auto& r : p.relators) {
        std::vector<Laurent> row;
        for (std::size_t g = 0; g < n; ++g) row.push_back(fox_derivative(r, int(g), deg));
        F.push_back(row);
    }
    Laurent acc;
    detail::for_each_subset(F.size(), n - 1, [&](const std::vector<std::size_t>& rows) {
        for (std::size_t skip = 0; skip < n; ++skip) {
            LMatrix m;
            for (auto r : rows) {
                std::vector<Laurent> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != skip) row.push_back(F[r][c]);
                m.push_back(row);
            }
            Laurent d = determinant(m);
            if (!d.is_zero()) acc = gcd(acc, d);
        }
    });
    if (acc.is_zero()) throw std::invalid_argument("Alexander ideal is zero");
    return alexander_normalize(acc);
}

}  // namespace l11

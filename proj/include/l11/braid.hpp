#pragma once

#include <json.hpp>

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace l11 {

struct BraidParams {
    int omega = 0, t = 0, b0 = 0, b1 = 0;
    friend bool operator==(const BraidParams&, const BraidParams&) = default;
    friend auto operator<=>(const BraidParams&, const BraidParams&) = default;
    std::string str() const {
        return "(" + std::to_string(omega) + "," + std::to_string(t) + "," + std::to_string(b0) + "," +
               std::to_string(b1) + ")";
    }
};

struct BraidWord {
    int strands = 1;
    std::vector<std::pair<int, int>> letters;  // (i, +-1) meaning sigma_i^{+-1}, 1 <= i < strands

    int writhe() const {
        int w = 0;
        for (auto& l : letters) w += l.second;
        return w;
    }
    void validate() const {
        if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
        for (auto& [i, s] : letters)
            if (i < 1 || i >= strands || (s != 1 && s != -1))
                throw std::invalid_argument("braid letter out of range");
    }
    std::string str() const;
};

inline bool is_normalized(const BraidParams& bp) {
    return bp.omega >= 1 && bp.t >= 1 && bp.b0 >= 1 && bp.b0 <= bp.omega && bp.b1 >= 1 && bp.b1 <= bp.t;
}

// (σ_ω…σ_{ω−b0+1})(σ_ω…σ_1)^{b1}(σ_{ω−1}…σ_1)^{t−b1} in B_{ω+1}
inline BraidWord braid_from_params(const BraidParams& bp) {
    if (!is_normalized(bp)) throw std::invalid_argument("braid parameters are not normalized: " + bp.str());
    BraidWord w;
    w.strands = bp.omega + 1;
    for (int i = bp.omega; i > bp.omega - bp.b0; --i) w.letters.push_back({i, 1});
    for (int k = 0; k < bp.b1; ++k)
        for (int i = bp.omega; i >= 1; --i) w.letters.push_back({i, 1});
    for (int k = 0; k < bp.t - bp.b1; ++k)
        for (int i = bp.omega - 1; i >= 1; --i) w.letters.push_back({i, 1});
    return w;
}

inline BraidParams normalize_params(int omega, int t, int b0, int b1) {
    if (omega < 0 || t < 0 || b0 < 0 || b1 < 0) throw std::invalid_argument("negative braid parameter");
    if (b0 == 0 && b1 == 0) throw std::invalid_argument("b0 = b1 = 0 gives an unknot component");
    if (b0 > omega || b1 > t) throw std::invalid_argument("b0 <= omega and b1 <= t required");
    while (b0 == 0 || b1 == 0) {
        if (b0 == 0) {
            t -= 1;
            b1 -= 1;
            b0 = omega;
        } else {
            omega -= 1;
            b0 -= 1;
            b1 = t;
        }
        if (omega < 1 || t < 1) throw std::invalid_argument("parameters degenerate to a trivial braid");
    }
    if (omega < 1 || t < 1) throw std::invalid_argument("omega and t must be positive");
    return {omega, t, b0, b1};
}

inline std::vector<int> closure_permutation(const BraidWord& w) {
    w.validate();
    std::vector<int> pos(w.strands);
    std::iota(pos.begin(), pos.end(), 0);
    for (auto& [i, s] : w.letters) std::swap(pos[i - 1], pos[i]);
    return pos;
}

inline int closure_components(const BraidWord& w) {
    auto p = closure_permutation(w);
    std::vector<bool> seen(p.size(), false);
    int c = 0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (seen[s]) continue;
        ++c;
        for (std::size_t x = s; !seen[x]; x = p[x]) seen[x] = true;
    }
    return c;
}

inline bool is_knot_valid(const BraidParams& bp) {
    return is_normalized(bp) && closure_components(braid_from_params(bp)) == 1;
}

struct BraidStats {
    int genus, crossings, k0;
    int surgery_threshold;  // 2g-1; slopes >= this give L-spaces
};

inline BraidStats braid_stats(const BraidParams& bp) {
    if (!is_normalized(bp)) throw std::invalid_argument("braid parameters are not normalized: " + bp.str());
    int comps = closure_components(braid_from_params(bp));
    if (comps != 1)
        throw std::invalid_argument("closure has " + std::to_string(comps) + " components");
    const int w = bp.omega, t = bp.t;
    int twice_g = t * w - t - w + bp.b0 + bp.b1;
    int crossings = bp.b0 + bp.b1 * w + (t - bp.b1) * (w - 1);
    int k0 = t * w + bp.b0 + bp.b1;
    if (twice_g % 2 != 0 || twice_g != crossings - (w + 1) + 1 || k0 != crossings + t)
        throw std::logic_error("braid statistics inconsistent for " + bp.str());
    return {twice_g / 2, crossings, k0, twice_g - 1};
}

inline int genus(const BraidParams& bp) { return braid_stats(bp).genus; }

struct SurgeryRange {
    int threshold;  // 2g-1
    std::string str() const { return "slopes p/q >= " + std::to_string(threshold) + " give L-spaces"; }
};

inline SurgeryRange lspace_surgery_range(const BraidParams& bp) { return {braid_stats(bp).surgery_threshold}; }

// All normalized knot-valid parameters with t + omega <= max_sum, sorted.
inline std::vector<BraidParams> knot_sweep(int max_sum) {
    std::vector<BraidParams> out;
    for (int w = 1; w < max_sum; ++w)
        for (int t = 1; w + t <= max_sum; ++t)
            for (int b0 = 1; b0 <= w; ++b0)
                for (int b1 = 1; b1 <= t; ++b1) {
                    BraidParams bp{w, t, b0, b1};
                    if (is_knot_valid(bp)) out.push_back(bp);
                }
    return out;
}

inline std::string BraidWord::str() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < letters.size(); ++k) {
        if (k) os << ' ';
        os << 's' << letters[k].first;
        if (letters[k].second < 0) os << "^-1";
    }
    return os.str();
}

inline BraidWord parse_braid(int strands, const std::string& text) {
    BraidWord w;
    w.strands = strands;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok.size() < 2 || tok[0] != 's') throw std::invalid_argument("bad braid token: " + tok);
        int sign = 1;
        std::string num = tok.substr(1);
        auto caret = num.find('^');
        if (caret != std::string::npos) {
            if (num.substr(caret) != "^-1" && num.substr(caret) != "^1")
                throw std::invalid_argument("bad braid token: " + tok);
            sign = num.substr(caret) == "^-1" ? -1 : 1;
            num = num.substr(0, caret);
        }
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad braid token: " + tok);
        w.letters.push_back({std::stoi(num), sign});
    }
    w.validate();
    return w;
}

// Compact form with powers of the repeating blocks collapsed, e.g. "s6 s5 s4 s3 (s6 s5 s4 s3 s2 s1)^3 ...".
inline std::string braid_blocks(const BraidParams& bp) {
    auto run = [](int from, int to) {
        std::string s;
        for (int i = from; i >= to; --i) s += (s.empty() ? "" : " ") + ("s" + std::to_string(i));
        return s;
    };
    std::string out = run(bp.omega, bp.omega - bp.b0 + 1);
    auto block = [&](int top, int times) {
        if (times <= 0 || top < 1) return;
        std::string r = run(top, 1);
        out += " (" + r + ")";
        if (times != 1) out += "^" + std::to_string(times);
    };
    block(bp.omega, bp.b1);
    block(bp.omega - 1, bp.t - bp.b1);
    return out;
}

inline nlohmann::json to_json(const BraidWord& w) {
    nlohmann::json j;
    j["strands"] = w.strands;
    j["letters"] = nlohmann::json::array();
    for (auto& [i, s] : w.letters) j["letters"].push_back({i, s});
    return j;
}

inline BraidWord braid_from_json(const nlohmann::json& j) {
    BraidWord w;
    w.strands = j.at("strands").get<int>();
    for (auto& l : j.at("letters")) w.letters.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
    w.validate();
    return w;
}

}  // namespace l11

#pragma once

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace l11 {

// Letter = (generator index, exponent +-1).
using Letter = std::pair<int, int>;

struct Word {
    std::vector<Letter> letters;

    Word() = default;
    Word(std::vector<Letter> l) : letters(std::move(l)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    Word inverse() const {
        Word r;
        r.letters.reserve(letters.size());
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back({it->first, -it->second});
        return r;
    }
    Word reduced() const {
        Word r;
        for (auto& l : letters) {
            if (!r.letters.empty() && r.letters.back().first == l.first && r.letters.back().second == -l.second)
                r.letters.pop_back();
            else
                r.letters.push_back(l);
        }
        return r;
    }
    bool is_reduced() const {
        for (std::size_t i = 1; i < letters.size(); ++i)
            if (letters[i].first == letters[i - 1].first && letters[i].second == -letters[i - 1].second) return false;
        return true;
    }
    Word pow(int n) const {
        Word base = n < 0 ? inverse() : *this, r;
        for (int k = 0; k < (n < 0 ? -n : n); ++k) r.letters.insert(r.letters.end(), base.letters.begin(), base.letters.end());
        return r;
    }
    friend Word operator*(const Word& a, const Word& b) {
        Word r = a;
        r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
        return r;
    }
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

    // exponent sum of each generator
    std::vector<long> exponent_sums(int ngens) const {
        std::vector<long> v(ngens, 0);
        for (auto& [g, e] : letters) v.at(g) += e;
        return v;
    }
    long degree(const std::vector<long>& deg) const {
        long d = 0;
        for (auto& [g, e] : letters) d += deg.at(g) * e;
        return d;
    }
    // Word with every letter positive and composed of generators in allowed.
    bool is_positive() const {
        return std::all_of(letters.begin(), letters.end(), [](const Letter& l) { return l.second > 0; });
    }
};

inline Word reduce(const Word& w) { return w.reduced(); }

// Cyclically reduced form, and a canonical representative of the conjugacy class up to inversion.
inline Word cyclic_reduce(Word w) {
    w = w.reduced();
    std::size_t i = 0, j = w.letters.size();
    while (j - i >= 2 && w.letters[i].first == w.letters[j - 1].first && w.letters[i].second == -w.letters[j - 1].second) {
        ++i;
        --j;
    }
    return Word(std::vector<Letter>(w.letters.begin() + i, w.letters.begin() + j));
}

inline Word canonical_cyclic(const Word& w) {
    Word best;
    bool have = false;
    for (const Word& base : {cyclic_reduce(w), cyclic_reduce(w.inverse())}) {
        const std::size_t n = base.size();
        for (std::size_t r = 0; r < std::max<std::size_t>(n, 1); ++r) {
            Word c;
            for (std::size_t k = 0; k < n; ++k) c.letters.push_back(base.letters[(r + k) % n]);
            if (!have || c < best) {
                best = c;
                have = true;
            }
        }
    }
    return best;
}

// Same relator up to cyclic rotation and inversion.
inline bool same_relator(const Word& a, const Word& b) { return canonical_cyclic(a) == canonical_cyclic(b); }

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
    std::vector<std::string> relator_names;
    std::map<std::string, Word> defines;  // named words usable inside relators

    int gen_index(const std::string& name) const {
        for (std::size_t i = 0; i < generators.size(); ++i)
            if (generators[i] == name) return int(i);
        return -1;
    }

    std::string word_str(const Word& w) const {
        std::ostringstream os;
        for (std::size_t k = 0; k < w.letters.size(); ++k) {
            if (k) os << ' ';
            os << generators.at(w.letters[k].first);
            if (w.letters[k].second < 0) os << "^-1";
        }
        return os.str();
    }

    // Parses "x0 y0^-1 mu ...", expanding named macros (each macro maps to a word, optionally inverted with ^-1).
    Word parse_word(const std::string& text, const std::map<std::string, Word>& macros = {}) const {
        Word w;
        std::istringstream is(text);
        std::string tok;
        while (is >> tok) {
            int e = 1;
            std::string name = tok;
            auto caret = tok.find('^');
            if (caret != std::string::npos) {
                std::string ex = tok.substr(caret + 1);
                name = tok.substr(0, caret);
                if (ex.empty() || ex.find_first_not_of("-0123456789") != std::string::npos || ex == "-")
                    throw std::invalid_argument("bad exponent in token " + tok);
                e = std::stoi(ex);
            }
            Word base;
            int g = gen_index(name);
            if (g >= 0) {
                base.letters.push_back({g, 1});
            } else if (auto it = macros.find(name); it != macros.end()) {
                base = it->second;
            } else {
                throw std::invalid_argument("unknown generator " + name);
            }
            w = w * base.pow(e);
        }
        return w;
    }

    std::string str() const {
        std::ostringstream os;
        os << "generators";
        for (auto& g : generators) os << ' ' << g;
        os << '\n';
        for (std::size_t i = 0; i < relators.size(); ++i) {
            os << "relator";
            if (i < relator_names.size() && !relator_names[i].empty()) os << ' ' << relator_names[i] << ':';
            os << ' ' << word_str(relators[i]) << '\n';
        }
        return os.str();
    }
};

// Reads the text written by Presentation::str(); "define name: word" lines name words usable in relators.
inline Presentation parse_presentation(const std::string& text) {
    Presentation p;
    struct Pending {
        std::string name, body;
        bool define;
    };
    std::vector<Pending> pending;
    std::istringstream is(text);
    std::string line;
    bool have_gens = false;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "generators") {
            if (have_gens) throw std::invalid_argument("second generators line");
            std::string g;
            while (ls >> g) p.generators.push_back(g);
            have_gens = true;
        } else if (head == "relator" || head == "define") {
            std::string rest;
            std::getline(ls, rest);
            std::string name;
            auto colon = rest.find(':');
            if (colon != std::string::npos) {
                name = rest.substr(0, colon);
                name.erase(0, name.find_first_not_of(' '));
                name.erase(name.find_last_not_of(' ') + 1);
                rest = rest.substr(colon + 1);
            }
            if (head == "define" && name.empty()) throw std::invalid_argument("define line without a name");
            pending.push_back({name, rest, head == "define"});
        } else {
            throw std::invalid_argument("unknown presentation line: " + head);
        }
    }
    if (!have_gens) throw std::invalid_argument("missing generators line");
    // defines may refer to earlier defines only
    for (auto& d : pending)
        if (d.define) {
            if (p.gen_index(d.name) >= 0 || p.defines.count(d.name))
                throw std::invalid_argument("define shadows an existing name: " + d.name);
            p.defines[d.name] = p.parse_word(d.body, p.defines);
        }
    for (auto& r : pending)
        if (!r.define) {
            p.relators.push_back(p.parse_word(r.body, p.defines));
            p.relator_names.push_back(r.name);
        }
    return p;
}

inline nlohmann::json to_json(const Presentation& p) {
    nlohmann::json j;
    j["generators"] = p.generators;
    j["relators"] = nlohmann::json::array();
    for (std::size_t i = 0; i < p.relators.size(); ++i)
        j["relators"].push_back({{"name", i < p.relator_names.size() ? p.relator_names[i] : ""},
                                 {"word", p.word_str(p.relators[i])}});
    return j;
}

inline Presentation presentation_from_json(const nlohmann::json& j) {
    Presentation p;
    try {
        p.generators = j.at("generators").get<std::vector<std::string>>();
        for (auto& r : j.at("relators")) {
            p.relators.push_back(p.parse_word(r.at("word").get<std::string>()));
            p.relator_names.push_back(r.value("name", ""));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad presentation JSON: ") + e.what());
    }
    return p;
}

}  // namespace l11

#pragma once

#include "l11/braid.hpp"
#include "l11/laurent.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace l11::testing {

inline const nlohmann::json& oracle() {
    static const nlohmann::json j = [] {
        std::ifstream in(std::string(L11_TEST_DATA) + "/alexander_oracle.json");
        if (!in) throw std::runtime_error("missing oracle data");
        return nlohmann::json::parse(in);
    }();
    return j;
}

// Alexander polynomials of the braid closures, frozen from the independent oracle script.
inline const std::map<BraidParams, Laurent>& oracle_alexander() {
    static const std::map<BraidParams, Laurent> m = [] {
        std::map<BraidParams, Laurent> out;
        for (auto& c : oracle().at("braids")) {
            auto p = c.at("params");
            out[{p[0].get<int>(), p[1].get<int>(), p[2].get<int>(), p[3].get<int>()}] = laurent_from_json(c.at("alexander"));
        }
        return out;
    }();
    return m;
}

inline Laurent oracle_torus(int p, int q) {
    for (auto& c : oracle().at("torus"))
        if (c.at("p") == p && c.at("q") == q) return laurent_from_json(c.at("alexander"));
    throw std::out_of_range("no frozen torus value");
}

}  // namespace l11::testing

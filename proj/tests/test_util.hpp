// Shared helpers for the unit tests.

#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "specexp/symcore.hpp"

namespace testutil {

inline std::string data_path(const std::string& rel) { return std::string(SPECEXP_DATA_DIR) + "/" + rel; }

inline nlohmann::json load_json(const std::string& rel) {
    std::ifstream in(data_path(rel));
    if (!in) throw std::runtime_error("missing data file " + rel);
    return nlohmann::json::parse(in);
}

inline specexp::ExactScalar random_scalar(std::mt19937_64& rng, bool withRoot = true) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    specexp::ExactScalar c(mpq_class(num(rng), den(rng)));
    if (withRoot) c += specexp::ExactScalar(0, mpq_class(num(rng), den(rng)));
    return c;
}

inline specexp::DerivMonomial random_monomial(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> half(-7, 3), order(1, 4), ex(0, 2);
    specexp::DerivMonomial m;
    m.bHalf = half(rng);
    for (int i = 0; i < 2; ++i) {
        int o = order(rng), e = ex(rng);
        if (e) m.aExp[o] += e;
        o = order(rng), e = ex(rng);
        if (e) m.bExp[o] += e;
    }
    return m;
}

inline specexp::SymPoly random_sympoly(std::mt19937_64& rng, int terms = 4, bool withRoot = true) {
    specexp::SymPoly p;
    for (int i = 0; i < terms; ++i) p.add_term(random_monomial(rng), random_scalar(rng, withRoot));
    return p;
}

}  // namespace testutil

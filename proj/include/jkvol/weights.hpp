#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace jkvol {

// Stability class of the weighted arrangement, decided by comparing sum(d) with n+1.
enum class StabilityClass { LogFano, CalabiYau, GeneralType };

inline const char* to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::LogFano: return "log-fano";
        case StabilityClass::CalabiYau: return "calabi-yau";
        case StabilityClass::GeneralType: return "general-type";
    }
    return "?";
}

// A weighted configuration of m hyperplanes in P^n: ambient dimension n >= 1 and exact
// rational weights d_1..d_m, each strictly between 0 and 1. m >= n+2 keeps the quotient
// nontrivial.
struct WeightVector {
    int n = 1;
    std::vector<Rational> d;

    int m() const { return static_cast<int>(d.size()); }

    Rational total() const {
        Rational s = 0;
        for (const auto& w : d) s += w;
        return s;
    }
};

inline StabilityClass validate_weights(const WeightVector& w) {
    if (w.n < 1) throw ValidationError("weights: n must be >= 1");
    if (w.m() < w.n + 2)
        throw ValidationError("weights: need at least n+2 hyperplanes, got m=" +
                              std::to_string(w.m()) + " for n=" + std::to_string(w.n));
    for (int i = 0; i < w.m(); ++i) {
        if (!(w.d[i] > 0 && w.d[i] < 1))
            throw ValidationError("weights: d" + std::to_string(i + 1) + " = " +
                                  to_string(w.d[i]) + " is outside (0,1)");
    }
    Rational s = w.total();
    Rational bound(w.n + 1);
    if (s < bound) return StabilityClass::LogFano;
    if (s == bound) return StabilityClass::CalabiYau;
    return StabilityClass::GeneralType;
}

// Parses a comma-separated weight list; each entry may be "p/q" or an exact decimal.
inline WeightVector parse_weights(int n, std::string_view list) {
    WeightVector w;
    w.n = n;
    std::string item;
    std::stringstream ss{std::string(list)};
    while (std::getline(ss, item, ',')) {
        w.d.push_back(parse_rational(item));
    }
    if (w.d.empty()) throw ArgumentError("weights: empty list");
    return w;
}

inline std::string to_string(const WeightVector& w) {
    std::string s;
    for (int i = 0; i < w.m(); ++i) {
        if (i) s += ",";
        s += to_string(w.d[i]);
    }
    return s;
}

} // namespace jkvol

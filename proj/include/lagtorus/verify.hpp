#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lagtorus/curve.hpp"

namespace lagtorus {

/// Shipped example curves, keyed by file stem.
std::vector<std::pair<std::string, CurveSpec>> default_corpus();

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool upper_bound = true; ///< pass iff value <= threshold (else value >= threshold)
    bool passed = false;
};

struct BatteryOptions {
    std::uint64_t seed = 20240611;
    std::size_t random_curves = 20;
    std::size_t samples = 256;
};

/// Runs every invariant of the library on the corpus and on seeded random curves.
std::vector<Check> run_invariant_battery(const BatteryOptions& opt = {});

/// d/dbeta by the five-point stencil.
template <class F>
double five_point_derivative(F&& f, double x, double h) {
    return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

} // namespace lagtorus

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace lagtorus {

struct PeriodicQuadratureOptions {
    std::size_t initial_nodes = 1024;
    std::size_t max_nodes = std::size_t{1} << 20;
    double tolerance = 1e-10;
};

/// Trapezoidal rule for a smooth 2*pi-periodic integrand over [0, 2*pi).
/// Node count doubles (reusing previous nodes) until two successive
/// estimates differ by less than the tolerance, relative to max(1, |I|).
template <class F>
double periodic_trapezoid(F&& integrand, const PeriodicQuadratureOptions& opt = {}) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::size_t n = opt.initial_nodes;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += integrand(two_pi * static_cast<double>(j) / static_cast<double>(n));
    double estimate = two_pi * sum / static_cast<double>(n);
    while (2 * n <= opt.max_nodes) {
        // New nodes sit at the midpoints of the current grid.
        for (std::size_t j = 0; j < n; ++j)
            sum += integrand(two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
        n *= 2;
        const double next = two_pi * sum / static_cast<double>(n);
        const bool converged = std::abs(next - estimate) < opt.tolerance * std::max(1.0, std::abs(next));
        estimate = next;
        if (converged) break;
    }
    return estimate;
}

/// Uniform grid point j of n on [0, 2*pi).
inline double grid_angle(std::size_t j, std::size_t n) {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

} // namespace lagtorus

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace lagtorus {

/// Real trigonometric polynomial
///   p(x) = a0 + sum_{n>=1} (cos[n-1] cos(n x) + sin[n-1] sin(n x)).
struct TrigPoly {
    double a0 = 0.0;
    std::vector<double> cos;
    std::vector<double> sin;

    /// Value and first `N` derivatives at x, all exact.
    template <std::size_t N>
    std::array<double, N + 1> derivatives(double x) const;

    double operator()(double x) const { return derivatives<0>(x)[0]; }

    std::size_t degree() const { return std::max(cos.size(), sin.size()); }

    TrigPoly scaled(double factor) const;
    TrigPoly shifted(double offset) const;

    bool operator==(const TrigPoly&) const = default;
};

template <std::size_t N>
std::array<double, N + 1> TrigPoly::derivatives(double x) const {
    std::array<double, N + 1> out{};
    out[0] = a0;
    const std::size_t deg = degree();
    for (std::size_t i = 0; i < deg; ++i) {
        const double n = static_cast<double>(i + 1);
        const double a = i < cos.size() ? cos[i] : 0.0;
        const double b = i < sin.size() ? sin[i] : 0.0;
        if (a == 0.0 && b == 0.0) continue;
        const double c = std::cos(n * x);
        const double s = std::sin(n * x);
        // d^m/dx^m of (a cos + b sin) cycles through (c, s) with period 4.
        double p = a * c + b * s;
        double q = b * c - a * s;
        double scale = 1.0;
        for (std::size_t m = 0; m <= N; ++m) {
            switch (m % 4) {
            case 0: out[m] += scale * p; break;
            case 1: out[m] += scale * q; break;
            case 2: out[m] -= scale * p; break;
            case 3: out[m] -= scale * q; break;
            }
            scale *= n;
        }
    }
    return out;
}

inline TrigPoly TrigPoly::scaled(double factor) const {
    TrigPoly out = *this;
    out.a0 *= factor;
    for (auto& c : out.cos) c *= factor;
    for (auto& s : out.sin) s *= factor;
    return out;
}

inline TrigPoly TrigPoly::shifted(double offset) const {
    TrigPoly out = *this;
    out.a0 += offset;
    return out;
}

} // namespace lagtorus

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>

namespace lagtorus {

/// One embedded Dormand-Prince 5(4) step. Returns the 5th-order solution in
/// `y_next` and the scaled error norm (<= 1 means acceptable).
template <std::size_t N, class Field>
double dormand_prince_step(const Field& field, double t, const std::array<double, N>& y, double h,
                           std::array<double, N>& y_next, double atol, double rtol) {
    using State = std::array<double, N>;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    // Difference between 5th- and 4th-order weights.
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    auto combo = [&](std::initializer_list<std::pair<double, const State*>> terms) {
        State out = y;
        for (const auto& [coef, k] : terms)
            for (std::size_t i = 0; i < N; ++i) out[i] += h * coef * (*k)[i];
        return out;
    };

    const State k1 = field(t, y);
    const State k2 = field(t + h / 5.0, combo({{a21, &k1}}));
    const State k3 = field(t + 3.0 * h / 10.0, combo({{a31, &k1}, {a32, &k2}}));
    const State k4 = field(t + 4.0 * h / 5.0, combo({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = field(t + 8.0 * h / 9.0, combo({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = field(t + h, combo({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    y_next = combo({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = field(t + h, y_next);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y_next[i]));
        err = std::max(err, std::abs(e) / scale);
    }
    return err;
}

/// Step-size update for a 5th-order method.
inline double next_step_size(double h, double err) {
    const double factor = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
    return h * std::clamp(factor, 0.2, 5.0);
}

} // namespace lagtorus

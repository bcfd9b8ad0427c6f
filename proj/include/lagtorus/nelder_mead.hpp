#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace lagtorus {

struct NelderMeadOptions {
    std::size_t max_evaluations = 400;
    double f_tolerance = 1e-14; ///< spread of objective values over the simplex
    double x_tolerance = 1e-10; ///< max vertex distance from the best vertex (inf-norm)
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// The objective may return +inf to mark infeasible points.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                                    std::vector<double> start, const std::vector<double>& step,
                                    const NelderMeadOptions& opt = {}) {
    const std::size_t n = start.size();
    NelderMeadResult res;
    if (n == 0) {
        res.x = start;
        res.value = objective(start);
        res.evaluations = 1;
        res.converged = true;
        return res;
    }

    std::vector<std::vector<double>> simplex(n + 1, start);
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step[i];
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        return objective(x);
    };
    for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    auto blend = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
        std::vector<double> out(n);
        for (std::size_t d = 0; d < n; ++d) out[d] = a[d] + t * (b[d] - a[d]);
        return out;
    };

    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        double x_spread = 0.0;
        for (const auto& v : simplex)
            for (std::size_t d = 0; d < n; ++d) x_spread = std::max(x_spread, std::abs(v[d] - simplex[best][d]));
        const double f_spread = values[worst] - values[best];
        if ((f_spread <= opt.f_tolerance && std::isfinite(values[worst])) || x_spread <= opt.x_tolerance) {
            res.converged = true;
            break;
        }
        if (res.evaluations >= opt.max_evaluations) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / static_cast<double>(n);
        }

        const auto reflected = blend(centroid, simplex[worst], -1.0);
        const double f_r = eval(reflected);
        if (f_r < values[best]) {
            const auto expanded = blend(centroid, simplex[worst], -2.0);
            const double f_e = eval(expanded);
            if (f_e < f_r) {
                simplex[worst] = expanded;
                values[worst] = f_e;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_r;
            }
            continue;
        }
        if (f_r < values[second]) {
            simplex[worst] = reflected;
            values[worst] = f_r;
            continue;
        }
        const bool outside = f_r < values[worst];
        const auto contracted = blend(centroid, outside ? reflected : simplex[worst], 0.5);
        const double f_c = eval(contracted);
        if (f_c < (outside ? f_r : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = f_c;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            simplex[i] = blend(simplex[best], simplex[i], 0.5);
            values[i] = eval(simplex[i]);
        }
    }

    const auto it = std::min_element(values.begin(), values.end());
    res.value = *it;
    res.x = simplex[static_cast<std::size_t>(it - values.begin())];
    return res;
}

} // namespace lagtorus

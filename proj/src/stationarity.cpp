#include "lagtorus/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <regex>
#include <sstream>
#include <thread>

#include "lagtorus/errors.hpp"
#include "lagtorus/geometry.hpp"
#include "lagtorus/nelder_mead.hpp"
#include "lagtorus/quadrature.hpp"

namespace lagtorus {

DefectResult defect(const CurveSpec& curve, std::size_t n_samples) {
    if (n_samples == 0) throw DomainError("defect needs at least one sample");
    std::vector<double> s(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) s[i] = stationarity_density(eval_jet(curve, grid_angle(i, n_samples)));
    DefectResult r;
    for (double x : s) r.c_estimate += x;
    r.c_estimate /= static_cast<double>(n_samples);
    for (double x : s) r.defect = std::max(r.defect, std::abs(x - r.c_estimate));
    return r;
}

double defect_phi(const CurveJet& jet) { return jet.w / std::sqrt(jet.speed_sq()); }

double conserved_quantity(const CurveSpec& curve, double c, double beta) {
    const CurveJet j = eval_jet(curve, beta);
    return j.rho * j.rho * (defect_phi(j) - 0.5 * c);
}

CriticalPoints count_critical_points(const CurveSpec& curve, std::size_t grid, double value_tolerance) {
    CriticalPoints out;
    auto slope = [&](double b) { return curve.log_rho.derivatives<1>(b)[1]; };

    std::vector<double> d(grid);
    double max_slope = 0.0;
    for (std::size_t i = 0; i < grid; ++i) {
        d[i] = slope(grid_angle(i, grid));
        max_slope = std::max(max_slope, std::abs(d[i]));
    }
    if (max_slope < 1e-12) {
        out.all_critical = true;
        return out;
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < grid; ++i) {
        const double a = d[i];
        const double b = d[(i + 1) % grid];
        if (a == 0.0) {
            out.locations.push_back(grid_angle(i, grid));
            continue;
        }
        if (b == 0.0 || (a > 0.0) == (b > 0.0)) continue;
        double lo = grid_angle(i, grid);
        double hi = lo + two_pi / static_cast<double>(grid);
        double f_lo = a;
        for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = slope(mid);
            if (f_mid == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((f_mid > 0.0) == (f_lo > 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        out.locations.push_back(std::fmod(0.5 * (lo + hi), two_pi));
    }

    std::sort(out.locations.begin(), out.locations.end());
    std::vector<double> merged;
    for (double x : out.locations)
        if (merged.empty() || x - merged.back() > 1e-9) merged.push_back(x);
    if (merged.size() > 1 && merged.front() + two_pi - merged.back() <= 1e-9) merged.pop_back();
    out.locations = std::move(merged);
    out.n_points = out.locations.size();

    std::vector<double> values;
    for (double x : out.locations) values.push_back(curve.rho(x));
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size(); ++i)
        if (i == 0 || values[i] - values[i - 1] > value_tolerance) ++out.n_values;
    return out;
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::StationaryProduct: return "StationaryProduct";
    case Verdict::NonStationary: return "NonStationary";
    case Verdict::DegenerateAllCritical: return "DegenerateAllCritical";
    }
    return "Unknown";
}

double normalized_rho_variance(const CurveSpec& curve, std::size_t n_samples) {
    std::vector<double> r(n_samples);
    double mean = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        r[i] = curve.rho(grid_angle(i, n_samples));
        mean += r[i];
    }
    mean /= static_cast<double>(n_samples);
    double var = 0.0;
    for (double x : r) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n_samples);
    return var / (mean * mean);
}

StationarityReport analyze_stationarity(const CurveSpec& curve, const StationarityOptions& opt) {
    StationarityReport rep;
    rep.n_samples = opt.n_samples;
    const DefectResult d = defect(curve, opt.n_samples);
    rep.c_estimate = d.c_estimate;
    rep.defect = d.defect;
    rep.relative_defect = d.c_estimate != 0.0 ? d.defect / std::abs(d.c_estimate)
                                              : std::numeric_limits<double>::infinity();

    double b_min = std::numeric_limits<double>::infinity();
    double b_max = -b_min;
    rep.rho_norm_H_min = std::numeric_limits<double>::infinity();
    rep.rho_norm_H_max = -rep.rho_norm_H_min;
    for (std::size_t i = 0; i < opt.n_samples; ++i) {
        const CurveJet j = eval_jet(curve, grid_angle(i, opt.n_samples));
        const double b = j.rho * j.rho * (defect_phi(j) - 0.5 * rep.c_estimate);
        rep.b_estimate += b;
        b_min = std::min(b_min, b);
        b_max = std::max(b_max, b);
        const double rh = mean_curvature(j, 0.0).rho_norm_H;
        rep.rho_norm_H_min = std::min(rep.rho_norm_H_min, rh);
        rep.rho_norm_H_max = std::max(rep.rho_norm_H_max, rh);
        rep.max_abs_div_JH = std::max(rep.max_abs_div_JH, std::abs(div_JH(j)));
    }
    rep.b_estimate /= static_cast<double>(opt.n_samples);
    rep.b_spread = b_max - b_min;
    rep.rho_variance = normalized_rho_variance(curve, opt.n_samples);

    const CriticalPoints cp = count_critical_points(curve, std::max<std::size_t>(opt.n_samples, 4096),
                                                    opt.critical_value_tolerance);
    rep.n_critical_points = cp.n_points;
    rep.n_critical_values = cp.n_values;

    rep.verdict = rep.relative_defect < opt.tolerance ? Verdict::StationaryProduct : Verdict::NonStationary;
    return rep;
}

Verdict classify(const CurveSpec& curve, const StationarityOptions& opt) {
    const Orientation o = orientation_check(curve);
    if (o != Orientation::CounterClockwise)
        throw OrientationError(std::string("classify needs a counterclockwise curve, got ") + to_string(o));

    const StationarityReport rep = analyze_stationarity(curve, opt);
    if (rep.verdict != Verdict::StationaryProduct) return Verdict::NonStationary;

    const double rh_dev = std::max(std::abs(rep.rho_norm_H_max - 2.0), std::abs(rep.rho_norm_H_min - 2.0));
    if (rep.rho_variance >= opt.rho_variance_tolerance || rh_dev >= opt.rho_norm_H_tolerance) {
        std::ostringstream msg;
        msg << "stationary curve is not a product torus (rho variance " << rep.rho_variance
            << ", max |rho|H| - 2| " << rh_dev << ")";
        throw InvariantViolation(msg.str());
    }
    return Verdict::StationaryProduct;
}

std::vector<DefectTraceRow> defect_trace(const CurveSpec& curve, std::size_t n_samples) {
    std::vector<DefectTraceRow> rows(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const CurveJet j = eval_jet(curve, grid_angle(i, n_samples));
        rows[i] = {j.beta, stationarity_density(j), mean_curvature(j, 0.0).rho_norm_H};
    }
    return rows;
}

namespace {

double& coefficient_slot(CurveSpec& c, const std::string& target) {
    static const std::regex pattern(R"(^(log_rho|f)\.(a0|(cos|sin)\[(\d+)\])$)");
    std::smatch m;
    if (!std::regex_match(target, m, pattern)) throw ParseError("unknown family parameter target '" + target + "'");
    TrigPoly& p = m[1] == "log_rho" ? c.log_rho : c.f_periodic;
    if (m[2] == "a0") return p.a0;
    const std::size_t n = std::stoul(m[4]);
    if (n == 0) throw ParseError("harmonic index must be >= 1 in '" + target + "'");
    std::vector<double>& list = m[3] == "cos" ? p.cos : p.sin;
    if (list.size() < n) list.resize(n, 0.0);
    return list[n - 1];
}

} // namespace

CurveSpec CurveFamily::member(std::span<const double> values) const {
    if (values.size() != parameters.size()) throw DomainError("family member needs one value per parameter");
    CurveSpec c = base;
    for (std::size_t i = 0; i < parameters.size(); ++i) coefficient_slot(c, parameters[i].target) = values[i];
    return c;
}

ScanResult scan_family(const CurveFamily& family, const ScanOptions& opt) {
    ScanResult result;
    const std::size_t dims = family.parameters.size();
    if (dims == 0 || opt.grid_points == 0) return result;
    CurveSpec probe;
    for (const auto& p : family.parameters) {
        if (!(p.upper >= p.lower)) throw DomainError("family parameter '" + p.name + "' has an empty range");
        coefficient_slot(probe, p.target);
    }

    auto evaluate = [&](const std::vector<double>& x, ScanRow& row) {
        row.parameters = x;
        row.excluded = false;
        try {
            const CurveSpec c = family.member(x);
            if (family.min_rho_variance > 0.0 && normalized_rho_variance(c) < family.min_rho_variance) {
                row.excluded = true;
                return;
            }
            check_regularity(c, opt.n_samples);
            const DefectResult d = defect(c, opt.n_samples);
            row.defect = d.defect;
            row.c_estimate = d.c_estimate;
        } catch (const RegularityViolation&) {
            row.excluded = true;
        }
        if (row.excluded) {
            row.defect = std::numeric_limits<double>::quiet_NaN();
            row.c_estimate = std::numeric_limits<double>::quiet_NaN();
        }
    };

    std::size_t total = 1;
    for (std::size_t d = 0; d < dims; ++d) total *= opt.grid_points;
    auto grid_point = [&](std::size_t index) {
        std::vector<double> x(dims);
        for (std::size_t d = 0; d < dims; ++d) {
            const std::size_t k = index % opt.grid_points;
            index /= opt.grid_points;
            const auto& p = family.parameters[d];
            x[d] = opt.grid_points == 1 ? p.lower
                                        : p.lower + (p.upper - p.lower) * static_cast<double>(k) /
                                                        static_cast<double>(opt.grid_points - 1);
        }
        return x;
    };

    result.landscape.resize(total);
    unsigned n_threads = opt.threads != 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, total));
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < n_threads; ++t)
            workers.emplace_back([&, t] {
                for (std::size_t i = t; i < total; i += n_threads) evaluate(grid_point(i), result.landscape[i]);
            });
    }

    // Lowest index wins ties.
    const ScanRow* best = nullptr;
    for (const auto& row : result.landscape)
        if (!row.excluded && (best == nullptr || row.defect < best->defect)) best = &row;
    if (best == nullptr) return result;
    result.argmin = *best;

    std::vector<double> step(dims);
    for (std::size_t d = 0; d < dims; ++d) {
        const auto& p = family.parameters[d];
        const double width = p.upper - p.lower;
        const double spacing = opt.grid_points > 1 ? width / static_cast<double>(opt.grid_points - 1) : width;
        // Step into the box from a boundary start.
        const bool at_upper = best->parameters[d] >= p.upper;
        step[d] = (at_upper ? -0.5 : 0.5) * spacing;
    }
    auto objective = [&](const std::vector<double>& x) {
        for (std::size_t d = 0; d < dims; ++d)
            if (x[d] < family.parameters[d].lower || x[d] > family.parameters[d].upper)
                return std::numeric_limits<double>::infinity();
        ScanRow row;
        evaluate(x, row);
        return row.excluded ? std::numeric_limits<double>::infinity() : row.defect;
    };

    NelderMeadOptions nm;
    nm.max_evaluations = opt.budget;
    const NelderMeadResult polished = nelder_mead(objective, best->parameters, step, nm);
    result.polish_evaluations = polished.evaluations;
    if (!polished.converged) {
        std::ostringstream msg;
        msg << "Nelder-Mead polish did not converge within " << opt.budget << " evaluations";
        throw BudgetExhausted(msg.str());
    }
    if (polished.value < result.argmin->defect) {
        ScanRow row;
        evaluate(polished.x, row);
        result.argmin = row;
    }
    return result;
}

} // namespace lagtorus

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lagtorus/curve.hpp"

namespace lagtorus {

struct StationarityOptions {
    std::size_t n_samples = 2048;
    /// Stationary iff defect / |c_estimate| is below this.
    double tolerance = 1e-8;
    /// Allowed deviation of rho|H| from 2 for a product torus.
    double rho_norm_H_tolerance = 1e-8;
    /// Allowed variance of rho / mean(rho) for a product torus.
    double rho_variance_tolerance = 1e-8;
    /// Clustering tolerance on rho for distinct critical values.
    double critical_value_tolerance = 1e-9;
};

struct DefectResult {
    double c_estimate = 0.0; ///< mean of s(beta) = sqrt(det g) C
    double defect = 0.0;     ///< max |s(beta) - c_estimate|
};

DefectResult defect(const CurveSpec& curve, std::size_t n_samples = 2048);

/// phi = w / sqrt(v^2 + w^2), always in [-1, 1].
double defect_phi(const CurveJet& jet);

/// rho^2 (phi - c/2); constant along the curve iff the torus is stationary.
double conserved_quantity(const CurveSpec& curve, double c, double beta);

struct CriticalPoints {
    std::size_t n_points = 0;
    std::size_t n_values = 0;
    std::vector<double> locations;
    /// rho is constant: every point is critical.
    bool all_critical = false;
};

/// Roots of rho' in [0, 2pi) by sign-change scan and bisection.
CriticalPoints count_critical_points(const CurveSpec& curve, std::size_t grid = 4096,
                                     double value_tolerance = 1e-9);

enum class Verdict { StationaryProduct, NonStationary, DegenerateAllCritical };

const char* to_string(Verdict v);

struct StationarityReport {
    std::size_t n_samples = 0;
    double c_estimate = 0.0;
    double defect = 0.0;
    double relative_defect = 0.0;
    double b_estimate = 0.0;
    double b_spread = 0.0;
    double rho_norm_H_min = 0.0;
    double rho_norm_H_max = 0.0;
    double max_abs_div_JH = 0.0;
    double rho_variance = 0.0; ///< variance of rho / mean(rho)
    std::size_t n_critical_points = 0;
    std::size_t n_critical_values = 0;
    Verdict verdict = Verdict::NonStationary;
};

/// Full report. Does not check orientation.
StationarityReport analyze_stationarity(const CurveSpec& curve, const StationarityOptions& opt = {});

/// StationaryProduct or NonStationary. Throws OrientationError for clockwise
/// curves and InvariantViolation if a stationary curve is not a product torus.
Verdict classify(const CurveSpec& curve, const StationarityOptions& opt = {});

struct DefectTraceRow {
    double beta = 0.0;
    double s = 0.0;
    double rho_norm_H = 0.0;
};

std::vector<DefectTraceRow> defect_trace(const CurveSpec& curve, std::size_t n_samples);

/// One scalar knob of a curve family: sets a single coefficient of the base curve.
/// Targets: "log_rho.a0", "log_rho.cos[n]", "log_rho.sin[n]", "f.a0", "f.cos[n]",
/// "f.sin[n]" with harmonic n >= 1.
struct FamilyParameter {
    std::string name;
    std::string target;
    double lower = 0.0;
    double upper = 0.0;
};

struct CurveFamily {
    CurveSpec base;
    std::vector<FamilyParameter> parameters;
    /// Members whose variance of rho / mean(rho) is below this are excluded.
    double min_rho_variance = 0.0;

    CurveSpec member(std::span<const double> values) const;
};

struct ScanOptions {
    std::size_t grid_points = 21; ///< per parameter
    std::size_t budget = 400;     ///< objective evaluations for the polish
    std::size_t n_samples = 1024;
    unsigned threads = 0;         ///< 0 = hardware concurrency
};

struct ScanRow {
    std::vector<double> parameters;
    double defect = 0.0;
    double c_estimate = 0.0;
    bool excluded = false;
};

struct ScanResult {
    std::vector<ScanRow> landscape;
    std::optional<ScanRow> argmin;
    std::size_t polish_evaluations = 0;
};

/// Grid scan of the defect over the family box followed by a Nelder-Mead polish
/// from the best grid member. Throws BudgetExhausted if the polish does not
/// converge within the budget.
ScanResult scan_family(const CurveFamily& family, const ScanOptions& opt = {});

/// Variance of rho / mean(rho) on a uniform grid.
double normalized_rho_variance(const CurveSpec& curve, std::size_t n_samples = 1024);

} // namespace lagtorus

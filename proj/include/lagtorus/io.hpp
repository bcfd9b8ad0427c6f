#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lagtorus/curve.hpp"
#include "lagtorus/geometry.hpp"
#include "lagtorus/ode.hpp"
#include "lagtorus/reduction.hpp"
#include "lagtorus/stationarity.hpp"

namespace lagtorus::io {

using Json = nlohmann::ordered_json;

/// {"log_rho": {"a0", "cos", "sin"}, "f": {"k", "a0"?, "cos", "sin"}}
Json to_json(const CurveSpec& curve);
CurveSpec curve_from_json(const Json& j);

/// {"base": curve, "parameters": [{"name", "target", "lower", "upper"}], "min_rho_variance"?}
Json to_json(const CurveFamily& family);
CurveFamily family_from_json(const Json& j);

struct OdeRequest {
    double c = 0.0;
    int k = 0;
};
OdeRequest ode_request_from_json(const Json& j);

Json to_json(const StationarityReport& r);
Json to_json(const PeriodAnalysis& p);
Json to_json(const OdeProfile& p);
Json to_json(const DoublePointResult& r);
Json to_json(const PullbackReport& r);
Json to_json(const ScanResult& r, const CurveFamily& family);

/// Reads and parses a JSON file; ParseError on malformed content, IoError if unreadable.
Json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline. IoError on failure.
void write_json(const std::filesystem::path& path, const Json& j);

CurveSpec read_curve(const std::filesystem::path& path);
void write_curve(const std::filesystem::path& path, const CurveSpec& curve);
CurveFamily read_family(const std::filesystem::path& path);

/// %.17g formatting; round-trips exactly.
std::string format_double(double x);

/// Comma-separated table with a header row.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);
    void add_row(const std::vector<double>& values);
    std::string str() const;
    void write(const std::filesystem::path& path) const;
    std::size_t rows() const { return n_rows_; }

private:
    std::vector<std::string> columns_;
    std::string body_;
    std::size_t n_rows_ = 0;
};

/// beta, alpha, g_aa, g_bb, C, norm_H, rho_norm_H, div_JH at alpha = 0.
CsvTable frames_table(const CurveSpec& curve, std::size_t n_samples);
/// beta, s, rho_norm_H
CsvTable defect_trace_table(const std::vector<DefectTraceRow>& rows);
/// u, R, rho_candidate, f
CsvTable profile_table(const OdeProfile& profile);
/// one column per family parameter, then defect, c_estimate, excluded
CsvTable landscape_table(const ScanResult& result, const CurveFamily& family);

} // namespace lagtorus::io

#include "lagtorus/cli.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <ostream>
#include <set>

#include "lagtorus/errors.hpp"
#include "lagtorus/io.hpp"
#include "lagtorus/verify.hpp"

namespace lagtorus::cli {

namespace {

namespace fs = std::filesystem;
using io::format_double;
using io::Json;

constexpr std::array<std::pair<Command, const char*>, 7> kNames{{{Command::Analyze, "analyze"},
                                                                 {Command::Stationarity, "stationarity"},
                                                                 {Command::Scan, "scan"},
                                                                 {Command::Ode, "ode"},
                                                                 {Command::Reduce, "reduce"},
                                                                 {Command::Intersections, "intersections"},
                                                                 {Command::Verify, "verify"}}};

std::set<std::string> tolerance_names(Command c) {
    switch (c) {
    case Command::Analyze:
    case Command::Stationarity:
        return {"stationary", "rho_norm_H", "rho_variance", "critical_value"};
    case Command::Ode:
        return {"atol", "rtol", "turning_fraction"};
    case Command::Intersections:
        return {"symmetry", "root", "touch", "merge"};
    default:
        return {};
    }
}

double tol(const RunConfig& cfg, const std::string& name, double fallback) {
    const auto it = cfg.tolerances.find(name);
    return it == cfg.tolerances.end() ? fallback : it->second;
}

StationarityOptions stationarity_options(const RunConfig& cfg) {
    StationarityOptions opt;
    opt.n_samples = cfg.n_samples;
    opt.tolerance = tol(cfg, "stationary", opt.tolerance);
    opt.rho_norm_H_tolerance = tol(cfg, "rho_norm_H", opt.rho_norm_H_tolerance);
    opt.rho_variance_tolerance = tol(cfg, "rho_variance", opt.rho_variance_tolerance);
    opt.critical_value_tolerance = tol(cfg, "critical_value", opt.critical_value_tolerance);
    return opt;
}

class Output {
public:
    explicit Output(const std::string& dir) : dir_(dir) {
        if (dir_.empty()) return;
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create '" + dir_.string() + "': " + ec.message());
    }
    void json(const char* name, const Json& j) const {
        if (!dir_.empty()) io::write_json(dir_ / name, j);
    }
    void csv(const char* name, const io::CsvTable& t) const {
        if (!dir_.empty()) t.write(dir_ / name);
    }

private:
    fs::path dir_;
};

CurveSpec load_curve(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw ParseError("this command needs an input curve file");
    return io::read_curve(cfg.input_path);
}

int analyze(const RunConfig& cfg, std::ostream& out, bool strict) {
    const CurveSpec curve = load_curve(cfg);
    const StationarityOptions opt = stationarity_options(cfg);
    check_regularity(curve);
    const int k = winding_number(curve);
    const Orientation orient = orientation_check(curve);
    const StationarityReport rep = analyze_stationarity(curve, opt);
    const Verdict verdict = strict ? classify(curve, opt) : rep.verdict;

    Json j;
    j["winding_number"] = k;
    j["orientation"] = to_string(orient);
    j["signed_area"] = signed_area(curve);
    j["u_star"] = u_star(curve);
    j["total_curvature"] = total_curvature(curve);
    j["stationarity"] = io::to_json(rep);
    j["stationarity"]["verdict"] = to_string(verdict);

    const Output o(cfg.output_dir);
    o.json(strict ? "stationarity.json" : "report.json", j);
    o.csv("defect_trace.csv", io::defect_trace_table(defect_trace(curve, cfg.n_samples)));
    if (!strict) o.csv("frames.csv", io::frames_table(curve, cfg.n_samples));

    out << "winding_number=" << k << '\n'
        << "orientation=" << to_string(orient) << '\n'
        << "c=" << format_double(rep.c_estimate) << '\n'
        << "defect=" << format_double(rep.defect) << '\n'
        << "relative_defect=" << format_double(rep.relative_defect) << '\n'
        << "rho_norm_H_range=" << format_double(rep.rho_norm_H_min) << ',' << format_double(rep.rho_norm_H_max)
        << '\n'
        << "verdict=" << to_string(verdict) << '\n';
    return kOk;
}

int scan(const RunConfig& cfg, std::ostream& out) {
    if (cfg.input_path.empty()) throw ParseError("scan needs a family file");
    const CurveFamily fam = io::read_family(cfg.input_path);
    ScanOptions opt;
    opt.n_samples = cfg.n_samples;
    const ScanResult res = scan_family(fam, opt);
    const Output o(cfg.output_dir);
    o.csv("landscape.csv", io::landscape_table(res, fam));
    o.json("scan.json", io::to_json(res, fam));
    if (res.argmin) {
        for (std::size_t i = 0; i < fam.parameters.size(); ++i)
            out << fam.parameters[i].name << '=' << format_double(res.argmin->parameters[i]) << '\n';
        out << "defect=" << format_double(res.argmin->defect) << '\n';
    } else {
        out << "argmin=none\n";
    }
    return kOk;
}

int ode(const RunConfig& cfg, std::ostream& out) {
    io::OdeRequest req;
    if (!cfg.input_path.empty()) req = io::ode_request_from_json(io::read_json(cfg.input_path));
    if (cfg.c) req.c = *cfg.c;
    if (cfg.k) req.k = *cfg.k;
    if (cfg.input_path.empty() && !cfg.c) throw ParseError("ode needs --c or an input file with {c, k}");
    ProfileOptions opt;
    opt.k = req.k;
    opt.atol = tol(cfg, "atol", opt.atol);
    opt.rtol = tol(cfg, "rtol", opt.rtol);
    opt.turning_fraction = tol(cfg, "turning_fraction", opt.turning_fraction);
    const OdeProfile prof = integrate_profile(req.c, cfg.ode_steps, opt);
    const Output o(cfg.output_dir);
    o.json("ode.json", io::to_json(prof));
    o.csv("profile.csv", io::profile_table(prof));
    const PeriodAnalysis& h = prof.header;
    out << "c=" << format_double(h.c) << '\n'
        << "k=" << h.k << '\n'
        << "u1=" << format_double(h.u1) << '\n'
        << "u_star=" << format_double(h.u_star) << '\n'
        << "required_u_star=" << format_double(h.required_u_star) << '\n'
        << "closure_gap=" << format_double(h.closure_gap) << '\n'
        << "numeric_period=" << format_double(prof.numeric_period) << '\n'
        << "angular_closure_defect=" << format_double(prof.angular_closure_defect) << '\n';
    return kOk;
}

int reduce(const RunConfig& cfg, std::ostream& out) {
    const CurveSpec curve = load_curve(cfg);
    check_regularity(curve);
    const CurveSpec red = reduced_curve(curve);
    const int k = winding_number(curve);
    const int k_red = winding_number(red);
    Json j;
    j["winding_number"] = k;
    j["reduced_winding_number"] = k_red;
    j["reduced_encloses_origin"] = k_red != 0;
    j["level_set_max_h"] = level_set_check(curve);
    j["lift_identity_residual"] = lift_identity_residual(curve);
    const Output o(cfg.output_dir);
    o.json("reduction.json", j);
    o.json("reduced_curve.json", io::to_json(red));
    out << "winding_number=" << k << '\n'
        << "reduced_winding_number=" << k_red << '\n'
        << "level_set_max_h=" << format_double(j["level_set_max_h"].get<double>()) << '\n'
        << "lift_identity_residual=" << format_double(j["lift_identity_residual"].get<double>()) << '\n';
    return kOk;
}

int intersections(const RunConfig& cfg, std::ostream& out) {
    const CurveSpec curve = load_curve(cfg);
    DoublePointOptions opt;
    opt.symmetry_tolerance = tol(cfg, "symmetry", opt.symmetry_tolerance);
    opt.root_tolerance = tol(cfg, "root", opt.root_tolerance);
    opt.touch_tolerance = tol(cfg, "touch", opt.touch_tolerance);
    opt.merge_tolerance = tol(cfg, "merge", opt.merge_tolerance);
    const DoublePointResult res = find_double_points(curve, opt);
    const Output o(cfg.output_dir);
    o.json("double_points.json", io::to_json(res));
    out << "centrally_symmetric=" << (res.centrally_symmetric ? "true" : "false") << '\n'
        << "double_points=" << res.points.size() << '\n';
    for (const DoublePoint& p : res.points)
        out << "  beta1=" << format_double(p.beta1) << " beta2=" << format_double(p.beta2)
            << " point=" << format_double(p.planar_point.real()) << ',' << format_double(p.planar_point.imag())
            << " kind=" << to_string(p.kind) << '\n';
    if (res.centrally_symmetric) out << "cover_residual=" << format_double(res.cover_residual) << '\n';
    return kOk;
}

int verify(const RunConfig& cfg, std::ostream& out) {
    BatteryOptions opt;
    opt.seed = cfg.seed;
    const std::vector<Check> checks = run_invariant_battery(opt);
    Json list = Json::array();
    std::size_t failed = 0;
    for (const Check& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << format_double(c.value)
            << (c.upper_bound ? " max=" : " min=") << format_double(c.threshold) << '\n';
        list.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold},
                        {"bound", c.upper_bound ? "max" : "min"}, {"passed", c.passed}});
        if (!c.passed) ++failed;
    }
    out << checks.size() - failed << '/' << checks.size() << " checks passed\n";
    const Output o(cfg.output_dir);
    o.json("pullbacks.json", io::to_json(verify_pullbacks(100, cfg.seed)));
    o.json("verify.json", Json{{"seed", cfg.seed}, {"checks", list}});
    return failed == 0 ? kOk : kNumerical;
}

} // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& [c, n] : kNames)
        if (name == n) return c;
    return std::nullopt;
}

const char* to_string(Command c) {
    for (const auto& [cmd, n] : kNames)
        if (cmd == c) return n;
    return "?";
}

void validate(const RunConfig& config) {
    const std::size_t n = config.n_samples;
    if (n < 64 || (n & (n - 1)) != 0)
        throw DomainError("--samples must be a power of two >= 64 (got " + std::to_string(n) + ")");
    const auto allowed = tolerance_names(config.command);
    for (const auto& [name, value] : config.tolerances) {
        if (!allowed.count(name))
            throw ParseError("unknown tolerance '" + name + "' for command " + to_string(config.command));
        if (!(value > 0.0)) throw DomainError("tolerance '" + name + "' must be positive");
    }
    if (config.ode_steps < 2) throw DomainError("--steps must be at least 2");
}

std::pair<std::string, double> parse_tolerance(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0) throw ParseError("--tol expects NAME=VALUE");
    const std::string_view value = text.substr(eq + 1);
    double x = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), x);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ParseError("--tol value is not a number: '" + std::string(value) + "'");
    return {std::string(text.substr(0, eq)), x};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        switch (config.command) {
        case Command::Analyze: return analyze(config, out, false);
        case Command::Stationarity: return analyze(config, out, true);
        case Command::Scan: return scan(config, out);
        case Command::Ode: return ode(config, out);
        case Command::Reduce: return reduce(config, out);
        case Command::Intersections: return intersections(config, out);
        case Command::Verify: return verify(config, out);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kValidation;
    } catch (const RegularityViolation& e) {
        err << "regularity violation: " << e.what() << '\n';
        return kValidation;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kValidation;
    } catch (const OrientationError& e) {
        err << "orientation error: " << e.what() << '\n';
        return kValidation;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kValidation;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kNumerical;
}

} // namespace lagtorus::cli

#include "lagtorus/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lagtorus/errors.hpp"
#include "lagtorus/quadrature.hpp"

namespace lagtorus::io {

namespace {

Json poly_json(const TrigPoly& p, bool with_a0) {
    Json j = Json::object();
    if (with_a0) j["a0"] = p.a0;
    j["cos"] = p.cos;
    j["sin"] = p.sin;
    return j;
}

double number(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ParseError(where + ": missing '" + key + "'");
    const Json& v = j.at(key);
    if (!v.is_number()) throw ParseError(where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError(where + "." + key + " must be finite");
    return x;
}

std::vector<double> number_list(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) return {};
    const Json& v = j.at(key);
    if (!v.is_array()) throw ParseError(where + "." + key + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const Json& e : v) {
        if (!e.is_number()) throw ParseError(where + "." + key + " must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

TrigPoly poly_from_json(const Json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError("'" + where + "' must be an object");
    TrigPoly p;
    p.a0 = j.contains("a0") ? number(j, "a0", where) : 0.0;
    p.cos = number_list(j, "cos", where);
    p.sin = number_list(j, "sin", where);
    return p;
}

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing '" + key + "'");
    return j.at(key);
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

} // namespace

Json to_json(const CurveSpec& curve) {
    Json j;
    j["log_rho"] = poly_json(curve.log_rho, true);
    Json f = Json::object();
    f["k"] = curve.k;
    if (curve.f_periodic.a0 != 0.0) f["a0"] = curve.f_periodic.a0;
    f["cos"] = curve.f_periodic.cos;
    f["sin"] = curve.f_periodic.sin;
    j["f"] = f;
    return j;
}

CurveSpec curve_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("curve spec must be a JSON object");
    CurveSpec c;
    c.log_rho = poly_from_json(member(j, "log_rho", "curve"), "log_rho");
    const Json& f = member(j, "f", "curve");
    c.f_periodic = poly_from_json(f, "f");
    const Json& k = member(f, "k", "f");
    if (!k.is_number_integer()) throw ParseError("f.k must be an integer");
    c.k = k.get<int>();
    return c;
}

Json to_json(const CurveFamily& family) {
    Json j;
    j["base"] = to_json(family.base);
    Json params = Json::array();
    for (const auto& p : family.parameters)
        params.push_back({{"name", p.name}, {"target", p.target}, {"lower", p.lower}, {"upper", p.upper}});
    j["parameters"] = params;
    j["min_rho_variance"] = family.min_rho_variance;
    return j;
}

CurveFamily family_from_json(const Json& j) {
    CurveFamily fam;
    fam.base = curve_from_json(member(j, "base", "family"));
    const Json& params = member(j, "parameters", "family");
    if (!params.is_array()) throw ParseError("family.parameters must be an array");
    for (const Json& p : params) {
        FamilyParameter fp;
        const Json& name = member(p, "name", "parameter");
        const Json& target = member(p, "target", "parameter");
        if (!name.is_string() || !target.is_string()) throw ParseError("parameter name and target must be strings");
        fp.name = name.get<std::string>();
        fp.target = target.get<std::string>();
        fp.lower = number(p, "lower", "parameter");
        fp.upper = number(p, "upper", "parameter");
        fam.parameters.push_back(fp);
    }
    if (j.contains("min_rho_variance")) fam.min_rho_variance = number(j, "min_rho_variance", "family");
    return fam;
}

OdeRequest ode_request_from_json(const Json& j) {
    OdeRequest r;
    r.c = number(j, "c", "ode");
    const Json& k = member(j, "k", "ode");
    if (!k.is_number_integer()) throw ParseError("ode.k must be an integer");
    r.k = k.get<int>();
    return r;
}

Json to_json(const StationarityReport& r) {
    Json j;
    j["n_samples"] = r.n_samples;
    j["c_estimate"] = r.c_estimate;
    j["defect"] = r.defect;
    j["relative_defect"] = r.relative_defect;
    j["b_estimate"] = r.b_estimate;
    j["b_spread"] = r.b_spread;
    j["rho_norm_H_min"] = r.rho_norm_H_min;
    j["rho_norm_H_max"] = r.rho_norm_H_max;
    j["max_abs_div_JH"] = r.max_abs_div_JH;
    j["rho_variance"] = r.rho_variance;
    j["n_critical_points"] = r.n_critical_points;
    j["n_critical_values"] = r.n_critical_values;
    j["verdict"] = to_string(r.verdict);
    return j;
}

Json to_json(const PeriodAnalysis& p) {
    Json j;
    j["c"] = p.c;
    j["k"] = p.k;
    j["R_min"] = p.R_min;
    j["R_max"] = p.R_max;
    j["u1"] = p.u1;
    j["u_star"] = p.u_star;
    j["required_u_star"] = p.required_u_star;
    j["closure_gap"] = p.closure_gap;
    return j;
}

Json to_json(const OdeProfile& p) {
    Json j = to_json(p.header);
    j["numeric_u1"] = p.numeric_u1;
    j["numeric_period"] = p.numeric_period;
    j["r_underline"] = p.r_underline;
    j["K"] = p.K;
    j["I_star"] = p.I_star;
    j["angular_increment"] = p.angular_increment;
    j["angular_closure_defect"] = p.angular_closure_defect;
    j["max_constraint_residual"] = p.max_constraint_residual;
    j["min_df_du"] = p.min_df_du;
    j["accepted_steps"] = p.accepted_steps;
    j["n_samples"] = p.samples.size();
    return j;
}

Json to_json(const DoublePointResult& r) {
    Json j;
    j["centrally_symmetric"] = r.centrally_symmetric;
    j["symmetry_distance"] = r.symmetry_distance;
    if (r.centrally_symmetric) {
        j["symmetry_shift"] = r.symmetry_shift;
        j["cover_residual"] = r.cover_residual;
    }
    Json pts = Json::array();
    for (const DoublePoint& p : r.points) {
        pts.push_back({{"beta1", p.beta1},
                       {"beta2", p.beta2},
                       {"planar_point", complex_json(p.planar_point)},
                       {"ambient_point", Json::array({p.ambient_point[0], p.ambient_point[1], p.ambient_point[2],
                                                      p.ambient_point[3]})},
                       {"kind", to_string(p.kind)},
                       {"residual", p.residual},
                       {"tangent_cross", p.tangent_cross},
                       {"tangent_rank", p.tangent_rank}});
    }
    j["double_points"] = pts;
    return j;
}

Json to_json(const PullbackReport& r) {
    Json j;
    j["n_trials"] = r.n_trials;
    j["l_residual"] = r.l_residual;
    j["psi_residual"] = r.psi_residual;
    j["phi_residual"] = r.phi_residual;
    j["psi_round_trip"] = r.psi_round_trip;
    j["phi_round_trip"] = r.phi_round_trip;
    j["orbit_dl"] = r.orbit_dl;
    j["orbit_omega"] = r.orbit_omega;
    j["level_h"] = r.level_h;
    return j;
}

Json to_json(const ScanResult& r, const CurveFamily& family) {
    Json j;
    j["grid_members"] = r.landscape.size();
    j["polish_evaluations"] = r.polish_evaluations;
    if (r.argmin) {
        Json best = Json::object();
        for (std::size_t i = 0; i < family.parameters.size(); ++i)
            best[family.parameters[i].name] = r.argmin->parameters[i];
        j["argmin"] = best;
        j["defect"] = r.argmin->defect;
        j["c_estimate"] = r.argmin->c_estimate;
    } else {
        j["argmin"] = nullptr;
    }
    j["scope"] = "minimum over the twisted family only; says nothing about other tori in the same Hamiltonian isotopy class";
    return j;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

CurveSpec read_curve(const std::filesystem::path& path) { return curve_from_json(read_json(path)); }

void write_curve(const std::filesystem::path& path, const CurveSpec& curve) { write_json(path, to_json(curve)); }

CurveFamily read_family(const std::filesystem::path& path) { return family_from_json(read_json(path)); }

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw IoError("csv row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_double(values[i]);
    }
    body_ += '\n';
    ++n_rows_;
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i];
    }
    out += '\n';
    return out + body_;
}

void CsvTable::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << str();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

CsvTable frames_table(const CurveSpec& curve, std::size_t n_samples) {
    CsvTable t({"beta", "alpha", "g_aa", "g_bb", "C", "norm_H", "rho_norm_H", "div_JH"});
    for (std::size_t j = 0; j < n_samples; ++j) {
        const GeometryFrame fr = geometry_frame(curve, 0.0, grid_angle(j, n_samples));
        t.add_row({fr.beta, fr.alpha, fr.g.g_aa, fr.g.g_bb, fr.mean.C, fr.mean.norm_H, fr.mean.rho_norm_H,
                   fr.div_JH});
    }
    return t;
}

CsvTable defect_trace_table(const std::vector<DefectTraceRow>& rows) {
    CsvTable t({"beta", "s", "rho_norm_H"});
    for (const auto& r : rows) t.add_row({r.beta, r.s, r.rho_norm_H});
    return t;
}

CsvTable profile_table(const OdeProfile& profile) {
    CsvTable t({"u", "R", "rho_candidate", "f"});
    for (const auto& s : profile.samples) t.add_row({s.u, s.R, s.rho_candidate, s.f});
    return t;
}

CsvTable landscape_table(const ScanResult& result, const CurveFamily& family) {
    std::vector<std::string> cols;
    for (const auto& p : family.parameters) cols.push_back(p.name);
    cols.insert(cols.end(), {"defect", "c_estimate", "excluded"});
    CsvTable t(cols);
    for (const auto& r : result.landscape) {
        std::vector<double> row = r.parameters;
        row.insert(row.end(), {r.defect, r.c_estimate, r.excluded ? 1.0 : 0.0});
        t.add_row(row);
    }
    return t;
}

} // namespace lagtorus::io

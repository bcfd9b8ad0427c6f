#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lagtorus/cli.hpp"
#include "lagtorus/errors.hpp"
#include "lagtorus/io.hpp"
#include "lagtorus/verify.hpp"

namespace py = pybind11;
using namespace lagtorus;
using io::Json;

namespace {

CurveSpec parse(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(e.what());
    }
    return io::curve_from_json(j);
}

std::string dump(const Json& j) { return j.dump(); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Twisted Lagrangian tori in C^2: geometry, stationarity, ODE profiles and reduction.";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<RegularityViolation>(m, "RegularityViolation", base.ptr());
    py::register_exception<CrossCheckMismatch>(m, "CrossCheckMismatch", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<OrientationError>(m, "OrientationError", base.ptr());
    py::register_exception<BudgetExhausted>(m, "BudgetExhausted", base.ptr());
    py::register_exception<IntegrationFailure>(m, "IntegrationFailure", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());
    py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());

    m.def("origin_circle", [](double r) { return dump(io::to_json(origin_circle(r))); }, py::arg("radius"));
    m.def("offset_circle", [](double x, double y, double r) { return dump(io::to_json(offset_circle({x, y}, r))); },
          py::arg("x"), py::arg("y"), py::arg("radius"));
    m.def("radial_cosine", [](double a, int n) { return dump(io::to_json(radial_cosine(a, n))); },
          py::arg("amplitude"), py::arg("harmonic") = 1);
    m.def("random_star_curve", [](std::uint64_t seed) { return dump(io::to_json(random_star_curve(seed))); },
          py::arg("seed"));

    m.def("points", [](const std::string& curve, const std::vector<double>& betas) {
        const CurveSpec c = parse(curve);
        std::vector<std::pair<double, double>> out;
        out.reserve(betas.size());
        for (double b : betas) {
            const Complex z = c.point(b);
            out.emplace_back(z.real(), z.imag());
        }
        return out;
    });
    m.def("winding_number", [](const std::string& curve) { return winding_number(parse(curve)); });
    m.def("signed_curvature", [](const std::string& curve, double beta) { return signed_curvature(parse(curve), beta); });
    m.def("total_curvature", [](const std::string& curve) { return total_curvature(parse(curve)); });

    m.def("defect", [](const std::string& curve, std::size_t n) {
        const DefectResult d = defect(parse(curve), n);
        return std::make_pair(d.c_estimate, d.defect);
    }, py::arg("curve"), py::arg("n_samples") = 2048);
    m.def("analyze_stationarity", [](const std::string& curve, std::size_t n) {
        StationarityOptions opt;
        opt.n_samples = n;
        return dump(io::to_json(analyze_stationarity(parse(curve), opt)));
    }, py::arg("curve"), py::arg("n_samples") = 2048);
    m.def("classify", [](const std::string& curve) { return std::string(to_string(classify(parse(curve)))); });

    m.def("period_analysis", [](double c, int k) { return dump(io::to_json(period_analysis(c, k))); },
          py::arg("c"), py::arg("k") = 0);
    m.def("integrate_profile", [](double c, std::size_t n, int k) {
        ProfileOptions opt;
        opt.k = k;
        const OdeProfile p = integrate_profile(c, n, opt);
        Json j = io::to_json(p);
        Json rows = Json::array();
        for (const ProfileSample& s : p.samples) rows.push_back({s.u, s.R, s.rho_candidate, s.f});
        j["samples"] = rows;
        return dump(j);
    }, py::arg("c"), py::arg("n_steps") = 1024, py::arg("k") = 0);

    m.def("reduced_curve", [](const std::string& curve) { return dump(io::to_json(reduced_curve(parse(curve)))); });
    m.def("level_set_check", [](const std::string& curve) { return level_set_check(parse(curve)); });
    m.def("find_double_points", [](const std::string& curve) {
        return dump(io::to_json(find_double_points(parse(curve))));
    });
    m.def("verify_pullbacks", [](std::size_t n, std::uint64_t seed) { return dump(io::to_json(verify_pullbacks(n, seed))); },
          py::arg("n_trials") = 100, py::arg("seed") = 20240611);

    m.def("run_cli", [](const std::string& command, const std::string& input, const std::string& output_dir,
                        std::size_t samples) {
        const auto cmd = cli::parse_command(command);
        if (!cmd) throw ParseError("unknown command '" + command + "'");
        cli::RunConfig cfg;
        cfg.command = *cmd;
        cfg.input_path = input;
        cfg.output_dir = output_dir;
        cfg.n_samples = samples;
        std::ostringstream out, err;
        const int code = cli::run(cfg, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("command"), py::arg("input") = "", py::arg("output_dir") = "", py::arg("samples") = 2048);
}

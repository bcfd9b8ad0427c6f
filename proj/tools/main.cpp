#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "lagtorus/cli.hpp"
#include "lagtorus/errors.hpp"

int main(int argc, char** argv) {
    using namespace lagtorus::cli;
    CLI::App app{"Twisted Lagrangian tori: stationarity, ODE obstruction and reduction checks"};
    app.require_subcommand(1);

    const std::map<Command, const char*> help{
        {Command::Analyze, "Winding, orientation, stationarity report and frame tables for a curve"},
        {Command::Stationarity, "Strict stationarity classification of a counterclockwise curve"},
        {Command::Scan, "Grid scan plus polish of the defect over a curve family"},
        {Command::Ode, "Radial profile of a stationary curve and its closure gap"},
        {Command::Reduce, "Reduced curve, winding and level-set checks"},
        {Command::Intersections, "Double points of the torus from gamma meeting -gamma"},
        {Command::Verify, "Full invariant battery; exits 2 if any check fails"}};

    RunConfig cfg;
    std::vector<std::string> tolerances;
    std::optional<double> c;
    std::optional<int> k;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--samples", cfg.n_samples, "Grid size, a power of two >= 64");
        sub->add_option("--tol", tolerances, "Tolerance override NAME=VALUE (repeatable)");
        sub->add_option("--seed", cfg.seed, "Seed for randomised checks");
        sub->add_option("--out", cfg.output_dir, "Directory for JSON and CSV outputs");
    };

    for (const Command cmd : {Command::Analyze, Command::Stationarity, Command::Scan, Command::Ode, Command::Reduce,
                              Command::Intersections, Command::Verify}) {
        CLI::App* sub = app.add_subcommand(to_string(cmd), help.at(cmd));
        add_common(sub);
        if (cmd == Command::Ode) {
            sub->add_option("input", cfg.input_path, "JSON file with {c, k}");
            sub->add_option("--c", c, "Stationarity constant, c > 2");
            sub->add_option("--k", k, "Winding number, 0 or 1");
            sub->add_option("--steps", cfg.ode_steps, "Uniform output intervals over one period");
        } else if (cmd != Command::Verify) {
            sub->add_option("input", cfg.input_path, cmd == Command::Scan ? "Family spec JSON" : "Curve spec JSON")
                ->required();
        }
        sub->callback([&cfg, cmd] { cfg.command = cmd; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }
    cfg.c = c;
    cfg.k = k;
    try {
        for (const auto& t : tolerances) cfg.tolerances.insert(parse_tolerance(t));
    } catch (const lagtorus::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kValidation;
    }
    return run(cfg, std::cout, std::cerr);
}

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hardy/commands.hpp"

using namespace hardy;

int main(int argc, char** argv) {
    CLI::App app{"Extremality analysis for punctured Hardy spaces"};
    app.require_subcommand(1);

    std::string problem_path;
    std::optional<double> tol_rank;
    std::optional<double> tol_quad;
    std::optional<std::size_t> grid;
    bool exact = false;
    auto* analyze = app.add_subcommand("analyze", "Decide extremality of a problem document");
    analyze->add_option("file", problem_path, "Problem document")->required();
    analyze->add_option("--tol-rank", tol_rank, "Relative singular value threshold")->check(CLI::PositiveNumber);
    analyze->add_option("--tol-quad", tol_quad, "Quadrature tolerance")->check(CLI::PositiveNumber);
    analyze->add_option("--grid", grid, "Initial quadrature grid size (power of two >= 16)");
    analyze->add_flag("--exact", exact, "Exact rational rank backend");

    std::string witness_path;
    auto* certify = app.add_subcommand("certify", "Re-verify a perturbation witness");
    certify->add_option("problem", problem_path, "Problem document")->required();
    certify->add_option("witness", witness_path, "Witness document or analysis report")->required();

    std::string template_path;
    std::vector<std::string> params;
    std::vector<std::string> ranges;
    std::size_t jobs = 1;
    std::string out_path;
    auto* sweep = app.add_subcommand("sweep", "Evaluate a template over a parameter grid");
    sweep->add_option("template", template_path, "Template document")->required();
    sweep->add_option("--param", params, "Swept parameter name (repeatable)")->required();
    sweep->add_option("--range", ranges, "a:b:step, one per --param")->required();
    sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_path, "CSV output path")->required();
    sweep->add_option("--tol-rank", tol_rank, "Relative singular value threshold")->check(CLI::PositiveNumber);

    std::string spec_path;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("gen", "Sample a random member document");
    gen->add_option("spec", spec_path, "Generator spec")->required();
    gen->add_option("--seed", seed, "Random seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code::input_error;
    }

    ToleranceOverrides environment;
    try {
        environment = overrides_from_environment();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }
    ToleranceOverrides flags;
    flags.rank = tol_rank;
    flags.quad = tol_quad;
    flags.grid = grid;
    if (exact) flags.backend = RankBackend::exact_rational;

    if (*analyze) return cmd_analyze(problem_path, environment, flags, std::cout, std::cerr);
    if (*certify) return cmd_certify(problem_path, witness_path, environment, std::cout, std::cerr);
    if (*gen) return cmd_gen(spec_path, seed, std::cout, std::cerr);

    if (params.size() != ranges.size()) {
        std::cerr << "error: each --param needs exactly one --range\n";
        return exit_code::input_error;
    }
    SweepOptions options;
    options.jobs = jobs;
    try {
        for (std::size_t i = 0; i < params.size(); ++i) options.axes.push_back(parse_range(params[i], ranges[i]));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return exit_code::input_error;
    }
    return cmd_sweep(template_path, options, environment, flags, csv, std::cerr);
}

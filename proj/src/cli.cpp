#include "mcf/cli.hpp"

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcf/errors.hpp"
#include "mcf/floer.hpp"
#include "mcf/kernels.hpp"
#include "mcf/moduli.hpp"
#include "mcf/pathspec.hpp"

namespace mcf::cli {

namespace {

struct CommonOpts {
    int N = 0;
    int r = 0;
    std::string path_file;
    int grid = 64;
    double tol_variety = 1e-9;
    double tol_solve = 1e-10;
    std::string out;
    std::string seed;
};

void emit(const nlohmann::json& report, const std::string& out) {
    const std::string text = report.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw ValidationError("output", "cannot open output file");
    os << text;
}

lefschetz::MatchingLoop load_loop(const std::string& file) {
    std::ifstream is(file);
    if (!is) throw ValidationError("parse", "cannot read path file");
    nlohmann::json spec;
    try {
        is >> spec;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("parse", std::string("malformed path spec: ") + e.what());
    }
    return lefschetz::loop_from_json(spec);
}

void finalize(nlohmann::json& report, const CommonOpts& opts) {
    if (!opts.seed.empty()) report["seed"] = std::stoll(opts.seed);
    emit(report, opts.out);
}

// Per-component strip diagnostics: solve, residuals, and both index routes.
nlohmann::json strips_report(const floer::CycleInput& input, const CommonOpts& opts) {
    using moduli::JumpEnd;
    const bool solvable = input.standard() || input.loop->is_circle;
    const floer::MorseData morse = floer::default_morse_data();

    moduli::IndexTable table;
    {
        const lagrangian::BranchPair pq{lagrangian::Pole::P, lagrangian::Pole::Q};
        const lagrangian::BranchPair qp{lagrangian::Pole::Q, lagrangian::Pole::P};
        if (input.standard()) {
            table.pq = lagrangian::branch_index(input.params, input.r, pq).index;
            table.qp = lagrangian::branch_index(input.params, input.r, qp).index;
        } else {
            table.pq = lagrangian::branch_index_loop(input.params, *input.loop, pq).index;
            table.qp = lagrangian::branch_index_loop(input.params, *input.loop, qp).index;
        }
    }

    auto describe = [&](const moduli::StripComponent& comp,
                        const moduli::StripMap* sm) -> nlohmann::json {
        nlohmann::json entry;
        entry["direction"] = comp.direction == JumpEnd::Plus    ? "plus"
                             : comp.direction == JumpEnd::Minus ? "minus"
                                                                : "both";
        entry["split"] = comp.split;
        const moduli::BranchData data = moduli::branch_data_for(comp);
        entry["maslov_combinatorial"] = moduli::maslov_combinatorial(data, table);
        entry["fredholm_index"] = moduli::fredholm_index(data, table);
        if (sm) {
            entry["theta"] = sm->theta;
            entry["sigma"] = arg2pi(sm->z1);
            entry["residual_variety"] = sm->residual_variety;
            entry["residual_boundary"] = sm->residual_boundary;
            entry["residual_identity"] = sm->residual_identity;
            entry["maslov_winding"] = moduli::maslov_winding(*sm);
        } else {
            entry["solve"] = "skipped";
        }
        return entry;
    };

    nlohmann::json strips = nlohmann::json::array();
    auto comps = input.standard() ? moduli::strip_components(input.params, input.r)
                                  : moduli::strip_components(input.params, *input.loop);
    for (const moduli::StripComponent& comp : comps) {
        if (!solvable) {
            strips.push_back(describe(comp, nullptr));
            continue;
        }
        const lagrangian::ChartPoint target =
            comp.direction == JumpEnd::Plus ? morse.p_min : morse.p_max;
        const moduli::SolveResult sol = moduli::solve_ev(comp, target, opts.tol_solve);
        const moduli::StripMap sm = moduli::strip_eval(comp, sol.theta, sol.z1, opts.grid);
        strips.push_back(describe(comp, &sm));
    }

    // One degree-two representative with jumps at both ends.
    if (solvable && !comps.empty()) {
        moduli::StripComponent both = comps.front();
        both.split.clear();
        both.direction = JumpEnd::Both;
        const moduli::StripMap sm = moduli::strip_eval_both_jumps(both, 0.0, 0.3, opts.grid);
        strips.push_back(describe(both, &sm));
    }

    nlohmann::json report;
    report["N"] = input.params.N;
    report["input"] = input.echo;
    report["indices"] = {{"pq", table.pq}, {"qp", table.qp}};
    report["strips"] = strips;
    return report;
}

nlohmann::json verify_report(const floer::CycleInput& input, const CommonOpts& opts) {
    const variety::SurfaceParams params = input.params;
    const int r = input.r;
    nlohmann::json residuals;
    residuals["immersion"] = kern::grid_max(opts.grid, opts.grid, [&](int i, int j) {
        const lagrangian::ChartPoint pt{-kPi + (i + 0.5) * kTwoPi / opts.grid,
                                        j * kTwoPi / opts.grid, lagrangian::Pole::None};
        return std::abs(
            variety::poly_eval(params, lagrangian::immersion_eval(params, r, pt)));
    });
    residuals["special_lagrangian"] =
        lagrangian::special_lagrangian_residual(params, r, opts.grid);

    const floer::MorseData morse = floer::default_morse_data();
    double rv = 0.0, rb = 0.0;
    for (const moduli::StripComponent& comp : moduli::strip_components(params, r)) {
        if (!comp.split.empty()) continue;
        const lagrangian::ChartPoint target =
            comp.direction == moduli::JumpEnd::Plus ? morse.p_min : morse.p_max;
        const moduli::SolveResult sol = moduli::solve_ev(comp, target, opts.tol_solve);
        const moduli::StripMap sm = moduli::strip_eval(comp, sol.theta, sol.z1, opts.grid);
        rv = std::max(rv, sm.residual_variety);
        rb = std::max(rb, sm.residual_boundary);
    }
    residuals["strip_variety"] = rv;
    residuals["strip_boundary"] = rb;

    const bool pass = residuals["immersion"].get<double>() < opts.tol_variety &&
                      residuals["special_lagrangian"].get<double>() < 1e-7 &&
                      rv < opts.tol_variety && rb < opts.tol_variety;

    nlohmann::json report;
    report["N"] = params.N;
    report["input"] = input.echo;
    report["grid"] = opts.grid;
    report["tolerances"] = {{"variety", opts.tol_variety},
                            {"special_lagrangian", 1e-7},
                            {"solve", opts.tol_solve}};
    report["residuals"] = residuals;
    report["pass"] = pass;
    return report;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool wants_r, bool wants_path) {
    cmd->add_option("--N", opts.N, "number of critical values")->required();
    if (wants_r) cmd->add_option("--r", opts.r, "standard sphere radius");
    if (wants_path) cmd->add_option("--path", opts.path_file, "path-spec JSON file");
    cmd->add_option("--grid", opts.grid, "verification grid size");
    cmd->add_option("--tol-variety", opts.tol_variety, "on-variety tolerance");
    cmd->add_option("--tol-solve", opts.tol_solve, "evaluation solve tolerance");
    cmd->add_option("--out", opts.out, "output file (default stdout)");
    cmd->add_option("--seed", opts.seed, "seed echoed into the report");
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Floer cohomology of immersed matching-cycle spheres in xy = (z-1)...(z-N)"};
    app.require_subcommand(1);

    CommonOpts std_opts, loop_opts, strip_opts, verify_opts;
    CLI::App* hf_std = app.add_subcommand("hf-std", "cohomology of the standard sphere");
    add_common(hf_std, std_opts, true, false);
    hf_std->get_option("--r")->required();

    CLI::App* hf_loop = app.add_subcommand("hf-loop", "cohomology over a matching loop");
    add_common(hf_loop, loop_opts, false, true);
    hf_loop->get_option("--path")->required();

    CLI::App* strips = app.add_subcommand("strips", "per-component strip diagnostics");
    add_common(strips, strip_opts, true, true);

    CLI::App* verify = app.add_subcommand("verify", "residual verification block");
    add_common(verify, verify_opts, true, false);
    verify->get_option("--r")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        nlohmann::json err{{"error", e.what()}, {"stage", "parse"}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }

    try {
        if (hf_std->parsed()) {
            auto input = floer::standard_input(std_opts.N, std_opts.r);
            nlohmann::json report =
                floer::floer_cohomology(input, std_opts.grid, std_opts.tol_solve);
            finalize(report, std_opts);
        } else if (hf_loop->parsed()) {
            auto input =
                floer::loop_input(loop_opts.N, load_loop(loop_opts.path_file));
            nlohmann::json report =
                floer::floer_cohomology(input, loop_opts.grid, loop_opts.tol_solve);
            finalize(report, loop_opts);
        } else if (strips->parsed()) {
            if (strip_opts.path_file.empty() && strip_opts.r == 0)
                throw ValidationError("parse", "strips needs --r or --path");
            auto input = strip_opts.path_file.empty()
                             ? floer::standard_input(strip_opts.N, strip_opts.r)
                             : floer::loop_input(strip_opts.N,
                                                 load_loop(strip_opts.path_file));
            nlohmann::json report = strips_report(input, strip_opts);
            finalize(report, strip_opts);
        } else if (verify->parsed()) {
            auto input = floer::standard_input(verify_opts.N, verify_opts.r);
            if (verify_opts.r < 1 || verify_opts.r > verify_opts.N)
                throw ValidationError("validate", "r out of range");
            nlohmann::json report = verify_report(input, verify_opts);
            finalize(report, verify_opts);
        }
        return 0;
    } catch (const ValidationError& e) {
        nlohmann::json err{{"error", e.what()}, {"stage", e.stage()}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const NumericalError& e) {
        nlohmann::json err{{"error", e.what()}, {"stage", e.stage()}};
        std::cerr << err.dump(2) << "\n";
        return 3;
    }
}

} // namespace mcf::cli

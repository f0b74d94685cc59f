#include "mcf/floer.hpp"

#include <cmath>
#include <string>

#include "mcf/errors.hpp"
#include "mcf/kernels.hpp"
#include "mcf/pathspec.hpp"

namespace mcf::floer {

using lagrangian::BranchPair;
using lagrangian::ChartPoint;
using lagrangian::Pole;

int degree_of(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::PMin: return 0;
        case GeneratorKind::PMax: return 2;
        case GeneratorKind::PQ: return -1;
        case GeneratorKind::QP: return 3;
    }
    throw ValidationError("generator", "unknown generator kind");
}

Generator generator(GeneratorKind kind) {
    return {kind, degree_of(kind)};
}

std::vector<Generator> generators() {
    return {generator(GeneratorKind::PQ), generator(GeneratorKind::PMin),
            generator(GeneratorKind::PMax), generator(GeneratorKind::QP)};
}

int moduli_dimension(const Generator& x_minus, const Generator& x_plus) {
    return x_minus.degree - x_plus.degree - 1;
}

MorseData default_morse_data() {
    return {ChartPoint{0.0, kPi, Pole::None}, ChartPoint{0.7, 0.0, Pole::None}};
}

CycleInput standard_input(int N, int r) {
    CycleInput in;
    in.params = {N};
    in.r = r;
    in.echo = nlohmann::json{{"type", "standard"}, {"r", r}};
    return in;
}

CycleInput loop_input(int N, lefschetz::MatchingLoop loop) {
    CycleInput in;
    in.params = {N};
    in.echo = lefschetz::loop_to_json(loop);
    in.loop = std::move(loop);
    return in;
}

int enclosed_count(const CycleInput& input) {
    if (input.standard()) {
        if (input.r < 1 || input.r > input.params.N)
            throw ValidationError("validate", "r out of range");
        return input.r - 1;
    }
    return lefschetz::winding_count(input.params, *input.loop).C;
}

namespace {

std::vector<moduli::StripComponent> components_of(const CycleInput& input) {
    if (input.standard()) return moduli::strip_components(input.params, input.r);
    return moduli::strip_components(input.params, *input.loop);
}

bool is_morse(GeneratorKind k) {
    return k == GeneratorKind::PMin || k == GeneratorKind::PMax;
}

std::string direction_name(moduli::JumpEnd dir) {
    switch (dir) {
        case moduli::JumpEnd::Plus: return "plus";
        case moduli::JumpEnd::Minus: return "minus";
        case moduli::JumpEnd::Both: return "both";
    }
    return "?";
}

int count_case(const CycleInput& input, moduli::JumpEnd dir, const ChartPoint& target,
               CountMode mode, double tol, nlohmann::json* details) {
    int count = 0;
    for (const moduli::StripComponent& comp : components_of(input)) {
        if (comp.direction != dir) continue;
        nlohmann::json entry;
        entry["direction"] = direction_name(comp.direction);
        entry["split"] = comp.split;
        if (mode == CountMode::Enumerate) {
            entry["solve"] = "skipped";
            ++count;
        } else {
            try {
                const moduli::SolveResult sol = moduli::solve_ev(comp, target, tol);
                entry["theta"] = sol.theta;
                entry["sigma"] = arg2pi(sol.z1);
                ++count;
            } catch (const NumericalError& err) {
                entry["solve"] = "failed";
                entry["error"] = err.what();
            }
        }
        if (details) details->push_back(std::move(entry));
    }
    return count;
}

int connecting_count_impl(const CycleInput& input, const Generator& x_minus,
                          const Generator& x_plus, CountMode mode, double tol,
                          nlohmann::json* details) {
    if (moduli_dimension(x_minus, x_plus) != 0)
        throw ValidationError("count", "moduli dimension must be zero");
    const MorseData morse = default_morse_data();
    if (is_morse(x_minus.kind) && is_morse(x_plus.kind)) {
        // Two-critical-point height model: no rigid trajectories at all.
        return 0;
    }
    if (x_minus.kind == GeneratorKind::PMin && x_plus.kind == GeneratorKind::PQ)
        return count_case(input, moduli::JumpEnd::Plus, morse.p_min, mode, tol, details);
    if (x_minus.kind == GeneratorKind::QP && x_plus.kind == GeneratorKind::PMax)
        return count_case(input, moduli::JumpEnd::Minus, morse.p_max, mode, tol, details);
    // Branch pair to branch pair: excluded by the action positivity of the
    // jump with positive primitive difference.
    return 0;
}

// K at the end arriving over t = 1 minus K at the start, for dK the
// restriction of the primitive one-form to the cycle section theta = 0.
double loop_primitive_difference(const SurfaceParams& params,
                                 const lefschetz::MatchingLoop& loop) {
    auto integrand = [&](double t) {
        const double h = 1e-6;
        const variety::SurfacePoint p = lefschetz::matching_cycle_sample(params, loop, t, 0.0);
        const variety::SurfacePoint pp =
            lefschetz::matching_cycle_sample(params, loop, t + h, 0.0);
        const variety::SurfacePoint pm =
            lefschetz::matching_cycle_sample(params, loop, t - h, 0.0);
        const variety::TangentVector v{(pp.x - pm.x) / (2 * h), (pp.y - pm.y) / (2 * h),
                                       (pp.z - pm.z) / (2 * h)};
        return variety::primitive_one_form(p, v);
    };
    auto midpoint = [&](int n) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += integrand((i + 0.5) / n);
        return sum / n;
    };
    int n = 256;
    double prev = midpoint(n);
    for (int iter = 0; iter < 10; ++iter) {
        n *= 2;
        const double next = midpoint(n);
        if (std::abs(next - prev) < 1e-5 * (1.0 + std::abs(next))) return next;
        prev = next;
    }
    throw NumericalError("quadrature", "cycle primitive quadrature did not converge");
}

} // namespace

int connecting_count(const CycleInput& input, const Generator& x_minus,
                     const Generator& x_plus, CountMode mode) {
    return connecting_count_impl(input, x_minus, x_plus, mode, 1e-10, nullptr);
}

gf2::GradedComplex build_complex(const CycleInput& input, CountMode mode) {
    const int c_min = connecting_count(input, generator(GeneratorKind::PMin),
                                       generator(GeneratorKind::PQ), mode);
    const int c_max = connecting_count(input, generator(GeneratorKind::QP),
                                       generator(GeneratorKind::PMax), mode);
    gf2::GradedComplex cx;
    cx.dims = {{-1, 1}, {0, 1}, {2, 1}, {3, 1}};
    gf2::Matrix d_pq(1, 1);
    d_pq.set(0, 0, c_min % 2 != 0);
    gf2::Matrix d_max(1, 1);
    d_max.set(0, 0, c_max % 2 != 0);
    cx.diff[-1] = d_pq;
    cx.diff[2] = d_max;
    gf2::validate_complex(cx);
    return cx;
}

std::map<int, int> cohomology(const gf2::GradedComplex& cx) {
    return gf2::cohomology_dims(cx);
}

nlohmann::json floer_cohomology(const CycleInput& input, int grid, double tol_solve) {
    const SurfaceParams params = input.params;
    if (!input.standard()) lefschetz::validate_loop(params, *input.loop);
    const int C = enclosed_count(input);
    const bool solvable = input.standard() || input.loop->is_circle;
    const CountMode mode = solvable ? CountMode::Solve : CountMode::Enumerate;
    const MorseData morse = default_morse_data();

    nlohmann::json per_component = nlohmann::json::array();
    const int c_min =
        connecting_count_impl(input, generator(GeneratorKind::PMin),
                              generator(GeneratorKind::PQ), mode, tol_solve, &per_component);
    const int c_max =
        connecting_count_impl(input, generator(GeneratorKind::QP),
                              generator(GeneratorKind::PMax), mode, tol_solve, &per_component);

    gf2::GradedComplex cx;
    cx.dims = {{-1, 1}, {0, 1}, {2, 1}, {3, 1}};
    gf2::Matrix d_pq(1, 1);
    d_pq.set(0, 0, c_min % 2 != 0);
    gf2::Matrix d_max(1, 1);
    d_max.set(0, 0, c_max % 2 != 0);
    cx.diff[-1] = d_pq;
    cx.diff[2] = d_max;
    const std::map<int, int> dims = cohomology(cx);

    // Residual block.
    double res_immersion = 0.0;
    if (input.standard()) {
        res_immersion = kern::grid_max(grid, grid, [&](int i, int j) {
            const ChartPoint pt{-kPi + (i + 0.5) * kTwoPi / grid, j * kTwoPi / grid,
                                Pole::None};
            return std::abs(variety::poly_eval(
                params, lagrangian::immersion_eval(params, input.r, pt)));
        });
    } else {
        res_immersion = kern::grid_max(grid, grid, [&](int i, int j) {
            const double t = (i + 0.5) / grid;
            const double th = j * kTwoPi / grid;
            return std::abs(variety::poly_eval(
                params, lefschetz::matching_cycle_sample(params, *input.loop, t, th)));
        });
    }

    nlohmann::json residuals;
    residuals["immersion"] = res_immersion;
    if (solvable) {
        double rv = 0.0, rb = 0.0, ri = 0.0;
        for (const moduli::StripComponent& comp : components_of(input)) {
            if (!comp.split.empty()) continue;  // one representative per direction
            const ChartPoint target =
                comp.direction == moduli::JumpEnd::Plus ? morse.p_min : morse.p_max;
            const moduli::SolveResult sol = moduli::solve_ev(comp, target, tol_solve);
            const moduli::StripMap sm = moduli::strip_eval(comp, sol.theta, sol.z1, grid);
            rv = std::max(rv, sm.residual_variety);
            rb = std::max(rb, sm.residual_boundary);
            ri = std::max(ri, sm.residual_identity);
        }
        residuals["strip_variety"] = rv;
        residuals["strip_boundary"] = rb;
        residuals["strip_identity"] = ri;
    } else {
        residuals["strip_variety"] = nullptr;
        residuals["strip_boundary"] = nullptr;
        residuals["strip_identity"] = nullptr;
    }
    if (input.standard())
        residuals["special_lagrangian"] =
            lagrangian::special_lagrangian_residual(params, input.r, grid);
    else
        residuals["special_lagrangian"] = nullptr;

    // Positivity: the branch pair with positive primitive difference must
    // carry index 3 (>= (n+3)/2 with n = 2).
    const double prim = input.standard()
                            ? lagrangian::exactness_primitive_diff(params, input.r)
                            : loop_primitive_difference(params, *input.loop);
    const BranchPair positive_pair = prim > 0 ? BranchPair{Pole::P, Pole::Q}
                                              : BranchPair{Pole::Q, Pole::P};
    const lagrangian::BranchIndexResult pos_idx =
        input.standard() ? lagrangian::branch_index(params, input.r, positive_pair)
                         : lagrangian::branch_index_loop(params, *input.loop, positive_pair);
    const bool positivity = pos_idx.index == 3;

    nlohmann::json report;
    report["N"] = params.N;
    report["input"] = input.echo;
    report["C"] = C;
    report["counts"] = {{"min_to_pq", c_min},
                        {"qp_to_max", c_max},
                        {"components_per_direction", 1 << C},
                        {"mode", mode == CountMode::Solve ? "solve" : "enumeration"},
                        {"per_component", per_component}};
    nlohmann::json dmat;
    dmat["-1"] = nlohmann::json::array({nlohmann::json::array({d_pq.get(0, 0) ? 1 : 0})});
    dmat["2"] = nlohmann::json::array({nlohmann::json::array({d_max.get(0, 0) ? 1 : 0})});
    report["differential"] = dmat;
    report["cohomology"] = {{"-1", dims.at(-1)},
                            {"0", dims.at(0)},
                            {"2", dims.at(2)},
                            {"3", dims.at(3)}};
    report["residuals"] = residuals;
    report["positivity_check"] = positivity;
    report["positivity_detail"] = {
        {"primitive_difference", prim},
        {"positive_pair", prim > 0 ? "pq" : "qp"},
        {"index", pos_idx.index}};
    report["conventions"] = {
        "differential pairs p_max with the (q,p) generator through minus-end-jump strips",
        "morse anchors: p_min at chart (0, pi), p_max at chart (0.7, 0)",
        "primitive one-form lambda(v) = -1/2 sum Im(conj(z_k) v_k)",
        "branch-to-branch connecting counts excluded by action positivity"};
    return report;
}

} // namespace mcf::floer

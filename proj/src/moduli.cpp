#include "mcf/moduli.hpp"

#include <algorithm>
#include <cmath>

#include "mcf/errors.hpp"

namespace mcf::moduli {

namespace {

bool contains(const std::vector<int>& v, int m) {
    return std::find(v.begin(), v.end(), m) != v.end();
}

Complex poly_direct(const variety::SurfaceParams& params, Complex z) {
    Complex prod = 1.0;
    for (int m = 1; m <= params.N; ++m) prod *= z - static_cast<double>(m);
    return prod;
}

// Product of the square-root factors shared by the x- and y-coordinates.
// Every w-dependent factor below stays in a half-plane missing the branch
// cut of the square root applied to it, so no phase tracking is needed.
Complex common_block(const StripComponent& comp, Complex hval) {
    if (comp.standard()) {
        const int r = comp.r;
        Complex prod = 1.0;
        for (int j = 1; j <= r; ++j)
            prod *= sqrt_cut_positive(static_cast<double>(j) * hval - static_cast<double>(r));
        for (int m = r + 1; m <= comp.params.N; ++m)
            prod *= sqrt_cut_positive(static_cast<double>(r) * hval - static_cast<double>(m));
        return prod;
    }
    const Complex c = comp.loop->center;
    const Complex vc = Complex(static_cast<double>(comp.loop->basepoint), 0.0) - c;
    const Complex sv = sqrt_cut_positive(vc);
    Complex prod = sv * sqrt_cut_positive(hval - 1.0);
    for (int m = 1; m <= comp.params.N; ++m) {
        if (m == comp.loop->basepoint) continue;
        const Complex wm = (Complex(static_cast<double>(m), 0.0) - c) / vc;
        if (contains(comp.enclosed, m))
            prod *= sv * std::sqrt(1.0 - std::conj(wm) * hval);
        else
            prod *= sqrt_cut_positive(vc * (-wm)) * std::sqrt(1.0 - hval / wm);
    }
    return prod;
}

// Unit-modulus Moebius factor carried by exactly one of x, y per enclosed value.
Complex mobius_factor(const StripComponent& comp, int m, Complex hval) {
    if (comp.standard()) {
        const double r = comp.r;
        return (r * hval - static_cast<double>(m)) / (static_cast<double>(m) * hval - r);
    }
    const Complex c = comp.loop->center;
    const Complex vc = Complex(static_cast<double>(comp.loop->basepoint), 0.0) - c;
    const Complex wm = (Complex(static_cast<double>(m), 0.0) - c) / vc;
    return (hval - wm) / (1.0 - std::conj(wm) * hval);
}

BlaschkeProduct identity_blaschke() {
    return blaschke_make({Complex(0.0, 0.0)}, Complex(1.0, 0.0));
}

void check_component(const StripComponent& comp) {
    if (comp.standard()) {
        if (comp.r < 1 || comp.r > comp.params.N)
            throw ValidationError("strip", "r out of range");
    } else if (!comp.loop->is_circle) {
        throw ValidationError("strip", "strip evaluation requires a circular path");
    }
    for (int m : comp.split)
        if (!contains(comp.enclosed, m))
            throw ValidationError("strip", "split is not a subset of the enclosed values");
}

void verify_on_grid(StripMap& sm, int grid) {
    const int ns = std::max(grid, 8);
    const int nt = std::max(grid / 4, 4);
    double rv = 0.0, ri = 0.0;
    for (int i = 0; i < ns; ++i) {
        const double s = -3.0 + 6.0 * i / (ns - 1);
        for (int j = 0; j <= nt; ++j) {
            const double t = static_cast<double>(j) / nt;
            const Complex w = sm.disc_coord(s, t);
            const SurfacePoint p = sm.eval_disc(w);
            rv = std::max(rv, std::abs(variety::poly_eval(sm.component.params, p)));
            ri = std::max(ri, std::abs(p.x * p.y - poly_direct(sm.component.params, p.z)));
        }
    }
    double rb = 0.0;
    for (int i = 0; i < 256; ++i) {
        const Complex w = std::polar(1.0, kTwoPi * (i + 0.5) / 256);
        const SurfacePoint p = sm.eval_disc(w);
        rb = std::max(rb, std::abs(std::abs(p.x) - std::abs(p.y)));
        rb = std::max(rb, std::abs(std::abs(sm.h(w)) - 1.0));
    }
    sm.residual_variety = rv;
    sm.residual_identity = ri;
    sm.residual_boundary = rb;
}

struct EvOut {
    double a = 0.0;
    double b = 0.0;
    double modulus_err = 0.0;
};

// Chart lift of the boundary limit at the smooth puncture z1 = e^{i sigma}
// for a one-jump strip (where h is the identity).
EvOut ev_core(const StripComponent& comp, double theta, double sigma) {
    const Complex hv = std::polar(1.0, sigma);
    Complex fz = std::polar(1.0, theta) * common_block(comp, hv);
    for (int m : comp.split) fz *= mobius_factor(comp, m, hv);

    EvOut out;
    Complex ref;
    if (comp.standard()) {
        const double fa = std::arg(-hv);  // z = -r e^{i f(a)} and z = r hv
        out.a = lagrangian::profile().inverse(fa);
        const lagrangian::ChartPoint pt{out.a, 0.0, lagrangian::Pole::None};
        ref = lagrangian::immersion_eval(comp.params, comp.r, pt).x;
    } else {
        const double t = arg2pi(hv) / kTwoPi;
        out.a = kTwoPi * t - kPi;
        ref = lefschetz::cycle_fiber_root(comp.params, *comp.loop, t);
    }
    out.b = std::arg(fz * std::conj(ref));
    out.modulus_err = std::abs(std::abs(fz) - std::abs(ref)) / (1.0 + std::abs(ref));
    return out;
}

double end_correction(const StripComponent& comp, bool jump, const lagrangian::BranchPair& pair) {
    double ab = 1.0;  // a smooth end is a definite path between equal planes
    if (jump) {
        const lagrangian::BranchIndexResult res =
            comp.standard() ? lagrangian::branch_index(comp.params, comp.r, pair)
                            : lagrangian::branch_index_loop(comp.params, *comp.loop, pair);
        ab = res.alpha + res.beta;
    }
    return kTwoPi * (2.0 * ab - 1.0);
}

} // namespace

Complex BlaschkeProduct::operator()(Complex z) const {
    Complex out = lambda;
    for (Complex a : alphas) out *= (z - a) / (std::conj(a) * z - 1.0);
    return out;
}

Complex BlaschkeProduct::deriv(Complex z) const {
    Complex sum = 0.0;
    for (size_t j = 0; j < alphas.size(); ++j) {
        Complex term = lambda * (std::norm(alphas[j]) - 1.0);
        const Complex den = std::conj(alphas[j]) * z - 1.0;
        term /= den * den;
        for (size_t k = 0; k < alphas.size(); ++k) {
            if (k == j) continue;
            term *= (z - alphas[k]) / (std::conj(alphas[k]) * z - 1.0);
        }
        sum += term;
    }
    return sum;
}

BlaschkeProduct blaschke_make(std::vector<Complex> alphas, Complex anchor) {
    for (Complex a : alphas)
        if (std::abs(a) >= 1.0)
            throw ValidationError("blaschke", "factor zero not inside the disc");
    BlaschkeProduct h{Complex(1.0, 0.0), std::move(alphas)};
    const Complex at = h(anchor);
    if (std::abs(at) < 1e-14)
        throw ValidationError("blaschke", "anchor collides with a zero");
    h.lambda = std::conj(at) / std::abs(at);
    return h;
}

std::vector<StripComponent> strip_components(const SurfaceParams& params, int r) {
    if (r < 1 || r > params.N) throw ValidationError("strip", "r out of range");
    std::vector<int> enclosed;
    for (int m = 1; m < r; ++m) enclosed.push_back(m);
    std::vector<StripComponent> out;
    const int n = static_cast<int>(enclosed.size());
    for (JumpEnd dir : {JumpEnd::Plus, JumpEnd::Minus}) {
        for (int mask = 0; mask < (1 << n); ++mask) {
            StripComponent comp;
            comp.params = params;
            comp.r = r;
            comp.enclosed = enclosed;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) comp.split.push_back(enclosed[i]);
            comp.direction = dir;
            out.push_back(std::move(comp));
        }
    }
    return out;
}

std::vector<StripComponent> strip_components(const SurfaceParams& params,
                                             const lefschetz::MatchingLoop& loop) {
    lefschetz::validate_loop(params, loop);
    const lefschetz::EnclosureReport enc = lefschetz::winding_count(params, loop);
    std::vector<StripComponent> out;
    const int n = enc.C;
    for (JumpEnd dir : {JumpEnd::Plus, JumpEnd::Minus}) {
        for (int mask = 0; mask < (1 << n); ++mask) {
            StripComponent comp;
            comp.params = params;
            comp.r = 0;
            comp.loop = loop;
            comp.enclosed = enc.enclosed;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) comp.split.push_back(enc.enclosed[i]);
            comp.direction = dir;
            out.push_back(std::move(comp));
        }
    }
    return out;
}

Complex StripMap::z_of_h(Complex hval) const {
    if (component.standard()) return static_cast<double>(component.r) * hval;
    const Complex c = component.loop->center;
    return c + (Complex(static_cast<double>(component.loop->basepoint), 0.0) - c) * hval;
}

Complex StripMap::f_eval(Complex w) const {
    const Complex hv = h(w);
    Complex out = std::polar(1.0, theta) * common_block(component, hv);
    for (int m : component.split) out *= mobius_factor(component, m, hv);
    return out;
}

Complex StripMap::g_eval(Complex w) const {
    const Complex hv = h(w);
    Complex out = std::polar(1.0, -theta) * common_block(component, hv);
    for (int m : component.enclosed)
        if (!contains(component.split, m)) out *= mobius_factor(component, m, hv);
    return out;
}

SurfacePoint StripMap::eval_disc(Complex w) const {
    return {f_eval(w), g_eval(w), z_of_h(h(w))};
}

Complex StripMap::disc_coord(double s, double t) const {
    const double sigma = arg2pi(z1);
    const double zeta1 = -1.0 / std::tan(sigma / 2);
    // Upper-half-plane model: the jump end sits over zeta = infinity (w = 1),
    // the smooth end over zeta = zeta1 (w = z1).
    Complex zeta;
    if (component.direction == JumpEnd::Minus)
        zeta = -std::exp(-kPi * Complex(s, t));
    else
        zeta = std::exp(kPi * Complex(s, t));
    const Complex sum = zeta + zeta1;
    return (sum - Complex(0.0, 1.0)) / (sum + Complex(0.0, 1.0));
}

SurfacePoint StripMap::eval(double s, double t) const {
    return eval_disc(disc_coord(s, t));
}

StripMap strip_eval(const StripComponent& component, double theta, Complex z1, int grid) {
    check_component(component);
    if (std::abs(std::abs(z1) - 1.0) > 1e-9)
        throw ValidationError("strip", "puncture must lie on the boundary circle");
    if (std::abs(z1 - Complex(1.0, 0.0)) < 1e-9)
        throw ValidationError("strip", "puncture collides with the jump puncture at 1");
    if (component.direction == JumpEnd::Both)
        throw ValidationError("strip", "both-jump components need the degree-two builder");
    StripMap sm;
    sm.component = component;
    sm.theta = theta;
    sm.z1 = z1 / std::abs(z1);
    sm.h = identity_blaschke();
    verify_on_grid(sm, grid);
    return sm;
}

StripMap strip_eval_both_jumps(const StripComponent& component, double theta, double alpha,
                               int grid) {
    check_component(component);
    if (component.direction != JumpEnd::Both)
        throw ValidationError("strip", "component does not carry jumps at both ends");
    StripMap sm;
    sm.component = component;
    sm.theta = theta;
    sm.z1 = Complex(-1.0, 0.0);
    sm.h = blaschke_make({Complex(0.0, 0.0), Complex(alpha, 0.0)}, Complex(1.0, 0.0));
    verify_on_grid(sm, grid);
    return sm;
}

lagrangian::ChartPoint ev_smooth_end(const StripMap& strip) {
    if (strip.component.direction == JumpEnd::Both)
        throw ValidationError("ev", "both ends are branch jumps");
    const EvOut e = ev_core(strip.component, strip.theta, arg2pi(strip.z1));
    if (e.modulus_err > 1e-6)
        throw NumericalError("ev", "limit point is not on the matching cycle");
    return {e.a, e.b, lagrangian::Pole::None};
}

lagrangian::ChartPoint ev_minus_infinity(const StripMap& strip) {
    if (strip.component.direction != JumpEnd::Plus)
        throw ValidationError("ev", "minus end is a branch jump");
    return ev_smooth_end(strip);
}

SolveResult solve_ev(const StripComponent& component, const lagrangian::ChartPoint& target,
                     double tol) {
    check_component(component);
    if (component.direction == JumpEnd::Both)
        throw ValidationError("solve", "component has no smooth end to evaluate");
    if (target.pole != lagrangian::Pole::None || std::abs(target.a) >= kPi)
        throw ValidationError("solve", "target must lie strictly inside the chart");

    auto resid = [&](double th, double sig, double out[2]) {
        const EvOut e = ev_core(component, th, sig);
        out[0] = e.a - target.a;
        out[1] = wrap_pm_pi(e.b - target.b);
    };
    auto dist = [&](double th, double sig) {
        double f[2];
        resid(th, sig, f);
        return std::hypot(f[0], f[1]);
    };

    constexpr int G = 64;
    double d[G][G];
    for (int i = 0; i < G; ++i)
        for (int j = 0; j < G; ++j)
            d[i][j] = dist(i * kTwoPi / G, (j + 0.5) * kTwoPi / G);

    std::vector<std::pair<double, double>> sols;
    for (int i = 0; i < G; ++i) {
        for (int j = 0; j < G; ++j) {
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    if (d[(i + di + G) % G][(j + dj + G) % G] < d[i][j]) {
                        is_min = false;
                        break;
                    }
                }
            if (!is_min) continue;

            double th = i * kTwoPi / G, sig = (j + 0.5) * kTwoPi / G;
            bool conv = false;
            for (int iter = 0; iter < 50; ++iter) {
                double f0[2];
                resid(th, sig, f0);
                if (std::max(std::abs(f0[0]), std::abs(f0[1])) < tol) {
                    conv = true;
                    break;
                }
                const double eps = 1e-7;
                double fth_p[2], fth_m[2], fsg_p[2], fsg_m[2];
                resid(th + eps, sig, fth_p);
                resid(th - eps, sig, fth_m);
                resid(th, std::min(sig + eps, kTwoPi - 1e-9), fsg_p);
                resid(th, std::max(sig - eps, 1e-9), fsg_m);
                const double j11 = (fth_p[0] - fth_m[0]) / (2 * eps);
                const double j21 = (fth_p[1] - fth_m[1]) / (2 * eps);
                const double j12 = (fsg_p[0] - fsg_m[0]) / (2 * eps);
                const double j22 = (fsg_p[1] - fsg_m[1]) / (2 * eps);
                const double det = j11 * j22 - j12 * j21;
                if (std::abs(det) < 1e-18) break;
                double dth = -(j22 * f0[0] - j12 * f0[1]) / det;
                double dsg = -(-j21 * f0[0] + j11 * f0[1]) / det;
                const double mag = std::max(std::abs(dth), std::abs(dsg));
                if (mag > 0.5) {
                    dth *= 0.5 / mag;
                    dsg *= 0.5 / mag;
                }
                th += dth;
                sig += dsg;
                th -= kTwoPi * std::floor(th / kTwoPi);
                sig -= kTwoPi * std::floor(sig / kTwoPi);
                sig = std::min(std::max(sig, 1e-8), kTwoPi - 1e-8);
            }
            if (!conv) continue;
            bool dup = false;
            for (const auto& s : sols) {
                const double dt = std::abs(wrap_pm_pi(s.first - th));
                const double ds = std::abs(wrap_pm_pi(s.second - sig));
                if (dt < 1e-6 && ds < 1e-6) {
                    dup = true;
                    break;
                }
            }
            if (!dup) sols.emplace_back(th, sig);
        }
    }
    if (sols.empty())
        throw NumericalError("solve", "no convergence to the evaluation target");
    if (sols.size() > 1)
        throw NumericalError("solve", "multiple evaluation solutions in one component");
    return {sols[0].first, std::polar(1.0, sols[0].second)};
}

int IndexTable::of(const lagrangian::BranchPair& pair) const {
    using lagrangian::Pole;
    if (pair.first == Pole::P && pair.second == Pole::Q) return pq;
    if (pair.first == Pole::Q && pair.second == Pole::P) return qp;
    throw ValidationError("index", "invalid branch pair");
}

BranchData branch_data_for(const StripComponent& component) {
    using lagrangian::Pole;
    BranchData data;
    data.disc = false;
    if (component.direction != JumpEnd::Minus)
        data.plus_end = lagrangian::BranchPair{Pole::P, Pole::Q};
    if (component.direction != JumpEnd::Plus)
        data.minus_end = lagrangian::BranchPair{Pole::Q, Pole::P};
    return data;
}

int maslov_combinatorial(const BranchData& data, const IndexTable& table) {
    if (static_cast<int>(data.bottom.size()) > data.k0 ||
        static_cast<int>(data.top.size()) > data.k1)
        throw ValidationError("index", "marked points fewer than boundary jumps");
    if (data.disc && (data.minus_end || data.plus_end || !data.top.empty() || data.k1 != 0))
        throw ValidationError("index", "disc data cannot carry strip ends");

    int sum = 0, incoming_bdy = 0;
    for (const auto& list : {data.bottom, data.top}) {
        for (const SignedJump& j : list) {
            sum += j.incoming ? table.of(j.pair) : -table.of(j.pair);
            if (j.incoming) ++incoming_bdy;
        }
    }
    if (data.disc) return sum + 2 * (1 - incoming_bdy);
    const int delta = data.minus_end ? 1 : 0;
    if (data.minus_end) sum += table.of(*data.minus_end);
    if (data.plus_end) sum -= table.of(*data.plus_end);
    return sum + 2 * (1 - delta - incoming_bdy);
}

int fredholm_index(const BranchData& data, const IndexTable& table) {
    const int mu = maslov_combinatorial(data, table);
    if (data.disc) return mu + data.k0 - 1;
    int outgoing_bdy = 0;
    for (const auto& list : {data.bottom, data.top})
        for (const SignedJump& j : list)
            if (!j.incoming) ++outgoing_bdy;
    return mu - 2 * outgoing_bdy + data.k0 + data.k1;
}

int maslov_winding(const StripMap& strip, int samples) {
    using lagrangian::Pole;
    const StripComponent& comp = strip.component;
    if (!comp.standard() && !comp.loop->is_circle)
        throw ValidationError("maslov", "winding requires a circular path");
    const Complex c = comp.standard() ? Complex(0.0, 0.0) : comp.loop->center;

    // Winding of the squared phase -gamma'^2/|gamma'^2| of the boundary
    // tangent line, where gamma' is proportional to i(z - c) on a circle.
    double prev = std::arg(strip.z_of_h(strip.h(Complex(1.0, 0.0))) - c);
    double total = 0.0;
    for (int i = 1; i <= samples; ++i) {
        const Complex w = std::polar(1.0, kTwoPi * i / samples);
        const double raw = std::arg(strip.z_of_h(strip.h(w)) - c);
        const double next = unwrap_near(prev, raw);
        if (std::abs(next - prev) > kPi / 2)
            throw NumericalError("maslov", "boundary phase step too large");
        total += next - prev;
        prev = next;
    }
    total *= 2.0;

    double corr = 0.0;
    corr += end_correction(comp, comp.direction != JumpEnd::Minus,
                           lagrangian::BranchPair{Pole::P, Pole::Q});
    corr += end_correction(comp, comp.direction != JumpEnd::Plus,
                           lagrangian::BranchPair{Pole::Q, Pole::P});

    const double mu_raw = (total + corr) / kTwoPi;
    const double rounded = std::round(mu_raw);
    if (std::abs(mu_raw - rounded) > 0.1)
        throw NumericalError("maslov", "winding accumulated a non-integral value");
    return static_cast<int>(rounded);
}

} // namespace mcf::moduli

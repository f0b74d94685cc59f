#include "mcf/lagrangian.hpp"

#include <cmath>

#include "mcf/errors.hpp"
#include "mcf/kernels.hpp"

namespace mcf::lagrangian {

namespace {

constexpr double kInner = 0.3;
constexpr double kOuter = 2.8;

struct Quintic {
    double x0, h;
    double c[6];

    double value(double x) const {
        const double t = (x - x0) / h;
        return ((((c[5] * t + c[4]) * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0];
    }
    double deriv(double x) const {
        const double t = (x - x0) / h;
        return ((((5 * c[5] * t + 4 * c[4]) * t + 3 * c[3]) * t + 2 * c[2]) * t + c[1]) / h;
    }
};

Quintic make_join() {
    const double h = kOuter - kInner;
    const double p0 = kInner, m0 = 1.0, s0 = 0.0;
    const double p1 = kPi - std::cos(1.4) * std::cos(1.4);
    const double m1 = std::sin(kOuter) / 2.0;
    const double s1 = std::cos(kOuter) / 2.0;
    // Quintic Hermite in tau = (x - x0)/h matching value, first and second
    // derivative at both ends.
    const double a0 = p0, a1 = h * m0, a2 = 0.5 * h * h * s0;
    const double b0 = p1, b1 = h * m1, b2 = 0.5 * h * h * s1;
    Quintic q{kInner, h, {}};
    q.c[0] = a0;
    q.c[1] = a1;
    q.c[2] = a2;
    q.c[3] = -10 * a0 - 6 * a1 - 3 * a2 + 10 * b0 - 4 * b1 + b2;
    q.c[4] = 15 * a0 + 8 * a1 + 3 * a2 - 15 * b0 + 7 * b1 - 2 * b2;
    q.c[5] = -6 * a0 - 3 * a1 - a2 + 6 * b0 - 3 * b1 + b2;
    return q;
}

const Quintic& join() {
    static const Quintic q = make_join();
    return q;
}

// arg(r e^{if} + m), continuous on f in (-pi, pi).
double phi_factor(double f, int m, int r) {
    return std::atan2(r * std::sin(f), r * std::cos(f) + static_cast<double>(m));
}

void check_r(const SurfaceParams& params, int r) {
    if (r < 1 || r > params.N) throw ValidationError("validate", "r out of range");
}

} // namespace

double ProfileFunction::value(double a) const {
    const double s = a < 0 ? -1.0 : 1.0;
    const double x = std::abs(a);
    if (x <= kInner) return a;
    if (x >= kOuter) {
        const double c = std::cos(x / 2);
        return s * (kPi - c * c);
    }
    return s * join().value(x);
}

double ProfileFunction::deriv(double a) const {
    const double x = std::abs(a);
    if (x <= kInner) return 1.0;
    if (x >= kOuter) return std::sin(x) / 2.0;  // d/dx (pi - cos^2(x/2)), even in a
    return join().deriv(x);
}

double ProfileFunction::inverse(double f) const {
    const double s = f < 0 ? -1.0 : 1.0;
    const double y = std::abs(f);
    if (y <= kInner) return f;
    double lo = kInner, hi = kPi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (value(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return s * 0.5 * (lo + hi);
}

const ProfileFunction& profile() {
    static const ProfileFunction f;
    return f;
}

SurfacePoint immersion_eval(const SurfaceParams& params, int r, const ChartPoint& pt) {
    check_r(params, r);
    if (pt.pole != Pole::None) return {0.0, 0.0, Complex(static_cast<double>(r), 0.0)};
    const double f = profile().value(pt.a);
    const Complex z = -static_cast<double>(r) * std::polar(1.0, f);
    double logmag = 0.0, angle = 0.0;
    for (int m = 1; m <= params.N; ++m) {
        // z - m = -(r e^{if} + m), with continuous argument pi + phi_m(f).
        const double re = r * std::cos(f) + m, im = r * std::sin(f);
        logmag += 0.5 * std::log(std::hypot(re, im));
        angle += 0.5 * (kPi + phi_factor(f, m, r));
    }
    const Complex xi = std::exp(logmag) * std::polar(1.0, angle);
    const Complex ph = std::polar(1.0, pt.b);
    return {ph * xi, xi / ph, z};
}

SurfacePoint immersion_eval_rect(const SurfaceParams& params, int r, const ChartPoint& pt) {
    check_r(params, r);
    if (pt.pole != Pole::None) return {0.0, 0.0, Complex(static_cast<double>(r), 0.0)};
    if (std::abs(pt.a) < kOuter)
        throw ValidationError("validate", "rectangular evaluator defined near the poles only");
    const double rho = std::cos(pt.a / 2) * std::cos(pt.a / 2);
    const double f = pt.a > 0 ? kPi - rho : -(kPi - rho);
    const Complex z = -static_cast<double>(r) * std::polar(1.0, f);
    // x = zeta * E(rho), y = conj(zeta) * E(rho) with zeta = cos(a/2) e^{ib}
    // and E smooth through rho = 0 (the self-intersection point).
    const double sinc2 = rho < 1e-8 ? 1.0 - rho * rho / 24.0 : 2.0 * std::sin(rho / 2) / rho;
    double logmag = 0.5 * std::log(r * sinc2);
    double angle = 0.5 * (kPi + f / 2);  // continuous arg of z - r is pi + f/2
    for (int m = 1; m <= params.N; ++m) {
        if (m == r) continue;
        const double re = r * std::cos(f) + m, im = r * std::sin(f);
        logmag += 0.5 * std::log(std::hypot(re, im));
        angle += 0.5 * (kPi + phi_factor(f, m, r));
    }
    const Complex E = std::exp(logmag) * std::polar(1.0, angle);
    const Complex zeta = std::cos(pt.a / 2) * std::polar(1.0, pt.b);
    return {zeta * E, std::conj(zeta) * E, z};
}

std::pair<TangentVector, TangentVector> immersion_tangents(const SurfaceParams& params,
                                                           int r, const ChartPoint& pt) {
    check_r(params, r);
    if (pt.pole != Pole::None)
        throw ValidationError("validate", "chart tangents undefined at the poles");
    const SurfacePoint p = immersion_eval(params, r, pt);
    const double f = profile().value(pt.a);
    const double fp = profile().deriv(pt.a);
    const Complex z = p.z;
    const Complex zp = -static_cast<double>(r) * Complex(0.0, fp) * std::polar(1.0, f);
    Complex logderiv = 0.0;
    for (int m = 1; m <= params.N; ++m) logderiv += zp / (z - static_cast<double>(m));
    const Complex ph = std::polar(1.0, pt.b);
    const Complex xi = p.x / ph;
    const Complex xip = xi * 0.5 * logderiv;
    TangentVector da{ph * xip, xip / ph, zp};
    TangentVector db{Complex(0, 1) * p.x, Complex(0, -1) * p.y, 0.0};
    return {da, db};
}

GradingValue grading_eval(const ChartPoint& pt) {
    if (pt.pole == Pole::P) return {1.0};
    if (pt.pole == Pole::Q) return {-1.0};
    return {profile().value(pt.a) / kPi};
}

NodePlanes node_planes(const SurfaceParams& params, int r) {
    check_r(params, r);
    double mag = std::sqrt(static_cast<double>(r));
    for (int m = 1; m <= params.N; ++m) {
        if (m == r) continue;
        mag *= std::sqrt(std::abs(static_cast<double>(r - m)));
    }
    const double argp = 3 * kPi / 4 + (params.N + r - 2) * kPi / 2;
    const double argq = kPi / 4 + (params.N - r) * kPi / 2;
    NodePlanes out;
    out.cp = mag * std::polar(1.0, argp);
    out.cq = mag * std::polar(1.0, argq);
    out.node = {0.0, 0.0, Complex(static_cast<double>(r), 0.0)};
    return out;
}

NodePlanes node_planes_loop(const SurfaceParams& params, const lefschetz::MatchingLoop& loop) {
    const int v = loop.basepoint;
    if (v < 1 || v > params.N) throw ValidationError("validate", "basepoint out of range");
    Complex D = 1.0;
    for (int k = 1; k <= params.N; ++k) {
        if (k == v) continue;
        D *= sqrt_cut_positive(Complex(static_cast<double>(v - k), 0.0));
    }
    NodePlanes out;
    out.cp = sqrt_cut_positive(-loop.deriv(1.0)) * D;
    out.cq = sqrt_cut_positive(loop.deriv(0.0)) * D;
    out.node = {0.0, 0.0, Complex(static_cast<double>(v), 0.0)};
    return out;
}

UnitaryRep plane_rep(const PlaneFrame& frame) {
    // Real Gram-Schmidt in the Hermitian metric of C^2.
    auto re_dot = [](Complex u1, Complex u2, Complex v1, Complex v2) {
        return std::real(std::conj(u1) * v1 + std::conj(u2) * v2);
    };
    const double n1 = std::sqrt(re_dot(frame.a1, frame.a2, frame.a1, frame.a2));
    if (n1 < 1e-14) throw NumericalError("branch_index", "degenerate plane frame");
    const Complex u1 = frame.a1 / n1, u2 = frame.a2 / n1;
    const double proj = re_dot(u1, u2, frame.b1, frame.b2);
    Complex w1 = frame.b1 - proj * u1, w2 = frame.b2 - proj * u2;
    const double n2 = std::sqrt(re_dot(w1, w2, w1, w2));
    if (n2 < 1e-14) throw NumericalError("branch_index", "degenerate plane frame");
    w1 /= n2;
    w2 /= n2;
    // For a Lagrangian plane the frame matrix U = [u w] is unitary.
    const Complex off = std::conj(u1) * w1 + std::conj(u2) * w2;
    if (std::abs(off) > 1e-8)
        throw NumericalError("branch_index", "plane frame is not Lagrangian");
    return {u1 * u1 + w1 * w1, u1 * u2 + w1 * w2, u2 * u2 + w2 * w2};
}

std::pair<double, double> relative_angles(const UnitaryRep& from, const UnitaryRep& to) {
    // V = W_to * conj(W_from); eigenvalue arguments in (0, 2 pi).
    const Complex f11 = std::conj(from.w11), f12 = std::conj(from.w12),
                  f22 = std::conj(from.w22);
    const Complex v11 = to.w11 * f11 + to.w12 * f12;
    const Complex v12 = to.w11 * f12 + to.w12 * f22;
    const Complex v21 = to.w12 * f11 + to.w22 * f12;
    const Complex v22 = to.w12 * f12 + to.w22 * f22;
    const Complex tr = v11 + v22;
    const Complex det = v11 * v22 - v12 * v21;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    const Complex l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
    const double p1 = arg2pi(l1), p2 = arg2pi(l2);
    for (double p : {p1, p2}) {
        const double frac = p / kTwoPi;
        if (frac < 1e-6 || frac > 1.0 - 1e-6)
            throw ValidationError("branch_index", "non-transverse planes");
    }
    return {p1, p2};
}

namespace {

PlaneFrame diagonal_plane_frame(Complex c) {
    // The plane {(c w, c conj(w))}, spanned over R by w = 1 and w = i.
    return {c, c, Complex(0, 1) * c, Complex(0, -1) * c};
}

BranchIndexResult index_from_planes(Complex c_first, Complex c_second, double theta_first,
                                    double theta_second) {
    const UnitaryRep wf = plane_rep(diagonal_plane_frame(c_first));
    const UnitaryRep ws = plane_rep(diagonal_plane_frame(c_second));
    const auto [psi1, psi2] = relative_angles(wf, ws);
    BranchIndexResult out;
    out.alpha = psi1 / (2.0 * kTwoPi);
    out.beta = psi2 / (2.0 * kTwoPi);
    out.raw = 2.0 + theta_second - theta_first - 2.0 * (out.alpha + out.beta);
    out.index = static_cast<int>(std::lround(out.raw));
    return out;
}

void check_pair(const BranchPair& pair) {
    if (pair.first == Pole::None || pair.second == Pole::None || pair.first == pair.second)
        throw ValidationError("branch_index", "branch pair must be two distinct poles");
}

// Total turning angle of the loop velocity over [0, 1].
double loop_turning(const lefschetz::MatchingLoop& loop) {
    int samples = 512;
    for (;;) {
        double total = 0.0;
        bool ok = true;
        double prev = std::arg(loop.deriv(0.0));
        for (int i = 1; i <= samples; ++i) {
            const double raw = std::arg(loop.deriv(static_cast<double>(i) / samples));
            const double next = unwrap_near(prev, raw);
            if (std::abs(next - prev) > kPi / 2) {
                ok = false;
                break;
            }
            total += next - prev;
            prev = next;
        }
        if (ok) return total;
        samples *= 2;
        if (samples > 1 << 22)
            throw NumericalError("branch_index", "velocity phase tracking did not converge");
    }
}

} // namespace

BranchIndexResult branch_index(const SurfaceParams& params, int r, const BranchPair& pair) {
    check_pair(pair);
    const NodePlanes planes = node_planes(params, r);
    const auto c_of = [&](Pole s) { return s == Pole::P ? planes.cp : planes.cq; };
    const auto theta_of = [](Pole s) { return s == Pole::P ? 1.0 : -1.0; };
    return index_from_planes(c_of(pair.first), c_of(pair.second), theta_of(pair.first),
                             theta_of(pair.second));
}

BranchIndexResult branch_index_loop(const SurfaceParams& params,
                                    const lefschetz::MatchingLoop& loop,
                                    const BranchPair& pair) {
    check_pair(pair);
    const NodePlanes planes = node_planes_loop(params, loop);
    // Squared-phase transport along the cycle: theta(P) - theta(Q) equals the
    // total turning of gamma' divided by pi (Det^2 = -gamma'^2/|gamma'^2|).
    const double theta_p = loop_turning(loop) / kPi;
    const double theta_q = 0.0;
    const auto c_of = [&](Pole s) { return s == Pole::P ? planes.cp : planes.cq; };
    const auto theta_of = [&](Pole s) { return s == Pole::P ? theta_p : theta_q; };
    return index_from_planes(c_of(pair.first), c_of(pair.second), theta_of(pair.first),
                             theta_of(pair.second));
}

double exactness_primitive_diff(const SurfaceParams& params, int r) {
    check_r(params, r);
    // The z-contribution of the primitive integrates along the meridian to
    // -pi r^2 exactly; only the fiber part -Im(conj(xi) xi') needs quadrature.
    auto integrand = [&](double a) {
        if (std::abs(a) >= kPi) return 0.0;  // vanishes in the limit at both poles
        const ChartPoint pt{a, 0.0, Pole::None};
        const SurfacePoint p = immersion_eval(params, r, pt);
        const auto [da, db] = immersion_tangents(params, r, pt);
        (void)db;
        return -std::imag(std::conj(p.x) * da.vx);
    };
    // Trapezoid with point reuse, Simpson extrapolation at each doubling.
    int n = 64;
    double trap = 0.0;
    for (int i = 1; i < n; ++i) trap += integrand(-kPi + i * kTwoPi / n);
    trap *= kTwoPi / n;
    double simpson_prev = 0.0;
    bool have_prev = false;
    for (int iter = 0; iter < 16; ++iter) {
        double mids = 0.0;
        for (int i = 0; i < n; ++i) mids += integrand(-kPi + (i + 0.5) * kTwoPi / n);
        const double trap2 = 0.5 * trap + mids * kPi / n;
        const double simpson = (4.0 * trap2 - trap) / 3.0;
        n *= 2;
        trap = trap2;
        if (have_prev && std::abs(simpson - simpson_prev) < 1e-9 * (1.0 + std::abs(simpson)))
            return -kPi * r * r + simpson;
        simpson_prev = simpson;
        have_prev = true;
    }
    throw NumericalError("quadrature", "meridian quadrature did not converge");
}

double special_lagrangian_residual(const SurfaceParams& params, int r, int grid) {
    check_r(params, r);
    return kern::grid_max(grid, grid, [&](int i, int j) {
        const double a = -kPi + (i + 0.5) * kTwoPi / grid;
        const double b = j * kTwoPi / grid;
        const ChartPoint pt{a, b, Pole::None};
        const SurfacePoint p = immersion_eval(params, r, pt);
        const auto [da, db] = immersion_tangents(params, r, pt);
        const Complex om = variety::volume_form(params, p, da, db);
        return std::abs(std::imag(om / p.z));
    });
}

} // namespace mcf::lagrangian

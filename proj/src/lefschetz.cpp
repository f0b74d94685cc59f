#include "mcf/lefschetz.hpp"

#include <algorithm>
#include <cmath>

#include "mcf/errors.hpp"

namespace mcf::lefschetz {

namespace {

// Cubic Hermite basis on [0,1].
Complex hermite(Complex p0, Complex m0, Complex p1, Complex m1, double u) {
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * m0 +
           (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * m1;
}

Complex hermite_deriv(Complex p0, Complex m0, Complex p1, Complex m1, double u) {
    const double u2 = u * u;
    return (6 * u2 - 6 * u) * p0 + (3 * u2 - 4 * u + 1) * m0 + (-6 * u2 + 6 * u) * p1 +
           (3 * u2 - 2 * u) * m1;
}

struct SegmentRef {
    Complex p0, m0, p1, m1;
};

SegmentRef segment_at(const MatchingLoop& loop, double t, double* u_out, double* scale_out) {
    const Complex base{static_cast<double>(loop.basepoint), 0.0};
    const size_t k = loop.nodes.size();
    const size_t nseg = k + 1;
    double s = t * nseg;
    size_t i = std::min(static_cast<size_t>(s), nseg - 1);
    *u_out = s - i;
    *scale_out = static_cast<double>(nseg);
    const Complex closure = 0.5 * (loop.nodes.front() - loop.nodes.back());
    auto pt = [&](size_t idx) { return idx == 0 || idx == k + 1 ? base : loop.nodes[idx - 1]; };
    auto tan = [&](size_t idx) {
        return idx == 0 || idx == k + 1 ? closure : loop.tangents[idx - 1];
    };
    return {pt(i), tan(i), pt(i + 1), tan(i + 1)};
}

} // namespace

Complex MatchingLoop::eval(double t) const {
    const Complex base{static_cast<double>(basepoint), 0.0};
    if (is_circle) return center + (base - center) * std::polar(1.0, kTwoPi * t);
    double u, scale;
    const SegmentRef s = segment_at(*this, t, &u, &scale);
    return hermite(s.p0, s.m0, s.p1, s.m1, u);
}

Complex MatchingLoop::deriv(double t) const {
    const Complex base{static_cast<double>(basepoint), 0.0};
    if (is_circle)
        return Complex(0.0, kTwoPi) * (base - center) * std::polar(1.0, kTwoPi * t);
    double u, scale;
    const SegmentRef s = segment_at(*this, t, &u, &scale);
    return scale * hermite_deriv(s.p0, s.m0, s.p1, s.m1, u);
}

MatchingLoop make_circle_loop(int basepoint, Complex center) {
    MatchingLoop loop;
    loop.basepoint = basepoint;
    loop.is_circle = true;
    loop.center = center;
    return loop;
}

MatchingLoop make_hermite_loop(int basepoint, std::vector<Complex> nodes,
                               std::vector<Complex> tangents) {
    if (nodes.empty() || nodes.size() != tangents.size())
        throw ValidationError("validate", "hermite loop needs matching nonempty nodes and tangents");
    MatchingLoop loop;
    loop.basepoint = basepoint;
    loop.nodes = std::move(nodes);
    loop.tangents = std::move(tangents);
    return loop;
}

std::vector<int> critical_values(const SurfaceParams& params) {
    std::vector<int> vals(static_cast<size_t>(params.N));
    for (int j = 1; j <= params.N; ++j) vals[j - 1] = j;
    return vals;
}

void validate_loop(const SurfaceParams& params, const MatchingLoop& loop) {
    if (loop.basepoint < 1 || loop.basepoint > params.N)
        throw ValidationError("validate", "basepoint is not a critical value");
    if (loop.is_circle) {
        const double radius =
            std::abs(Complex(static_cast<double>(loop.basepoint), 0.0) - loop.center);
        if (radius < 1e-6) throw ValidationError("validate", "degenerate circle radius");
    }

    constexpr int kSamples = 1024;
    std::vector<Complex> pts(kSamples);
    for (int i = 0; i < kSamples; ++i) pts[i] = loop.eval((i + 0.5) / kSamples);

    // The loop must keep clear of non-basepoint critical values everywhere;
    // near the basepoint only the middle of the parameter range is
    // constrained. Distances are measured to the sampled polyline segments so
    // a crossing between samples cannot slip through.
    auto segment_dist = [](Complex p, Complex a, Complex b) {
        const Complex ab = b - a;
        const double len2 = std::norm(ab);
        double s = len2 > 0.0 ? std::real(std::conj(ab) * (p - a)) / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        return std::abs(p - (a + s * ab));
    };
    for (int i = 0; i < kSamples; ++i) {
        const Complex a = pts[i], b = pts[(i + 1) % kSamples];
        const double t = (i + 1.0) / kSamples;  // parameter at the shared endpoint
        for (int j = 1; j <= params.N; ++j) {
            const double dist = segment_dist(Complex(static_cast<double>(j), 0.0), a, b);
            if (j == loop.basepoint) {
                if (t > 0.1 && t < 0.9 && dist < 1e-3)
                    throw ValidationError("validate", "loop through critical value");
            } else if (dist < 1e-3) {
                throw ValidationError("validate", "loop through critical value");
            }
        }
    }

    // Counterclockwise orientation via the signed area.
    double area = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const Complex a = pts[i], b = pts[(i + 1) % kSamples];
        area += a.real() * b.imag() - b.real() * a.imag();
    }
    if (area <= 0.0) throw ValidationError("validate", "loop is not counterclockwise");

    // Embedded away from the basepoint: samples at cyclic parameter distance
    // greater than 0.05 must not collide.
    for (int i = 0; i < kSamples; ++i) {
        for (int j = i + 1; j < kSamples; ++j) {
            const int gap = std::min(j - i, kSamples - (j - i));
            if (gap <= kSamples / 20) continue;
            if (std::abs(pts[i] - pts[j]) < 1e-4)
                throw ValidationError("validate", "loop is not embedded");
        }
    }

    // Transverse return: -gamma'(0) and gamma'(1) must not be positive
    // parallel (angle above 1e-2 radians).
    const Complex d0 = loop.deriv(0.0), d1 = loop.deriv(1.0);
    if (std::abs(d0) < 1e-12 || std::abs(d1) < 1e-12)
        throw ValidationError("validate", "vanishing endpoint velocity");
    const double angle = std::abs(wrap_pm_pi(std::arg(d1) - std::arg(-d0)));
    if (angle < 1e-2)
        throw ValidationError("validate", "return tangent parallel to departure tangent");
}

namespace {

// Turning angle of gamma - j over [t0, t1], bisecting until each step is
// below pi/2.
double winding_angle(const MatchingLoop& loop, Complex j, double t0, double t1,
                     Complex g0, Complex g1, int depth) {
    const double step = wrap_pm_pi(std::arg(g1 - j) - std::arg(g0 - j));
    const double d0 = std::abs(g0 - j), d1 = std::abs(g1 - j);
    if (std::abs(step) < kPi / 2 && depth >= 6 && d0 > 1e-3 && d1 > 1e-3) return step;
    if (depth > 40) throw NumericalError("winding", "winding refinement did not converge");
    const double tm = 0.5 * (t0 + t1);
    const Complex gm = loop.eval(tm);
    if (std::abs(gm - j) < 1e-3)
        throw ValidationError("winding", "loop through critical value");
    return winding_angle(loop, j, t0, tm, g0, gm, depth + 1) +
           winding_angle(loop, j, tm, t1, gm, g1, depth + 1);
}

} // namespace

EnclosureReport winding_count(const SurfaceParams& params, const MatchingLoop& loop) {
    validate_loop(params, loop);
    EnclosureReport report;
    for (int j = 1; j <= params.N; ++j) {
        if (j == loop.basepoint) continue;
        const Complex cj{static_cast<double>(j), 0.0};
        const double total =
            winding_angle(loop, cj, 0.0, 1.0, loop.eval(0.0), loop.eval(1.0), 0);
        const double w = total / kTwoPi;
        const int wi = static_cast<int>(std::lround(w));
        if (std::abs(w - wi) > 0.05)
            throw NumericalError("winding", "non-integral winding number");
        if (wi % 2 != 0) report.enclosed.push_back(j);
    }
    std::sort(report.enclosed.begin(), report.enclosed.end());
    report.C = static_cast<int>(report.enclosed.size());
    return report;
}

ThimblePlane thimble_tangent_at_crit(const SurfaceParams& params, int j,
                                     Complex final_velocity) {
    if (j < 1 || j > params.N)
        throw ValidationError("thimble", "critical value out of range");
    if (std::abs(final_velocity) < 1e-14)
        throw ValidationError("thimble", "zero final velocity");
    Complex xi = sqrt_cut_positive(final_velocity);
    for (int k = 1; k <= params.N; ++k) {
        if (k == j) continue;
        xi *= sqrt_cut_positive(Complex(static_cast<double>(j - k), 0.0));
    }
    ThimblePlane plane;
    plane.xi = xi;
    plane.v1 = {xi, xi, 0.0};
    plane.v2 = {Complex(0, 1) * xi, Complex(0, -1) * xi, 0.0};
    return plane;
}

Complex cycle_fiber_root(const SurfaceParams& params, const MatchingLoop& loop, double t) {
    // Track each factor angle of prod sqrt(gamma(t) - m) continuously from the
    // principal anchor at t = 1/2.
    const int base_steps = 256;
    int steps = base_steps;
    for (;;) {
        const double t0 = 0.5;
        const double dt = (t - t0) / steps;
        std::vector<double> psi(static_cast<size_t>(params.N));
        Complex g = loop.eval(t0);
        for (int m = 1; m <= params.N; ++m) psi[m - 1] = arg2pi(g - static_cast<double>(m));
        bool ok = true;
        for (int i = 1; i <= steps && ok; ++i) {
            g = loop.eval(t0 + i * dt);
            for (int m = 1; m <= params.N; ++m) {
                const double raw = std::arg(g - static_cast<double>(m));
                const double next = unwrap_near(psi[m - 1], raw);
                if (std::abs(next - psi[m - 1]) > kPi / 2) {
                    ok = false;
                    break;
                }
                psi[m - 1] = next;
            }
        }
        if (ok) {
            double logmag = 0.0, angle = 0.0;
            for (int m = 1; m <= params.N; ++m) {
                logmag += 0.5 * std::log(std::abs(g - static_cast<double>(m)));
                angle += 0.5 * psi[m - 1];
            }
            return std::exp(logmag) * std::polar(1.0, angle);
        }
        steps *= 2;
        if (steps > 1 << 20)
            throw NumericalError("fiber_root", "branch tracking did not converge");
    }
}

SurfacePoint matching_cycle_sample(const SurfaceParams& params, const MatchingLoop& loop,
                                   double t, double theta) {
    const Complex w = cycle_fiber_root(params, loop, t);
    const Complex ph = std::polar(1.0, theta);
    return {ph * w, w / ph, loop.eval(t)};
}

} // namespace mcf::lefschetz

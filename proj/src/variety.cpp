#include "mcf/variety.hpp"

#include <cmath>

#include "mcf/errors.hpp"

namespace mcf::variety {

Complex base_poly(const SurfaceParams& params, Complex z) {
    Complex q = 1.0;
    for (int m = 1; m <= params.N; ++m) q *= z - static_cast<double>(m);
    return q;
}

Complex base_poly_deriv(const SurfaceParams& params, Complex z) {
    // sum_j prod_{k != j} (z - k), accumulated without cancellation-prone
    // expansion of coefficients.
    Complex total = 0.0;
    for (int j = 1; j <= params.N; ++j) {
        Complex term = 1.0;
        for (int k = 1; k <= params.N; ++k) {
            if (k == j) continue;
            term *= z - static_cast<double>(k);
        }
        total += term;
    }
    return total;
}

Complex poly_eval(const SurfaceParams& params, const SurfacePoint& p) {
    return p.x * p.y - base_poly(params, p.z);
}

Partials poly_partials(const SurfaceParams& params, const SurfacePoint& p) {
    return {p.y, p.x, -base_poly_deriv(params, p.z)};
}

Complex dpoly(const SurfaceParams& params, const SurfacePoint& p, const TangentVector& v) {
    const Partials d = poly_partials(params, p);
    return d.px * v.vx + d.py * v.vy + d.pz * v.vz;
}

Complex volume_form(const SurfaceParams& params, const SurfacePoint& p,
                    const TangentVector& v1, const TangentVector& v2) {
    const Partials d = poly_partials(params, p);
    const double ax = std::abs(d.px), ay = std::abs(d.py), az = std::abs(d.pz);
    constexpr double kDegenerate = 1e-12;
    if (ax < kDegenerate && ay < kDegenerate && az < kDegenerate)
        throw NumericalError("volume_form", "critical point of P");

    // V with dP(V) = 1, preferring the z-slot; Omega(v1,v2) = det[v1; v2; V].
    Complex Vx = 0.0, Vy = 0.0, Vz = 0.0;
    if (az >= 1e-9) {
        Vz = 1.0 / d.pz;
    } else if (ax >= ay) {
        Vx = 1.0 / d.px;
    } else {
        Vy = 1.0 / d.py;
    }
    return v1.vx * (v2.vy * Vz - v2.vz * Vy) - v1.vy * (v2.vx * Vz - v2.vz * Vx) +
           v1.vz * (v2.vx * Vy - v2.vy * Vx);
}

std::pair<double, double> hamiltonians(const SurfacePoint& p) {
    return {0.5 * std::norm(p.x) - 0.5 * std::norm(p.y), std::norm(p.z)};
}

double symplectic_form(const TangentVector& u, const TangentVector& v) {
    return std::imag(std::conj(u.vx) * v.vx) + std::imag(std::conj(u.vy) * v.vy) +
           std::imag(std::conj(u.vz) * v.vz);
}

double primitive_one_form(const SurfacePoint& p, const TangentVector& v) {
    // (i/4) sum (zbar dz - z dzbar) evaluated on v equals -(1/2) sum Im(zbar v).
    return -0.5 * (std::imag(std::conj(p.x) * v.vx) + std::imag(std::conj(p.y) * v.vy) +
                   std::imag(std::conj(p.z) * v.vz));
}

TangentVector hamiltonian_field_h1(const SurfacePoint& p) {
    // omega(X_H, .) = dH for H1 = |x|^2/2 - |y|^2/2.
    return {Complex(0.0, -1.0) * p.x, Complex(0.0, 1.0) * p.y, 0.0};
}

TangentVector horizontal_lift(const SurfaceParams& params, const SurfacePoint& p,
                              Complex lambda) {
    const double denom = std::norm(p.x) + std::norm(p.y);
    if (denom < 1e-14)
        throw NumericalError("horizontal_lift", "fiber-critical point (x = y = 0)");
    const Complex c = base_poly_deriv(params, p.z);
    return {c * lambda * std::conj(p.y) / denom, c * lambda * std::conj(p.x) / denom,
            lambda};
}

SurfacePoint horizontal_transport(const SurfaceParams& params, SurfacePoint start,
                                  const std::function<Complex(double)>& base_path,
                                  const std::function<Complex(double)>& base_velocity,
                                  int steps) {
    // RK4 on the lift equation p' = hlift(p, z'(t)); (x, y) are the unknowns,
    // z is slaved to the base path.
    auto deriv = [&](double t, const SurfacePoint& p) {
        SurfacePoint q{p.x, p.y, base_path(t)};
        return horizontal_lift(params, q, base_velocity(t));
    };
    const double h = 1.0 / steps;
    SurfacePoint p = start;
    for (int i = 0; i < steps; ++i) {
        const double t = i * h;
        const TangentVector k1 = deriv(t, p);
        const SurfacePoint p2{p.x + 0.5 * h * k1.vx, p.y + 0.5 * h * k1.vy, 0.0};
        const TangentVector k2 = deriv(t + 0.5 * h, p2);
        const SurfacePoint p3{p.x + 0.5 * h * k2.vx, p.y + 0.5 * h * k2.vy, 0.0};
        const TangentVector k3 = deriv(t + 0.5 * h, p3);
        const SurfacePoint p4{p.x + h * k3.vx, p.y + h * k3.vy, 0.0};
        const TangentVector k4 = deriv(t + h, p4);
        p.x += h / 6.0 * (k1.vx + 2.0 * k2.vx + 2.0 * k3.vx + k4.vx);
        p.y += h / 6.0 * (k1.vy + 2.0 * k2.vy + 2.0 * k3.vy + k4.vy);
    }
    p.z = base_path(1.0);
    return p;
}

} // namespace mcf::variety

#pragma once

#include <functional>
#include <utility>

#include "mcf/phase.hpp"

namespace mcf::variety {

// The ambient exact Kaehler surface M = {xy = (z-1)(z-2)...(z-N)} in C^3,
// written as the zero set of P(x,y,z) = xy - Q(z).

struct SurfaceParams {
    int N = 1;
};

struct SurfacePoint {
    Complex x, y, z;
};

struct TangentVector {
    Complex vx, vy, vz;
};

inline constexpr double kTolVariety = 1e-9;
inline constexpr double kTolTangent = 1e-8;

// Q(z) = (z-1)...(z-N) and its derivative, stable product accumulation.
Complex base_poly(const SurfaceParams& params, Complex z);
Complex base_poly_deriv(const SurfaceParams& params, Complex z);

Complex poly_eval(const SurfaceParams& params, const SurfacePoint& p);

struct Partials {
    Complex px, py, pz;
};
Partials poly_partials(const SurfaceParams& params, const SurfacePoint& p);

Complex dpoly(const SurfaceParams& params, const SurfacePoint& p, const TangentVector& v);

// Holomorphic volume form via the residue recipe: Omega(v1,v2) = det[v1; v2; V]
// for any V with dP(V) = 1. Prefers V along the z-slot, falls back to the
// coordinate with the largest |dP| component. Throws on critical points of P.
Complex volume_form(const SurfaceParams& params, const SurfacePoint& p,
                    const TangentVector& v1, const TangentVector& v2);

// (H1, H2) = (|x|^2/2 - |y|^2/2, |z|^2).
std::pair<double, double> hamiltonians(const SurfacePoint& p);

// Flat Kaehler form of C^3 restricted to tangent vectors.
double symplectic_form(const TangentVector& u, const TangentVector& v);

// Primitive of the symplectic structure used for the exactness bookkeeping:
// lambda = (i/4) sum_k (zbar_k dz_k - z_k dzbar_k), i.e. (y dx - x dy)/2
// summed over the three coordinates. The sign convention is recorded in the
// CLI report.
double primitive_one_form(const SurfacePoint& p, const TangentVector& v);

// Hamiltonian field of H1 with the convention omega(X_H, .) = dH.
TangentVector hamiltonian_field_h1(const SurfacePoint& p);

// Horizontal lift of the base vector lambda at p (fiberwise symplectic
// complement of the conic fiber direction). Throws at x = y = 0.
TangentVector horizontal_lift(const SurfaceParams& params, const SurfacePoint& p,
                              Complex lambda);

// Fixed-step RK4 horizontal transport over a base path z(t), t in [0,1];
// verification helper only (checks H1 conservation and fiber closure).
SurfacePoint horizontal_transport(const SurfaceParams& params, SurfacePoint start,
                                  const std::function<Complex(double)>& base_path,
                                  const std::function<Complex(double)>& base_velocity,
                                  int steps);

} // namespace mcf::variety

#pragma once

#include <utility>

#include "mcf/lefschetz.hpp"
#include "mcf/variety.hpp"

namespace mcf::lagrangian {

using variety::SurfaceParams;
using variety::SurfacePoint;
using variety::TangentVector;

// Chart of the immersed sphere: (a, e^{ib}) with a in (-pi, pi); the poles
// a = +/-pi are the two preimages of the self-intersection point and are
// represented symbolically.
enum class Pole { None, P, Q };

struct ChartPoint {
    double a = 0.0;
    double b = 0.0;
    Pole pole = Pole::None;

    static ChartPoint p_pole() { return {0.0, 0.0, Pole::P}; }
    static ChartPoint q_pole() { return {0.0, 0.0, Pole::Q}; }
};

// Ordered pair of sphere points over the self-intersection.
struct BranchPair {
    Pole first = Pole::P;
    Pole second = Pole::Q;
};

struct GradingValue {
    double theta = 0.0;
};

// Height profile: f(a) = a on |a| <= 0.3, f(a) = sign(a)(pi - cos^2(a/2)) on
// |a| >= 2.8, joined by a strictly monotone quintic Hermite interpolant.
struct ProfileFunction {
    double value(double a) const;
    double deriv(double a) const;
    double inverse(double f) const;  // monotone inverse on (-pi, pi)
};

const ProfileFunction& profile();

SurfacePoint immersion_eval(const SurfaceParams& params, int r, const ChartPoint& pt);

// Rectangular-coordinate evaluator through the smooth extension at the poles;
// exact on |a| >= 2.8 where the profile equals its pole-side closed form.
SurfacePoint immersion_eval_rect(const SurfaceParams& params, int r, const ChartPoint& pt);

// Chart tangent vectors d/da and d/db of the immersion.
std::pair<TangentVector, TangentVector> immersion_tangents(const SurfaceParams& params,
                                                           int r, const ChartPoint& pt);

GradingValue grading_eval(const ChartPoint& pt);

// Tangent planes of the two branches at the self-intersection point (0,0,r),
// each of the form {(c w, c conj(w), 0) : w in C}.
struct NodePlanes {
    Complex cp, cq;
    SurfacePoint node;
};
NodePlanes node_planes(const SurfaceParams& params, int r);

// Same planes for a general matching loop, from the corner velocities of the
// loop at its basepoint.
NodePlanes node_planes_loop(const SurfaceParams& params, const lefschetz::MatchingLoop& loop);

struct BranchIndexResult {
    int index = 0;
    double raw = 0.0;      // pre-rounding value
    double alpha = 0.0;    // Kaehler angles in (0, 1/2)
    double beta = 0.0;
};

BranchIndexResult branch_index(const SurfaceParams& params, int r, const BranchPair& pair);
BranchIndexResult branch_index_loop(const SurfaceParams& params,
                                    const lefschetz::MatchingLoop& loop,
                                    const BranchPair& pair);

// Kaehler-angle decomposition machinery, exposed for cross-checks. A plane is
// given by two real-spanning tangent vectors in the (x, y) fiber coordinates.
struct PlaneFrame {
    Complex a1, a2;  // first spanning vector
    Complex b1, b2;  // second spanning vector
};
struct UnitaryRep {
    Complex w11, w12, w22;  // symmetric unitary W = U U^T
};
UnitaryRep plane_rep(const PlaneFrame& frame);
// Eigenvalue arguments of W_to * conj(W_from) in (0, 2 pi); throws on
// non-transverse planes.
std::pair<double, double> relative_angles(const UnitaryRep& from, const UnitaryRep& to);

// K(P_POLE) - K(Q_POLE) for dK = (restriction of the primitive one-form),
// by adaptive quadrature along the meridian b = 0.
double exactness_primitive_diff(const SurfaceParams& params, int r);

// max over an (a, b) grid of |Im(Omega / z)| on immersion tangent frames.
double special_lagrangian_residual(const SurfaceParams& params, int r, int grid);

} // namespace mcf::lagrangian

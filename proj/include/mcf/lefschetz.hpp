#pragma once

#include <vector>

#include "mcf/variety.hpp"

namespace mcf::lefschetz {

using variety::SurfaceParams;
using variety::SurfacePoint;
using variety::TangentVector;

// Closed base path through exactly one critical value of the fibration
// (x,y,z) -> z. Circles are evaluated in closed form; general paths are
// cubic Hermite interpolants through the given nodes, closed implicitly at
// the basepoint with the Catmull-Rom closure tangent (n_first - n_last)/2.
struct MatchingLoop {
    int basepoint = 1;
    bool is_circle = false;
    Complex center;                 // circle only
    std::vector<Complex> nodes;     // hermite only, basepoint excluded
    std::vector<Complex> tangents;  // hermite only, one per node

    Complex eval(double t) const;
    Complex deriv(double t) const;
};

MatchingLoop make_circle_loop(int basepoint, Complex center);
MatchingLoop make_hermite_loop(int basepoint, std::vector<Complex> nodes,
                               std::vector<Complex> tangents);

struct EnclosureReport {
    std::vector<int> enclosed;  // critical values with odd winding, sorted
    int C = 0;                  // enclosed.size()
};

std::vector<int> critical_values(const SurfaceParams& params);

// Throws ValidationError if the loop violates the matching-loop conditions
// (basepoint range, counterclockwise orientation, proximity to critical
// values, embeddedness away from the basepoint, transverse return tangents).
void validate_loop(const SurfaceParams& params, const MatchingLoop& loop);

// Winding of the loop around every critical value except the basepoint,
// by summed turning angles with adaptive refinement (per-step < pi/2).
EnclosureReport winding_count(const SurfaceParams& params, const MatchingLoop& loop);

struct ThimblePlane {
    Complex xi;
    TangentVector v1, v2;  // (xi, xi, 0) and (i xi, -i xi, 0)
};

// Tangent plane of the Lefschetz thimble at the critical point over j, for a
// vanishing path arriving with the given final velocity.
ThimblePlane thimble_tangent_at_crit(const SurfaceParams& params, int j,
                                     Complex final_velocity);

// Branch-tracked fiber root w(t) with w^2 = Q(gamma(t)), anchored at t = 1/2
// with the cut-positive-axis principal value of each factor.
Complex cycle_fiber_root(const SurfaceParams& params, const MatchingLoop& loop, double t);

// Point of the matching cycle over gamma(t): (e^{i theta} w, e^{-i theta} w, gamma(t)).
SurfacePoint matching_cycle_sample(const SurfaceParams& params, const MatchingLoop& loop,
                                   double t, double theta);

} // namespace mcf::lefschetz

#pragma once

#include <optional>
#include <vector>

#include "mcf/lagrangian.hpp"
#include "mcf/lefschetz.hpp"
#include "mcf/variety.hpp"

namespace mcf::moduli {

using variety::SurfaceParams;
using variety::SurfacePoint;

// Finite inner function h(z) = lambda * prod (z - a_j)/(conj(a_j) z - 1).
struct BlaschkeProduct {
    Complex lambda{1.0, 0.0};
    std::vector<Complex> alphas;

    Complex operator()(Complex z) const;
    Complex deriv(Complex z) const;
    int degree() const { return static_cast<int>(alphas.size()); }
};

// lambda fixed by h(anchor) = 1 for a boundary anchor point.
BlaschkeProduct blaschke_make(std::vector<Complex> alphas, Complex anchor);

// Which strip end carries the branch jump through the self-intersection.
enum class JumpEnd { Plus, Minus, Both };

// One connected family of strips: a choice of which enclosed critical values
// contribute their Moebius factor to the x-coordinate, plus the jump end.
struct StripComponent {
    SurfaceParams params;
    int r = 0;  // standard sphere radius; 0 when loop is set
    std::optional<lefschetz::MatchingLoop> loop;
    std::vector<int> enclosed;
    std::vector<int> split;  // subset of enclosed multiplying the x-coordinate
    JumpEnd direction = JumpEnd::Plus;

    bool standard() const { return !loop.has_value(); }
    int basepoint() const { return standard() ? r : loop->basepoint; }
};

// All 2^C subset splits, in both one-jump direction variants.
std::vector<StripComponent> strip_components(const SurfaceParams& params, int r);
std::vector<StripComponent> strip_components(const SurfaceParams& params,
                                             const lefschetz::MatchingLoop& loop);

// A concrete strip: disc model with punctures {1, z1}, x = f, y = g, z over
// the base image of the inner function h. eval(s, t) runs through the
// strip-to-disc biholomorphism fixed by the jump-direction convention.
struct StripMap {
    StripComponent component;
    double theta = 0.0;
    Complex z1{-1.0, 0.0};
    BlaschkeProduct h;

    double residual_variety = 0.0;   // max |xy - Q(z)| on the (s,t) grid
    double residual_boundary = 0.0;  // max ||f|-|g|| and ||h|-1| on boundary samples
    double residual_identity = 0.0;  // max |fg - Q(z)| on the grid

    Complex z_of_h(Complex hval) const;
    Complex f_eval(Complex w) const;
    Complex g_eval(Complex w) const;
    SurfacePoint eval_disc(Complex w) const;
    Complex disc_coord(double s, double t) const;
    SurfacePoint eval(double s, double t) const;
};

// Builds the strip for the given phase and puncture position and verifies the
// on-variety, boundary, and product identities on a grid of the given size.
StripMap strip_eval(const StripComponent& component, double theta, Complex z1, int grid = 64);

// Degree-two variant with both ends at the self-intersection; punctures at
// {1, -1}, interior parameter alpha in (-1, 1).
StripMap strip_eval_both_jumps(const StripComponent& component, double theta, double alpha,
                               int grid = 64);

// Chart coordinates of the limit at the non-jump end (either labeling).
lagrangian::ChartPoint ev_smooth_end(const StripMap& strip);

// Spec'd accessor for minus-end limits; requires the minus end to be smooth.
lagrangian::ChartPoint ev_minus_infinity(const StripMap& strip);

struct SolveResult {
    double theta = 0.0;
    Complex z1;
};

// Root solve for ev_smooth_end = target over (theta, z1): coarse 64x64 grid
// scan, Newton refinement, uniqueness asserted by basin scan.
SolveResult solve_ev(const StripComponent& component, const lagrangian::ChartPoint& target,
                     double tol = 1e-10);

// Combinatorial index bookkeeping for marked discs and strips.
struct SignedJump {
    lagrangian::BranchPair pair;
    bool incoming = false;
};

struct BranchData {
    bool disc = false;
    std::optional<lagrangian::BranchPair> minus_end;
    std::optional<lagrangian::BranchPair> plus_end;
    std::vector<SignedJump> bottom;  // boundary jumps, lower component
    std::vector<SignedJump> top;     // boundary jumps, upper component (strips)
    int k0 = 0, k1 = 0;              // boundary marked points
};

struct IndexTable {
    int pq = -1;
    int qp = 3;
    int of(const lagrangian::BranchPair& pair) const;
};

BranchData branch_data_for(const StripComponent& component);

int maslov_combinatorial(const BranchData& data, const IndexTable& table);
int fredholm_index(const BranchData& data, const IndexTable& table);

// Maslov index by numeric winding of the squared phase of the boundary
// tangent line field, with definite-path end corrections from the measured
// Kaehler angles; rounds and rejects non-integrality above 0.1.
int maslov_winding(const StripMap& strip, int samples = 8192);

} // namespace mcf::moduli

#include <cmath>
#include <random>

#include "doctest.h"
#include "mcf/lagrangian.hpp"
#include "oracles.hpp"

using namespace mcf;
using namespace mcf::lagrangian;

namespace {

// Planes {(c w, c conj(w))} coincide exactly when c^2 rays agree.
bool same_plane(Complex c1, Complex c2) {
    const Complex r1 = c1 * c1 / std::norm(c1);
    const Complex r2 = c2 * c2 / std::norm(c2);
    return std::abs(r1 - r2) < 1e-10;
}

} // namespace

TEST_SUITE("lagrangian") {

TEST_CASE("height profile is a strictly monotone odd interpolant") {
    const ProfileFunction& f = profile();
    CHECK(f.value(0.0) == 0.0);
    CHECK(f.value(0.2) == doctest::Approx(0.2));       // identity zone
    CHECK(f.deriv(0.25) == doctest::Approx(1.0));
    const double a_out = 3.0;                           // pole-side closed form
    CHECK(f.value(a_out) == doctest::Approx(kPi - std::pow(std::cos(a_out / 2), 2)));
    CHECK(f.value(-a_out) == doctest::Approx(-f.value(a_out)));

    double prev = f.value(-3.14159);
    for (int i = 1; i <= 2000; ++i) {
        const double a = -3.14159 + 2 * 3.14159 * i / 2000.0;
        const double cur = f.value(a);
        CHECK(cur > prev);
        prev = cur;
    }
    // Derivative agrees with finite differences, including across the joins.
    for (double a : {0.1, 0.29, 0.3, 0.31, 1.0, 2.0, 2.79, 2.8, 2.81, 3.0}) {
        const double fd = (f.value(a + 1e-6) - f.value(a - 1e-6)) / 2e-6;
        CHECK(f.deriv(a) == doctest::Approx(fd).epsilon(1e-5));
    }
    // The join is C^2: second differences stay continuous across the knots.
    for (double a : {0.3, 2.8}) {
        auto d2 = [&](double x) {
            const double h = 1e-4;
            return (f.value(x + h) - 2 * f.value(x) + f.value(x - h)) / (h * h);
        };
        CHECK(d2(a - 5e-4) == doctest::Approx(d2(a + 5e-4)).epsilon(2e-2));
    }
    // Inverse round trip over the full range.
    for (int i = 1; i < 40; ++i) {
        const double a = -kPi + kTwoPi * i / 40.0;
        CHECK(f.inverse(f.value(a)) == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("immersion lands on the variety and matches the closed form at a = 0") {
    for (int N = 1; N <= 6; ++N) {
        for (int r = 1; r <= N; ++r) {
            SurfaceParams params{N};
            // Frozen closed form: xi(0) = i^N prod sqrt(r + m).
            double mag = 1.0;
            for (int m = 1; m <= N; ++m) mag *= std::sqrt(static_cast<double>(r + m));
            const Complex want = mag * std::polar(1.0, N * kPi / 2);
            const SurfacePoint p0 = immersion_eval(params, r, {0.0, 0.0, Pole::None});
            CHECK(std::abs(p0.x - want) < 1e-12 * mag);
            CHECK(std::abs(p0.y - want) < 1e-12 * mag);
            CHECK(std::abs(p0.z + static_cast<double>(r)) < 1e-12);

            for (int i = 0; i < 16; ++i) {
                const double a = -kPi + kTwoPi * (i + 0.5) / 16;
                const double b = 0.37 * i;
                const SurfacePoint p = immersion_eval(params, r, {a, b, Pole::None});
                CHECK(std::abs(variety::poly_eval(params, p)) <
                      1e-10 * (1.0 + std::abs(variety::base_poly(params, p.z))));
            }
        }
    }
}

TEST_CASE("pole chart points collapse to the node") {
    SurfaceParams params{5};
    for (const ChartPoint& pt : {ChartPoint::p_pole(), ChartPoint::q_pole()}) {
        const SurfacePoint p = immersion_eval(params, 3, pt);
        CHECK(std::abs(p.x) == 0.0);
        CHECK(std::abs(p.y) == 0.0);
        CHECK(std::abs(p.z - Complex(3.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("rectangular evaluator agrees with the cylindrical chart near the poles") {
    SurfaceParams params{4};
    const int r = 2;
    for (double a : {2.8, 2.9, 3.0, 3.1, -2.8, -2.95, -3.14}) {
        for (double b : {0.0, 1.1, 4.4}) {
            const SurfacePoint pc = immersion_eval(params, r, {a, b, Pole::None});
            const SurfacePoint pr = immersion_eval_rect(params, r, {a, b, Pole::None});
            const double scale = 1.0 + std::abs(pc.x);
            CHECK(std::abs(pc.x - pr.x) < 1e-10 * scale);
            CHECK(std::abs(pc.y - pr.y) < 1e-10 * scale);
            CHECK(std::abs(pc.z - pr.z) < 1e-10);
        }
    }
}

TEST_CASE("chart tangents match finite differences") {
    SurfaceParams params{3};
    const int r = 2;
    for (double a : {-2.5, -0.2, 0.45, 1.7}) {
        for (double b : {0.4, 2.0}) {
            const auto [da, db] = immersion_tangents(params, r, {a, b, Pole::None});
            const double h = 1e-6;
            auto at = [&](double aa, double bb) { return immersion_eval(params, r, {aa, bb, Pole::None}); };
            const SurfacePoint pa1 = at(a + h, b), pa0 = at(a - h, b);
            const SurfacePoint pb1 = at(a, b + h), pb0 = at(a, b - h);
            CHECK(std::abs((pa1.x - pa0.x) / (2 * h) - da.vx) < 1e-5);
            CHECK(std::abs((pa1.y - pa0.y) / (2 * h) - da.vy) < 1e-5);
            CHECK(std::abs((pa1.z - pa0.z) / (2 * h) - da.vz) < 1e-5);
            CHECK(std::abs((pb1.x - pb0.x) / (2 * h) - db.vx) < 1e-5);
            CHECK(std::abs((pb1.y - pb0.y) / (2 * h) - db.vy) < 1e-5);
            CHECK(std::abs(db.vz) < 1e-14);
            // The immersion is Lagrangian: omega(da, db) = 0.
            CHECK(variety::symplectic_form(da, db) == doctest::Approx(0.0).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(immersion_tangents(params, r, ChartPoint::p_pole()), ValidationError);
}

TEST_CASE("grading satisfies the squared-phase identity and the pole values") {
    SurfaceParams params{4};
    const int r = 3;
    CHECK(grading_eval(ChartPoint::p_pole()).theta == doctest::Approx(1.0));
    CHECK(grading_eval(ChartPoint::q_pole()).theta == doctest::Approx(-1.0));
    for (double a : {-3.0, -1.2, 0.0, 0.8, 2.4}) {
        const double theta = grading_eval({a, 0.0, Pole::None}).theta;
        const Complex z = immersion_eval(params, r, {a, 0.0, Pole::None}).z;
        const Complex lhs = std::polar(1.0, kTwoPi * theta);
        const Complex rhs = z * z / std::norm(z);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("node planes match the thimble planes of the two vanishing directions") {
    for (int N = 1; N <= 6; ++N) {
        for (int r = 1; r <= N; ++r) {
            SurfaceParams params{N};
            const NodePlanes planes = node_planes(params, r);
            // The standard cycle's base curve arrives at the critical value
            // along -i (P side) and departs along +i (Q side).
            const auto tp = lefschetz::thimble_tangent_at_crit(params, r, Complex(0.0, -double(r)));
            const auto tq = lefschetz::thimble_tangent_at_crit(params, r, Complex(0.0, double(r)));
            CHECK(same_plane(planes.cp, tp.xi));
            CHECK(same_plane(planes.cq, tq.xi));
            CHECK(std::abs(planes.cp) == doctest::Approx(std::abs(tp.xi)));
            CHECK(std::abs(std::abs(planes.cp) - std::abs(planes.cq)) < 1e-12);
        }
    }
}

TEST_CASE("loop node planes agree with the thimbles of the corner velocities") {
    SurfaceParams params{4};
    const auto loop = lefschetz::make_circle_loop(2, Complex(0.5, 0.0));
    const NodePlanes planes = node_planes_loop(params, loop);
    const auto tp = lefschetz::thimble_tangent_at_crit(params, 2, -loop.deriv(1.0));
    const auto tq = lefschetz::thimble_tangent_at_crit(params, 2, loop.deriv(0.0));
    CHECK(std::abs(planes.cp - tp.xi) < 1e-12 * std::abs(tp.xi));
    CHECK(std::abs(planes.cq - tq.xi) < 1e-12 * std::abs(tq.xi));
}

TEST_CASE("plane representatives are symmetric unitaries with known relative angles") {
    // Diagonal planes {(c w, c conj(w))}: W = (c^2/|c|^2) sigma_x, so two such
    // planes at phase offset chi have both relative angles equal to 2 chi.
    auto frame_of = [](Complex c) {
        return PlaneFrame{c, c, Complex(0, 1) * c, Complex(0, -1) * c};
    };
    const UnitaryRep w0 = plane_rep(frame_of(Complex(1.0, 0.0)));
    CHECK(std::abs(w0.w11) < 1e-12);
    CHECK(std::abs(w0.w22) < 1e-12);
    CHECK(std::abs(w0.w12 - Complex(1.0, 0.0)) < 1e-12);
    for (double chi : {0.3, 0.7853981633974483, 1.9, 2.9}) {
        const UnitaryRep wc = plane_rep(frame_of(std::polar(2.0, chi)));
        const auto [psi1, psi2] = relative_angles(w0, wc);
        const double want = std::fmod(2 * chi, kTwoPi);
        CHECK(psi1 == doctest::Approx(want).epsilon(1e-9));
        CHECK(psi2 == doctest::Approx(want).epsilon(1e-9));
    }
    // Identical planes are non-transverse.
    CHECK_THROWS_AS(relative_angles(w0, w0), ValidationError);
    // A non-Lagrangian frame cannot be represented.
    CHECK_THROWS_AS(plane_rep(PlaneFrame{{1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}}),
                    NumericalError);
}

TEST_CASE("branch pair indices are -1 and 3 with quarter Kaehler angles") {
    for (int N = 1; N <= 6; ++N) {
        for (int r = 1; r <= N; ++r) {
            SurfaceParams params{N};
            const auto pq = branch_index(params, r, {Pole::P, Pole::Q});
            const auto qp = branch_index(params, r, {Pole::Q, Pole::P});
            CHECK(pq.index == -1);
            CHECK(qp.index == 3);
            CHECK(std::abs(pq.raw - (-1.0)) < 1e-4);
            CHECK(std::abs(qp.raw - 3.0) < 1e-4);
            CHECK(pq.alpha == doctest::Approx(0.25).epsilon(1e-6));
            CHECK(pq.beta == doctest::Approx(0.25).epsilon(1e-6));
            // The two orderings sum to 2 (complementary angles).
            CHECK(pq.raw + qp.raw == doctest::Approx(2.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("loop branch indices reproduce the standard values") {
    SurfaceParams params{4};
    const auto loop = lefschetz::make_circle_loop(3, Complex(0.5, 0.0));
    const auto pq = branch_index_loop(params, loop, {Pole::P, Pole::Q});
    const auto qp = branch_index_loop(params, loop, {Pole::Q, Pole::P});
    CHECK(pq.index == -1);
    CHECK(qp.index == 3);
    CHECK(std::abs(pq.raw - (-1.0)) < 1e-4);
    CHECK(std::abs(qp.raw - 3.0) < 1e-4);
}

TEST_CASE("exactness primitive difference matches the closed form and an independent quadrature") {
    // For (N, r) = (1, 1) the difference is exactly -(pi + 2).
    CHECK(exactness_primitive_diff(SurfaceParams{1}, 1) ==
          doctest::Approx(-(kPi + 2.0)).epsilon(1e-8));

    // Independent composite Gauss-Legendre on the same meridian integrand.
    for (const auto& [N, r] : std::vector<std::pair<int, int>>{{2, 1}, {4, 2}}) {
        SurfaceParams params{N};
        auto integrand = [&, N = N, r = r](double a) {
            if (std::abs(a) >= kPi) return 0.0;
            const ChartPoint pt{a, 0.0, Pole::None};
            const SurfacePoint p = immersion_eval(params, r, pt);
            const auto [da, db] = immersion_tangents(params, r, pt);
            (void)db;
            return variety::primitive_one_form(p, da);
        };
        const double want = oracle::gauss_legendre(integrand, -kPi, kPi, 512);
        const double got = exactness_primitive_diff(params, r);
        CHECK(got == doctest::Approx(want).epsilon(1e-7));
        CHECK(got < 0.0);  // K(P) - K(Q) is negative for every standard sphere
    }
}

TEST_CASE("special Lagrangian residual vanishes to tolerance") {
    CHECK(special_lagrangian_residual(SurfaceParams{1}, 1, 32) < 1e-8);
    CHECK(special_lagrangian_residual(SurfaceParams{3}, 2, 32) < 1e-8);
    CHECK(special_lagrangian_residual(SurfaceParams{5}, 3, 24) < 1e-8);
}

TEST_CASE("radius validation") {
    CHECK_THROWS_AS(immersion_eval(SurfaceParams{3}, 4, {0.0, 0.0, Pole::None}),
                    ValidationError);
    CHECK_THROWS_AS(node_planes(SurfaceParams{3}, 0), ValidationError);
    CHECK_THROWS_AS(branch_index(SurfaceParams{2}, 3, {Pole::P, Pole::Q}), ValidationError);
}

} // TEST_SUITE

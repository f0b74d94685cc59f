#pragma once

// Independent cross-check implementations used only by the tests. These are
// deliberately written with different algorithms than the library paths they
// verify (ray casting instead of turning angles, fixed Gauss-Legendre instead
// of adaptive doubling, exhaustive enumeration instead of Gaussian
// elimination) so that agreement is meaningful.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "mcf/gf2.hpp"

namespace oracle {

using Complex = std::complex<double>;

// Even-odd crossing parity of a horizontal ray from `point` against a densely
// sampled closed curve. Returns true when the point is inside.
inline bool ray_parity(const std::vector<Complex>& curve, Complex point) {
    bool inside = false;
    const size_t n = curve.size();
    for (size_t i = 0; i < n; ++i) {
        const Complex a = curve[i];
        const Complex b = curve[(i + 1) % n];
        const bool straddles = (a.imag() > point.imag()) != (b.imag() > point.imag());
        if (!straddles) continue;
        const double t = (point.imag() - a.imag()) / (b.imag() - a.imag());
        const double x_cross = a.real() + t * (b.real() - a.real());
        if (x_cross > point.real()) inside = !inside;
    }
    return inside;
}

// Central finite difference of a real-vector-valued function of one variable.
template <class F>
auto central_diff(F&& f, double x, double h = 1e-6) {
    auto hi = f(x + h);
    auto lo = f(x - h);
    return (hi - lo) / (2.0 * h);
}

// Composite 16-point Gauss-Legendre quadrature over [a, b] with `panels`
// equal subdivisions. Nodes and weights for the reference interval [-1, 1].
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                             int panels) {
    static const std::array<double, 8> kX = {
        0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
        0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
    static const std::array<double, 8> kW = {
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double s = 0.0;
        for (int k = 0; k < 8; ++k)
            s += kW[k] * (f(mid + 0.5 * h * kX[k]) + f(mid - 0.5 * h * kX[k]));
        total += s * 0.5 * h;
    }
    return total;
}

// --- exhaustive GF(2) linear algebra on small matrices -----------------------

// Number of vectors in the kernel, by trying all 2^cols inputs.
inline int kernel_count(const mcf::gf2::Matrix& m) {
    int count = 0;
    for (unsigned v = 0; v < (1u << m.cols()); ++v) {
        bool zero = true;
        for (int i = 0; i < m.rows() && zero; ++i) {
            bool bit = false;
            for (int j = 0; j < m.cols(); ++j)
                if ((v >> j) & 1u) bit ^= m.get(i, j);
            if (bit) zero = false;
        }
        if (zero) ++count;
    }
    return count;
}

inline int kernel_dim(const mcf::gf2::Matrix& m) {
    int c = kernel_count(m);
    int d = 0;
    while ((1 << d) < c) ++d;
    return d;
}

inline int image_dim(const mcf::gf2::Matrix& m) { return m.cols() - kernel_dim(m); }

// Cohomology dimensions of a complex by exhaustive kernel/image enumeration.
inline std::map<int, int> cohomology_brute(const mcf::gf2::GradedComplex& cx) {
    std::map<int, int> out;
    for (const auto& [d, n] : cx.dims) {
        int ker = n;
        if (auto it = cx.diff.find(d); it != cx.diff.end()) ker = kernel_dim(it->second);
        int im = 0;
        if (auto it = cx.diff.find(d - 1); it != cx.diff.end()) im = image_dim(it->second);
        out[d] = ker - im;
    }
    return out;
}

// --- random GF(2) complexes with known-by-construction dd = 0 ---------------

inline mcf::gf2::Matrix random_invertible(int n, std::mt19937_64& rng) {
    for (;;) {
        mcf::gf2::Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.set(i, j, rng() & 1u);
        if (m.rank() == n) return m;
    }
}

// A random three-term complex C^0 -> C^1 -> C^2 with dims in [4, 8]. Built
// from a canonical pair of block-shift differentials (which square to zero by
// construction) conjugated by random changes of basis in every degree; the
// basis change preserves both dd = 0 and the cohomology dimensions.
struct RandomComplex {
    mcf::gf2::GradedComplex cx;
    std::map<int, int> expected;  // cohomology of the canonical model
};

inline RandomComplex random_complex(std::mt19937_64& rng) {
    auto dim = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
    const int n0 = dim(4, 8), n1 = dim(4, 8), n2 = dim(4, 8);
    // Canonical model: d0 maps the first r0 basis vectors of C^0 to the first
    // r0 of C^1; d1 maps basis vectors [r0, r0+r1) of C^1 to the first r1 of
    // C^2. Composition is zero because the ranges start past r0.
    const int r0 = dim(0, std::min(n0, n1));
    const int r1 = dim(0, std::min(n1 - r0, n2));
    mcf::gf2::Matrix d0(n1, n0), d1(n2, n1);
    for (int i = 0; i < r0; ++i) d0.set(i, i, true);
    for (int i = 0; i < r1; ++i) d1.set(i, r0 + i, true);

    const auto b0 = random_invertible(n0, rng);
    const auto b1 = random_invertible(n1, rng);
    const auto b2 = random_invertible(n2, rng);
    // Change of basis: d0' = b1 d0 b0, d1' = b2 d1 b1^{-1}, with b1^{-1}
    // found per column by exhaustive solve (n <= 8 keeps this cheap).
    mcf::gf2::Matrix b1inv(n1, n1);
    for (int col = 0; col < n1; ++col) {
        for (unsigned v = 0; v < (1u << n1); ++v) {
            bool ok = true;
            for (int i = 0; i < n1 && ok; ++i) {
                bool bit = false;
                for (int j = 0; j < n1; ++j)
                    if ((v >> j) & 1u) bit ^= b1.get(i, j);
                if (bit != (i == col)) ok = false;
            }
            if (ok) {
                for (int j = 0; j < n1; ++j) b1inv.set(j, col, (v >> j) & 1u);
                break;
            }
        }
    }
    RandomComplex out;
    out.cx.dims = {{0, n0}, {1, n1}, {2, n2}};
    out.cx.diff[0] = b1.multiply(d0).multiply(b0);
    out.cx.diff[1] = b2.multiply(d1).multiply(b1inv);
    out.expected = {{0, n0 - r0}, {1, n1 - r0 - r1}, {2, n2 - r1}};
    return out;
}

} // namespace oracle

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mcf/errors.hpp"

namespace mcf {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Argument in [0, 2*pi).
inline double arg2pi(Complex z) {
    double a = std::arg(z);
    if (a < 0.0) a += kTwoPi;
    return a;
}

// Wrap to (-pi, pi].
inline double wrap_pm_pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a > kPi) a -= kTwoPi;
    if (a <= -kPi) a += kTwoPi;
    return a;
}

// Square root with branch cut along the positive real axis and sqrt(-1) = +i.
// Positive reals keep their positive root (cut approached from above).
inline Complex sqrt_cut_positive(Complex z) {
    double a = arg2pi(z);
    return std::sqrt(std::abs(z)) * std::polar(1.0, 0.5 * a);
}

// Lift `raw` (an angle defined mod 2*pi) to the representative nearest `prev`.
inline double unwrap_near(double prev, double raw) {
    return prev + wrap_pm_pi(raw - prev);
}

// Continuous total phase change along a sampled nonvanishing path. Throws if
// any single step moves by more than max_step (sampling too coarse to lift).
inline double track_phase(const std::vector<Complex>& samples, double max_step,
                          const char* stage = "phase") {
    double total = 0.0;
    for (size_t i = 1; i < samples.size(); ++i) {
        double d = wrap_pm_pi(std::arg(samples[i]) - std::arg(samples[i - 1]));
        if (std::abs(d) > max_step)
            throw NumericalError(stage, "phase step too large for continuous lift");
        total += d;
    }
    return total;
}

} // namespace mcf

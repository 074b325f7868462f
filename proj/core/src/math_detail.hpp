// math_detail.hpp — numerically safe kernels shared by the coefficient integrals

#pragma once

#include <cmath>
#include <stdexcept>

namespace zenocool::detail {

inline constexpr double kPi = 3.14159265358979323846;

// Boltzmann exponents are capped so e^{beta omega_a} stays representable.
inline constexpr double kMaxBoltzmannArg = 700.0;

inline void check_boltzmann_arg(double beta_omega_a) {
    if (!(beta_omega_a <= kMaxBoltzmannArg))
        throw std::domain_error("beta * omega_a exceeds the overflow cap of 700");
}

// unnormalized sinc, sinc(x) = sin(x)/x with sinc(0) = 1
inline double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

inline double sinc_sq(double x) {
    const double s = sinc(x);
    return s * s;
}

// (1 - cos x)/x with the removable singularity handled by a Taylor switch
inline double one_minus_cos_over(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 0.5 * x * (1.0 - x2 / 12.0);
    }
    return (1.0 - std::cos(x)) / x;
}

// (e^{a} - e^{x}) / (e^{x} - 1) for x > 0, stable for large arguments
// (a = beta_S omega_a, x = beta omega)
inline double exp_ratio_r(double a, double x) {
    return std::expm1(a - x) / (-std::expm1(-x));
}

// e^{a} (e^{x} - e^{-a}) / (e^{x} - 1) for x > 0; always positive for a >= 0
inline double exp_ratio_cr(double a, double x) {
    return std::exp(a) * std::expm1(-x - a) / std::expm1(-x);
}

} // namespace zenocool::detail

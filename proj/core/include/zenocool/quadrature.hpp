// quadrature.hpp — adaptive Gauss-Kronrod integration with oscillation-aware panel seeding

#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace zenocool::quad {

struct QuadratureSpec {
    double rel_tol{1e-8};
    double abs_tol{1e-12};
    int max_panels{1 << 14};
};

struct Estimate {
    double value{0.0};
    double error{0.0};
    bool converged{true};
};

inline constexpr int kMaxComponents = 8;

// Integrand writing out[0..n) at frequency w. All components share the same
// nodes and panel subdivision, so linear combinations of the results stay
// consistent to rounding.
using VectorIntegrand = std::function<void(double w, std::span<double> out)>;

struct VectorEstimate {
    int n{0};
    std::array<double, kMaxComponents> value{};
    std::array<double, kMaxComponents> error{};
    bool converged{true};

    Estimate component(int i) const { return {value[i], error[i], converged}; }
};

// Panels are seeded from consecutive breakpoints and bisected (worst panel
// first, ties broken by the smaller left endpoint) until every component
// satisfies max(abs_tol, rel_tol * |I_k|) or the panel budget runs out.
// Deterministic for fixed inputs.
VectorEstimate integrate_vector(const VectorIntegrand& f, int n_components,
                                std::span<const double> breakpoints,
                                const QuadratureSpec& spec);

Estimate integrate(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec,
                   std::span<const double> interior_breaks = {});

// Panel boundaries for a kernel oscillating with phase scale*(w - center):
// the phase multiples of pi inside [a, b], merged with a, b and extra points.
std::vector<double> oscillatory_breakpoints(double a, double b, double center,
                                            double scale,
                                            std::span<const double> extra = {});

// Integrate f over [a, b] splitting panels at the kernel zeros
// w = center + k*pi/scale.
Estimate oscillatory_integral(const std::function<double(double)>& f, double a,
                              double b, double center, double scale,
                              const QuadratureSpec& spec,
                              std::span<const double> extra = {});

} // namespace zenocool::quad

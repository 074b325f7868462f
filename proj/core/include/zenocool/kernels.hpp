// kernels.hpp — TCL2 coefficients: transition rates, Lamb shifts, cumulative
// transition weights, filter functions and the golden-rule rate

#pragma once

#include <array>

#include "zenocool/quadrature.hpp"
#include "zenocool/spectrum.hpp"

namespace zenocool::kernels {

using quad::Estimate;
using quad::QuadratureSpec;
using spectrum::BathParams;
using spectrum::SpectralModel;

// The eight time-dependent coefficients at one instant. Superscripts r/cr tag
// the rotating-wave and counter-rotating contributions, subscripts +/- the
// |g>->|e> and |e>->|g> transitions. All vanish identically at t = 0.
struct RateSet {
    double t{0.0};
    double gamma_plus_r{0.0};
    double gamma_plus_cr{0.0};
    double gamma_minus_r{0.0};
    double gamma_minus_cr{0.0};
    double delta_plus_r{0.0};
    double delta_plus_cr{0.0};
    double delta_minus_r{0.0};
    double delta_minus_cr{0.0};

    double gamma_plus() const { return gamma_plus_r + gamma_plus_cr; }
    double gamma_minus() const { return gamma_minus_r + gamma_minus_cr; }
    double delta_plus() const { return delta_plus_r + delta_plus_cr; }
    double delta_minus() const { return delta_minus_r + delta_minus_cr; }
};

struct RateSetEval {
    RateSet rates;
    // error estimates, ordered as the RateSet members above
    std::array<double, 8> errors{};
    bool converged{true};
};

// Accumulated transition weights J(tau); each component is non-negative.
struct CumulativeJ {
    double tau{0.0};
    double j_plus_r{0.0};
    double j_plus_cr{0.0};
    double j_minus_r{0.0};
    double j_minus_cr{0.0};

    double j_plus() const { return j_plus_r + j_plus_cr; }
    double j_minus() const { return j_minus_r + j_minus_cr; }
    double j_total() const { return j_plus() + j_minus(); }
};

struct CumulativeJEval {
    CumulativeJ j;
    std::array<double, 4> errors{}; // j_plus_r, j_plus_cr, j_minus_r, j_minus_cr
    // e^{beta omega_a} J_+ - J_-, accumulated on the same panels so ratios
    // against the J components are consistent to rounding. Only available for
    // beta*omega_a <= 700; NaN (converged=false) beyond.
    Estimate m_numerator{};
    bool has_numerator{false};
    bool converged{true};
};

struct FilterValue {
    double f_r{0.0};
    double f_cr{0.0};
    bool pole{false}; // standalone evaluation at omega = 0

    double total() const { return f_r + f_cr; }
};

// All eight coefficients at time t >= 0.
RateSetEval transition_rates(const SpectralModel& model, const BathParams& bath,
                             double t, const QuadratureSpec& spec = {});

// The four sinc^2 frequency integrals at tau > 0 (never time-integration of
// the rates), plus the measurement-modified numerator on shared panels.
CumulativeJEval cumulative_j(const SpectralModel& model, const BathParams& bath,
                             double tau, const QuadratureSpec& spec = {});

// Frequency-resolved heating/cooling weights. f_r is negative exactly where a
// bath mode cools the qubit (beta omega > beta_s omega_a); f_cr >= 0 for any
// non-inverted initial state.
FilterValue filter_function(double beta_s, const BathParams& bath, double t,
                            double omega);

// 2 pi [2 n_T(omega_a) + 1] G0(omega_a)
double golden_rule_rate(const SpectralModel& model, const BathParams& bath);

// t -> infinity limits of all eight coefficients (principal-value integrals
// for the Lamb shifts, delta-function limits for the rates).
RateSet markovian_rates(const SpectralModel& model, const BathParams& bath,
                        const QuadratureSpec& spec = {});

} // namespace zenocool::kernels

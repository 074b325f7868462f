// kernels.cpp — oscillatory frequency integrals behind the TCL2 coefficients

#include "zenocool/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "math_detail.hpp"

namespace zenocool::kernels {
namespace {

using detail::exp_ratio_cr;
using detail::exp_ratio_r;
using detail::kPi;
using detail::one_minus_cos_over;
using detail::sinc;
using detail::sinc_sq;

// Thermally weighted density n_T(w) G0(w) assembled jointly: the factor
// w/expm1(beta w) absorbs the 1/(beta w) divergence of n_T at w -> 0.
inline double thermal_mass(const SpectralModel& m, double beta, double w) {
    if (w <= 0.0) return m.value_over_omega(0.0) / beta;
    return m.value_over_omega(w) * (w / std::expm1(beta * w));
}

std::vector<double> domain_hints(const SpectralModel& model, const BathParams& bath) {
    auto hints = model.panel_hints();
    hints.push_back(bath.omega_a);
    hints.push_back(1.0 / bath.beta);
    return hints;
}

} // namespace

RateSetEval transition_rates(const SpectralModel& model, const BathParams& bath,
                             double t, const QuadratureSpec& spec) {
    if (t < 0.0) throw std::domain_error("transition_rates: t must be non-negative");
    RateSetEval out;
    out.rates.t = t;
    if (t == 0.0) return out; // every integrand carries a factor vanishing at t = 0

    const double wa = bath.omega_a;
    const double beta = bath.beta;
    const double w_end = model.support_end();
    const auto hints = domain_hints(model, bath);

    // rotating-wave family: kernels in x = (w - wa) t; the shift kernel
    // (1 - cos x)/(w - wa) is t * (1 - cos x)/x
    auto fr = [&](double w, std::span<double> v) {
        const double ng = thermal_mass(model, beta, w);
        const double g = model.value(w);
        const double x = (w - wa) * t;
        const double sc = sinc(x);
        const double kd = t * one_minus_cos_over(x);
        v[0] = 2.0 * t * ng * sc;        // Gamma_+^r
        v[1] = 2.0 * t * (ng + g) * sc;  // Gamma_-^r
        v[2] = ng * kd;                  // Delta_+^r
        v[3] = -(ng + g) * kd;           // Delta_-^r
    };
    auto pr = quad::oscillatory_breakpoints(0.0, w_end, wa, t, hints);
    auto r_est = quad::integrate_vector(fr, 4, pr, spec);

    // counter-rotating family: kernels in y = (w + wa) t
    auto fcr = [&](double w, std::span<double> v) {
        const double ng = thermal_mass(model, beta, w);
        const double g = model.value(w);
        const double y = (w + wa) * t;
        const double sc = sinc(y);
        const double kd = t * one_minus_cos_over(y);
        v[0] = 2.0 * t * (ng + g) * sc;  // Gamma_+^cr
        v[1] = 2.0 * t * ng * sc;        // Gamma_-^cr
        v[2] = -(ng + g) * kd;           // Delta_+^cr
        v[3] = ng * kd;                  // Delta_-^cr
    };
    auto pcr = quad::oscillatory_breakpoints(0.0, w_end, -wa, t, hints);
    auto cr_est = quad::integrate_vector(fcr, 4, pcr, spec);

    out.rates.gamma_plus_r = r_est.value[0];
    out.rates.gamma_minus_r = r_est.value[1];
    out.rates.delta_plus_r = r_est.value[2];
    out.rates.delta_minus_r = r_est.value[3];
    out.rates.gamma_plus_cr = cr_est.value[0];
    out.rates.gamma_minus_cr = cr_est.value[1];
    out.rates.delta_plus_cr = cr_est.value[2];
    out.rates.delta_minus_cr = cr_est.value[3];
    out.errors = {r_est.error[0], cr_est.error[0], r_est.error[1], cr_est.error[1],
                  r_est.error[2], cr_est.error[2], r_est.error[3], cr_est.error[3]};
    out.converged = r_est.converged && cr_est.converged;
    return out;
}

CumulativeJEval cumulative_j(const SpectralModel& model, const BathParams& bath,
                             double tau, const QuadratureSpec& spec) {
    if (!(tau > 0.0)) throw std::domain_error("cumulative_j: tau must be positive");
    const double wa = bath.omega_a;
    const double beta = bath.beta;
    const double bwa = beta * wa;
    const double tau2 = tau * tau;
    const double w_end = model.support_end();
    const auto hints = domain_hints(model, bath);
    const bool with_num = bwa <= detail::kMaxBoltzmannArg;
    const int ncomp = with_num ? 3 : 2;

    CumulativeJEval out;
    out.j.tau = tau;
    out.has_numerator = with_num;

    // rotating-wave family: sinc^2[(w - wa) tau / 2]
    auto fr = [&](double w, std::span<double> v) {
        const double ng = thermal_mass(model, beta, w);
        const double g = model.value(w);
        const double s2 = tau2 * sinc_sq(0.5 * (w - wa) * tau);
        v[0] = ng * s2;       // J_+^r
        v[1] = (ng + g) * s2; // J_-^r
        if (with_num) v[2] = exp_ratio_r(bwa, beta * w) * g * s2;
    };
    auto pr = quad::oscillatory_breakpoints(0.0, w_end, wa, 0.5 * tau, hints);
    auto r_est = quad::integrate_vector(fr, ncomp, pr, spec);

    // counter-rotating family: sinc^2[(w + wa) tau / 2]
    auto fcr = [&](double w, std::span<double> v) {
        const double ng = thermal_mass(model, beta, w);
        const double g = model.value(w);
        const double s2 = tau2 * sinc_sq(0.5 * (w + wa) * tau);
        v[0] = (ng + g) * s2; // J_+^cr
        v[1] = ng * s2;       // J_-^cr
        if (with_num) v[2] = exp_ratio_cr(bwa, beta * w) * g * s2;
    };
    auto pcr = quad::oscillatory_breakpoints(0.0, w_end, -wa, 0.5 * tau, hints);
    auto cr_est = quad::integrate_vector(fcr, ncomp, pcr, spec);

    out.j.j_plus_r = r_est.value[0];
    out.j.j_minus_r = r_est.value[1];
    out.j.j_plus_cr = cr_est.value[0];
    out.j.j_minus_cr = cr_est.value[1];
    out.errors = {r_est.error[0], cr_est.error[0], r_est.error[1], cr_est.error[1]};
    out.converged = r_est.converged && cr_est.converged;
    if (with_num) {
        out.m_numerator = Estimate{r_est.value[2] + cr_est.value[2],
                                   r_est.error[2] + cr_est.error[2], out.converged};
    } else {
        out.m_numerator = Estimate{std::numeric_limits<double>::quiet_NaN(),
                                   std::numeric_limits<double>::infinity(), false};
    }
    return out;
}

FilterValue filter_function(double beta_s, const BathParams& bath, double t,
                            double omega) {
    if (!(t > 0.0)) throw std::domain_error("filter_function: t must be positive");
    if (omega < 0.0) throw std::domain_error("filter_function: omega must be non-negative");
    if (beta_s < 0.0) throw std::domain_error("filter_function: beta_s must be non-negative");
    const double bswa = beta_s * bath.omega_a;
    detail::check_boltzmann_arg(bswa);
    FilterValue out;
    if (omega == 0.0) {
        // 1/(beta omega) thermal pole; finite only in combination with a
        // density vanishing at zero
        out.pole = true;
        out.f_r = std::numeric_limits<double>::infinity();
        out.f_cr = std::numeric_limits<double>::infinity();
        return out;
    }
    const double x = bath.beta * omega;
    const double t2 = t * t;
    out.f_r = exp_ratio_r(bswa, x) * t2 * sinc_sq(0.5 * (omega - bath.omega_a) * t);
    out.f_cr = exp_ratio_cr(bswa, x) * t2 * sinc_sq(0.5 * (omega + bath.omega_a) * t);
    return out;
}

double golden_rule_rate(const SpectralModel& model, const BathParams& bath) {
    const double g = model.value(bath.omega_a);
    const double weight = 2.0 / std::expm1(bath.beta * bath.omega_a) + 1.0;
    return 2.0 * kPi * weight * g;
}

RateSet markovian_rates(const SpectralModel& model, const BathParams& bath,
                        const QuadratureSpec& spec) {
    const double wa = bath.omega_a;
    const double beta = bath.beta;
    const double w_end = model.support_end();
    RateSet out;
    out.t = std::numeric_limits<double>::infinity();

    const double ng_a = thermal_mass(model, beta, wa);
    const double g_a = model.value(wa);
    out.gamma_plus_r = 2.0 * kPi * ng_a;
    out.gamma_minus_r = 2.0 * kPi * (ng_a + g_a);
    out.gamma_plus_cr = 0.0;
    out.gamma_minus_cr = 0.0;

    auto hints = domain_hints(model, bath);
    hints.push_back(wa);

    // principal values across the resonance via subtraction of f(wa)
    auto pv_resonant = [&](auto&& f) {
        const double f_a = f(wa);
        const double h = 1e-6 * wa;
        const double slope = (f(wa + h) - f(wa - h)) / (2.0 * h);
        auto reg = [&](double w) {
            const double d = w - wa;
            if (std::abs(d) < 1e-7 * wa) return slope;
            return (f(w) - f_a) / d;
        };
        auto r = quad::integrate(reg, 0.0, w_end, spec, hints);
        return r.value + f_a * std::log((w_end - wa) / wa);
    };
    auto f_plus = [&](double w) { return thermal_mass(model, beta, w); };
    auto f_minus = [&](double w) {
        return thermal_mass(model, beta, w) + model.value(w);
    };
    out.delta_plus_r = pv_resonant(f_plus);
    out.delta_minus_r = -pv_resonant(f_minus);

    auto f_p_cr = [&](double w) { return f_minus(w) / (w + wa); };
    auto f_m_cr = [&](double w) { return f_plus(w) / (w + wa); };
    out.delta_plus_cr = -quad::integrate(f_p_cr, 0.0, w_end, spec, hints).value;
    out.delta_minus_cr = quad::integrate(f_m_cr, 0.0, w_end, spec, hints).value;
    return out;
}

} // namespace zenocool::kernels

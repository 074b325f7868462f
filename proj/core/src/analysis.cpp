// analysis.cpp — cooling figures of merit and spectral-domain diagnostics

#include "zenocool/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "math_detail.hpp"

namespace zenocool::analysis {
namespace {

using detail::exp_ratio_cr;
using detail::exp_ratio_r;
using detail::kPi;
using detail::sinc_sq;

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double f_lo) {
    // bisection to machine width; deterministic
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

Estimate m_factor_exact(const SpectralModel& model, const BathParams& bath,
                        double tau, const QuadratureSpec& spec) {
    if (!(tau > 0.0)) throw std::domain_error("m_factor_exact: tau must be positive");
    detail::check_boltzmann_arg(bath.beta * bath.omega_a);
    const auto jn = kernels::cumulative_j(model, bath, tau, spec);
    const double jt = jn.j.j_total();
    if (!(jt > 0.0))
        throw std::domain_error("m_factor_exact: vanishing total weight J(tau)");
    Estimate out;
    out.value = jn.m_numerator.value / jt;
    double jerr = 0.0;
    for (double e : jn.errors) jerr += e;
    out.error = jn.m_numerator.error / jt + std::abs(out.value) * jerr / jt;
    out.converged = jn.converged;
    return out;
}

Estimate m_factor_approx(const SpectralModel& model, const BathParams& bath,
                         double tau, const QuadratureSpec& spec) {
    if (!(tau > 0.0)) throw std::domain_error("m_factor_approx: tau must be positive");
    const double wa = bath.omega_a;
    const double beta = bath.beta;
    detail::check_boltzmann_arg(beta * wa);
    const double ebwa = std::exp(beta * wa);

    const double g = model.value(wa);
    const auto d = model.derivatives(wa);
    const double two_wa = 2.0 * wa;
    const double hi = std::min(two_wa, model.support_end());

    // counter-rotating near-resonant integral over [0, 2 omega_a]
    Estimate icr{0.0, 0.0, true};
    if (hi > 0.0) {
        auto f = [&](double w) {
            return sinc_sq(0.5 * (w + wa) * tau) * model.value(w);
        };
        auto hints = model.panel_hints();
        icr = quad::oscillatory_integral(f, 0.0, hi, -wa, 0.5 * tau, spec, hints);
    }

    const auto tail = model.tail_integral(two_wa);

    const double n1 = -beta * (2.0 * d.first - beta * g) *
                      (wa - std::sin(wa * tau) / tau);
    const double n2 = 0.5 * tau * tau * ebwa * icr.value;
    const double n3 = ebwa * tail.value;
    const double den = g * (kPi * tau - 2.0 / wa) + wa * d.second + 2.0 * tail.value;

    Estimate out;
    out.converged = icr.converged && den > 0.0;
    out.value = (n1 + n2 + n3) / den;
    out.error = 0.5 * tau * tau * ebwa * icr.error / std::abs(den);
    return out;
}

SmoothedM m_factor_smoothed(const SpectralModel& model, const BathParams& bath,
                            double tau) {
    if (!(tau > 0.0)) throw std::domain_error("m_factor_smoothed: tau must be positive");
    const double wa = bath.omega_a;
    const double beta = bath.beta;
    detail::check_boltzmann_arg(beta * wa);
    SmoothedM out;
    if (!(kPi * tau - 2.0 / wa > 0.0)) return out;

    const double g = model.value(wa);
    const auto d = model.derivatives(wa);
    const double hi = std::min(2.0 * wa, model.support_end());
    double i2 = 0.0;
    if (hi > 0.0) {
        auto f = [&](double w) {
            const double q = w + wa;
            return model.value(w) / (q * q);
        };
        auto hints = model.panel_hints();
        i2 = quad::integrate(f, 0.0, hi, QuadratureSpec{1e-10, 1e-15, 1 << 14}, hints).value;
    }
    const double den = g * (kPi * tau - 2.0 / wa) + wa * d.second;
    if (!(den > 0.0)) return out;
    out.value = (-beta * wa * (2.0 * d.first - beta * g) + std::exp(beta * wa) * i2) / den;
    out.valid = true;
    return out;
}

double domain_filter(const BathParams& bath, double tau, double omega,
                     FilterMode mode) {
    const double wa = bath.omega_a;
    const double bwa = bath.beta * wa;
    const double x = bath.beta * omega;
    if (mode == FilterMode::smoothed) {
        // sin^2 -> 1/2 in both components, multiplied through by
        // (w - wa)^2 (w + wa)^2 tau^2 / 2 to clear the resonance pole:
        // same sign as the averaged filter, zero exactly at w = wa
        const double dm = omega - wa;
        const double dp = omega + wa;
        return exp_ratio_r(bwa, x) * dp * dp + exp_ratio_cr(bwa, x) * dm * dm;
    }
    const double t2 = tau * tau;
    return exp_ratio_r(bwa, x) * t2 * sinc_sq(0.5 * (omega - wa) * tau) +
           exp_ratio_cr(bwa, x) * t2 * sinc_sq(0.5 * (omega + wa) * tau);
}

CoolingDomain cooling_domain(const BathParams& bath, double tau, FilterMode mode,
                             double omega_max, bool all_lobes) {
    if (!(tau > 0.0)) throw std::domain_error("cooling_domain: tau must be positive");
    detail::check_boltzmann_arg(bath.beta * bath.omega_a);
    const double wa = bath.omega_a;
    if (mode == FilterMode::automatic)
        mode = (tau < 2.0 * kPi / wa) ? FilterMode::raw : FilterMode::smoothed;

    CoolingDomain out;
    out.used = mode;

    auto F = [&](double w) { return domain_filter(bath, tau, w, mode); };

    // deterministic scan grid resolving the finest sinc oscillation
    double step = std::min(0.005 * wa, 2.0 * kPi / (tau * 24.0));
    step = std::max(step, omega_max / 400000.0);
    const double w_lo = 1e-6 * wa;

    double best_f = 0.0, best_w = 0.0;
    std::vector<double> ws;
    std::vector<double> fs;
    for (double w = w_lo; w <= omega_max + 0.5 * step; w += step) {
        const double f = F(w);
        ws.push_back(w);
        fs.push_back(f);
        if (f < best_f) {
            best_f = f;
            best_w = w;
        }
    }
    out.f_min = best_f;
    out.omega_min = best_w;
    if (!(best_f < 0.0)) return out; // no negative region: empty marker

    const std::size_t n = ws.size();
    std::size_t i_min = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (ws[i] == best_w) { i_min = i; break; }

    // walk out of the negative stretch containing the global minimum
    std::size_t lo = i_min;
    while (lo > 0 && fs[lo - 1] < 0.0) --lo;
    std::size_t hi = i_min;
    while (hi + 1 < n && fs[hi + 1] < 0.0) ++hi;

    out.empty = false;
    if (lo == 0) {
        // negative already at the scan start (smoothed mode: boundary at wa)
        out.omega1 = (mode == FilterMode::smoothed) ? wa : ws[0];
    } else {
        out.omega1 = bisect(F, ws[lo - 1], ws[lo], fs[lo - 1]);
    }
    if (hi + 1 >= n) {
        out.omega2 = ws[n - 1];
    } else {
        out.omega2 = bisect(F, ws[hi], ws[hi + 1], fs[hi]);
    }

    if (all_lobes) {
        std::size_t i = 0;
        while (i < n) {
            if (fs[i] < 0.0) {
                std::size_t j = i;
                while (j + 1 < n && fs[j + 1] < 0.0) ++j;
                Lobe lobe;
                lobe.omega1 = (i == 0) ? ((mode == FilterMode::smoothed) ? wa : ws[0])
                                       : bisect(F, ws[i - 1], ws[i], fs[i - 1]);
                lobe.omega2 = (j + 1 >= n) ? ws[n - 1] : bisect(F, ws[j], ws[j + 1], fs[j]);
                out.lobes.push_back(lobe);
                i = j + 1;
            } else {
                ++i;
            }
        }
    }
    return out;
}

CrZero cr_zero_curve(double tau, const BathParams& bath) {
    if (!(tau > 0.0)) throw std::domain_error("cr_zero_curve: tau must be positive");
    CrZero out;
    out.omega = 2.0 * kPi / tau - bath.omega_a;
    out.in_band = out.omega > 0.0;
    return out;
}

double w2_estimate(const BathParams& bath) {
    if (!(bath.beta > 0.0)) throw std::domain_error("w2_estimate: beta must be positive");
    const double bwa = bath.beta * bath.omega_a;
    return bath.omega_a * (1.0 + 4.0 * bwa * std::exp(-bwa));
}

W2Peak w2_estimate_peak(double omega_a) {
    // 4 beta omega_a e^{-beta omega_a} peaks at beta omega_a = 1
    return {1.0 / omega_a, omega_a * (1.0 + 4.0 / std::exp(1.0))};
}

CoolingCriterion cooling_criterion(const SpectralModel& model, const BathParams& bath) {
    CoolingCriterion out;
    out.rhs = 0.5 * bath.beta;
    const double g = model.value(bath.omega_a);
    if (!(g > 0.0)) {
        out.defined = false;
        return out;
    }
    out.lhs = model.derivatives(bath.omega_a).first / g;
    out.pass = out.lhs > out.rhs;
    if (const auto* p = model.super_ohmic_params())
        out.beta_max = 2.0 * p->s / bath.omega_a;
    return out;
}

TauOptimum optimize_tau(const SpectralModel& model, const BathParams& bath,
                        double tau_lo, double tau_hi, const QuadratureSpec& spec,
                        double grid_step) {
    if (!(tau_lo > 0.0 && tau_hi > tau_lo))
        throw std::domain_error("optimize_tau: need 0 < tau_lo < tau_hi");
    const double period = 2.0 * kPi / bath.omega_a;
    double step = grid_step > 0.0 ? grid_step : period / 32.0;
    step = std::min(step, period / 20.0); // resolve the sin(omega_a tau) oscillation

    TauOptimum out;
    auto eval = [&](double tau) {
        const auto m = m_factor_exact(model, bath, tau, spec);
        out.converged = out.converged && m.converged;
        return m.value;
    };

    std::vector<double> taus;
    for (double tau = tau_lo; tau < tau_hi; tau += step) taus.push_back(tau);
    taus.push_back(tau_hi);

    std::size_t best = 0;
    double best_m = eval(taus[0]);
    for (std::size_t i = 1; i < taus.size(); ++i) {
        const double m = eval(taus[i]);
        if (m < best_m) { // strict: ties keep the smaller tau
            best_m = m;
            best = i;
        }
    }

    double a = taus[best > 0 ? best - 1 : 0];
    double b = taus[std::min(best + 1, taus.size() - 1)];
    if (a == b) {
        out.tau_min = a;
        out.m_min = best_m;
        out.cooling = best_m < 0.0;
        return out;
    }

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > 1e-7 * (1.0 + b)) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = eval(d);
        }
    }
    const double tau_best = 0.5 * (a + b);
    const double m_best = eval(tau_best);
    if (m_best <= best_m) {
        out.tau_min = tau_best;
        out.m_min = m_best;
    } else {
        out.tau_min = taus[best];
        out.m_min = best_m;
    }
    out.cooling = out.m_min < 0.0;
    return out;
}

ZenoClassification classify_zeno(const SpectralModel& model, const BathParams& bath,
                                 double tau, const QuadratureSpec& spec) {
    if (!(tau > 0.0)) throw std::domain_error("classify_zeno: tau must be positive");
    ZenoClassification out;
    const auto j = kernels::cumulative_j(model, bath, tau, spec);
    out.converged = j.converged;
    out.effective_rate = j.j.j_total() / tau;
    out.golden_rate = kernels::golden_rule_rate(model, bath);
    out.ratio = out.effective_rate / out.golden_rate;
    constexpr double eps = 1e-3;
    if (out.ratio > 1.0 + eps) out.cls = ZenoClass::qaze;
    else if (out.ratio < 1.0 - eps) out.cls = ZenoClass::qze;
    else out.cls = ZenoClass::boundary;
    return out;
}

CoolingReport make_cooling_report(const SpectralModel& model, const BathParams& bath,
                                  double tau_lo, double tau_hi, double tau_step,
                                  double domain_tau, const QuadratureSpec& spec) {
    if (!(tau_lo > 0.0 && tau_hi > tau_lo && tau_step > 0.0))
        throw std::domain_error("make_cooling_report: bad tau grid");
    CoolingReport rep;
    for (double tau = tau_lo; tau <= tau_hi + 0.5 * tau_step; tau += tau_step)
        rep.tau_grid.push_back(tau);

    rep.m_exact.reserve(rep.tau_grid.size());
    for (double tau : rep.tau_grid) {
        const auto e = m_factor_exact(model, bath, tau, spec);
        const auto a = m_factor_approx(model, bath, tau, spec);
        const auto s = m_factor_smoothed(model, bath, tau);
        rep.m_exact.push_back(e.value);
        rep.m_exact_error.push_back(e.error);
        rep.m_approx.push_back(a.value);
        rep.m_smoothed.push_back(s.valid ? s.value
                                         : std::numeric_limits<double>::quiet_NaN());
        int flag = 0;
        if (!e.converged) flag |= 1;
        if (!a.converged) flag |= 2;
        if (!s.valid) flag |= 4;
        rep.point_flags.push_back(flag);
        if (flag & 3) rep.any_flag = true;
    }

    const auto opt = optimize_tau(model, bath, tau_lo, tau_hi, spec);
    rep.tau_min = opt.tau_min;
    rep.m_min = opt.m_min;
    rep.domain_tau = domain_tau;
    rep.domain = cooling_domain(bath, domain_tau);
    rep.criterion = cooling_criterion(model, bath);
    rep.zeno = classify_zeno(model, bath, domain_tau, spec);
    if (!opt.converged || !rep.zeno.converged) rep.any_flag = true;
    return rep;
}

} // namespace zenocool::analysis

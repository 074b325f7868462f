// dynamics.cpp — rate-table caching, embedded RK propagation, QND projections

#include "zenocool/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace zenocool::dynamics {
namespace {

using State = std::array<double, 3>;

std::array<double, 8> to_array(const kernels::RateSet& r) {
    return {r.gamma_plus_r,  r.gamma_plus_cr, r.gamma_minus_r, r.gamma_minus_cr,
            r.delta_plus_r,  r.delta_plus_cr, r.delta_minus_r, r.delta_minus_cr};
}

kernels::RateSet from_array(double t, const std::array<double, 8>& a) {
    kernels::RateSet r;
    r.t = t;
    r.gamma_plus_r = a[0];
    r.gamma_plus_cr = a[1];
    r.gamma_minus_r = a[2];
    r.gamma_minus_cr = a[3];
    r.delta_plus_r = a[4];
    r.delta_plus_cr = a[5];
    r.delta_minus_r = a[6];
    r.delta_minus_cr = a[7];
    return r;
}

// Dormand-Prince 5(4) pair
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
};

using Rhs = std::function<State(double, const State&)>;

State axpy(const State& y, double h, const State& k) {
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
}

// Integrate from t0 to t1, invoking on_sample exactly at the requested times.
// sample_times must be sorted, strictly inside (t0, t1]; the state at t1 is
// returned. Steps never cross a sample time.
State integrate_segment(const Rhs& rhs, State y, double t0, double t1,
                        const OdeControls& ode,
                        std::span<const double> sample_times,
                        const std::function<void(double, const State&)>& on_sample) {
    std::size_t next = 0;
    double t = t0;

    if (ode.fixed_step) {
        const double dt = ode.fixed_dt;
        while (t < t1 - 1e-14 * std::max(1.0, std::abs(t1))) {
            double target = t1;
            if (next < sample_times.size()) target = std::min(target, sample_times[next]);
            double h = std::min(dt, target - t);
            const State k1 = rhs(t, y);
            const State k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
            const State k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
            const State k4 = rhs(t + h, axpy(y, h, k3));
            for (int i = 0; i < 3; ++i)
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            t += h;
            if (next < sample_times.size() &&
                std::abs(t - sample_times[next]) <= 1e-12 * std::max(1.0, std::abs(t))) {
                on_sample(sample_times[next], y);
                ++next;
            }
        }
        while (next < sample_times.size()) on_sample(sample_times[next++], y);
        return y;
    }

    double h = std::min(1e-3, (t1 - t0));
    State k1 = rhs(t, y);
    while (t < t1 - 1e-14 * std::max(1.0, std::abs(t1))) {
        double target = t1;
        bool at_sample = false;
        if (next < sample_times.size()) {
            target = std::min(target, sample_times[next]);
            at_sample = sample_times[next] <= t1;
        }
        if (h > target - t) h = target - t;

        const State k2 = rhs(t + Dopri5::c2 * h, axpy(y, h * Dopri5::a21, k1));
        State yt;
        for (int i = 0; i < 3; ++i)
            yt[i] = y[i] + h * (Dopri5::a31 * k1[i] + Dopri5::a32 * k2[i]);
        const State k3 = rhs(t + Dopri5::c3 * h, yt);
        for (int i = 0; i < 3; ++i)
            yt[i] = y[i] + h * (Dopri5::a41 * k1[i] + Dopri5::a42 * k2[i] +
                                Dopri5::a43 * k3[i]);
        const State k4 = rhs(t + Dopri5::c4 * h, yt);
        for (int i = 0; i < 3; ++i)
            yt[i] = y[i] + h * (Dopri5::a51 * k1[i] + Dopri5::a52 * k2[i] +
                                Dopri5::a53 * k3[i] + Dopri5::a54 * k4[i]);
        const State k5 = rhs(t + Dopri5::c5 * h, yt);
        for (int i = 0; i < 3; ++i)
            yt[i] = y[i] + h * (Dopri5::a61 * k1[i] + Dopri5::a62 * k2[i] +
                                Dopri5::a63 * k3[i] + Dopri5::a64 * k4[i] +
                                Dopri5::a65 * k5[i]);
        const State k6 = rhs(t + h, yt);
        State ynew;
        for (int i = 0; i < 3; ++i)
            ynew[i] = y[i] + h * (Dopri5::b1 * k1[i] + Dopri5::b3 * k3[i] +
                                  Dopri5::b4 * k4[i] + Dopri5::b5 * k5[i] +
                                  Dopri5::b6 * k6[i]);
        const State k7 = rhs(t + h, ynew);

        double err = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double e = h * (Dopri5::e1 * k1[i] + Dopri5::e3 * k3[i] +
                                  Dopri5::e4 * k4[i] + Dopri5::e5 * k5[i] +
                                  Dopri5::e6 * k6[i] + Dopri5::e7 * k7[i]);
            const double sc = ode.abs_tol +
                              ode.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / 3.0);

        if (err <= 1.0 || h <= 1e-13 * std::max(1.0, std::abs(t))) {
            t += h;
            y = ynew;
            k1 = k7; // first-same-as-last
            if (at_sample &&
                std::abs(t - sample_times[next]) <= 1e-12 * std::max(1.0, std::abs(t))) {
                on_sample(sample_times[next], y);
                ++next;
            }
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h = std::min(factor * h, t1 - t0);
        if (!(h > 0.0)) h = 1e-13;
    }
    while (next < sample_times.size()) on_sample(sample_times[next++], y);
    return y;
}

void check_positivity(Trajectory& traj, double t, const QubitState& s) {
    const double coh2 = s.rho_eg_re * s.rho_eg_re + s.rho_eg_im * s.rho_eg_im;
    const double excess = coh2 - s.rho_ee * (1.0 - s.rho_ee);
    if (excess > traj.positivity.worst) {
        traj.positivity.worst = excess;
        traj.positivity.t_worst = t;
    }
    if (excess > 1e-9) traj.positivity.violated = true;
}

} // namespace

RateTable::RateTable(const SpectralModel& model, const BathParams& bath,
                     double t_max, const RateTableControls& controls,
                     const QuadratureSpec& spec) {
    dt_ = controls.grid_dt;
    const double covered = std::min(t_max, controls.horizon);
    std::size_t n = static_cast<std::size_t>(std::ceil(covered / dt_)) + 1;
    n = std::max<std::size_t>(n, 4);
    t_end_ = dt_ * static_cast<double>(n - 1);
    grid_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto eval = kernels::transition_rates(model, bath, dt_ * static_cast<double>(i), spec);
        grid_[i] = to_array(eval.rates);
        converged_ = converged_ && eval.converged;
    }
    if (t_max > t_end_) {
        has_tail_ = true;
        tail_ = to_array(kernels::markovian_rates(model, bath, spec));
    }
}

kernels::RateSet RateTable::at(double t) const {
    if (t <= 0.0) return from_array(0.0, grid_.front());
    if (t >= t_end_) {
        if (has_tail_) return from_array(t, tail_);
        return from_array(t, grid_.back());
    }
    const std::size_t n = grid_.size();
    std::size_t i = static_cast<std::size_t>(t / dt_);
    i = std::min(i, n - 2);
    const double u = t / dt_ - static_cast<double>(i);

    std::array<double, 8> out{};
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    for (int k = 0; k < 8; ++k) {
        const double y0 = grid_[i][k];
        const double y1 = grid_[i + 1][k];
        const double m0 = (i == 0) ? (grid_[1][k] - grid_[0][k]) / dt_
                                   : (grid_[i + 1][k] - grid_[i - 1][k]) / (2.0 * dt_);
        const double m1 = (i + 2 < n)
                              ? (grid_[i + 2][k] - grid_[i][k]) / (2.0 * dt_)
                              : (grid_[i + 1][k] - grid_[i][k]) / dt_;
        out[k] = h00 * y0 + h10 * dt_ * m0 + h01 * y1 + h11 * dt_ * m1;
    }
    return from_array(t, out);
}

StateDerivative bloch_rhs(const QubitState& state, const kernels::RateSet& rates,
                          const BathParams& bath) {
    const double gp = rates.gamma_plus();
    const double gm = rates.gamma_minus();
    const double dd = rates.delta_minus() - rates.delta_plus();
    StateDerivative d;
    d.d_rho_ee = -gm * state.rho_ee + gp * (1.0 - state.rho_ee);
    // d rho_eg/dt = -[ (gp+gm)/2 + i(omega_a + dd) ] rho_eg
    //              +[ (gp+gm)/2 - i dd ] conj(rho_eg)
    d.d_rho_eg_re = bath.omega_a * state.rho_eg_im;
    d.d_rho_eg_im = -(bath.omega_a + 2.0 * dd) * state.rho_eg_re -
                    (gp + gm) * state.rho_eg_im;
    return d;
}

QubitState apply_measurement(const QubitState& state) {
    return {state.rho_ee, 0.0, 0.0};
}

Trajectory evolve_free(const QubitState& initial, const SpectralModel& model,
                       const BathParams& bath, double horizon,
                       const EvolutionControls& controls,
                       std::span<const double> sample_times) {
    if (!(horizon > 0.0)) throw std::domain_error("evolve_free: horizon must be positive");

    std::vector<double> times(sample_times.begin(), sample_times.end());
    if (times.empty()) {
        const double dt = horizon / 1000.0;
        for (int i = 1; i <= 1000; ++i) times.push_back(dt * i);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    times.erase(std::remove_if(times.begin(), times.end(),
                               [&](double t) { return t <= 0.0 || t > horizon; }),
                times.end());
    if (times.empty() || times.back() < horizon) times.push_back(horizon);

    Trajectory traj;
    std::optional<RateTable> table;
    std::function<kernels::RateSet(double)> rates_at;
    if (controls.table.direct_quadrature) {
        rates_at = [&](double t) {
            return kernels::transition_rates(model, bath, t, controls.quadrature).rates;
        };
    } else {
        table.emplace(model, bath, horizon, controls.table, controls.quadrature);
        traj.rates_converged = table->converged();
        rates_at = [&](double t) { return table->at(t); };
    }

    Rhs rhs = [&](double t, const State& y) {
        QubitState s{y[0], y[1], y[2]};
        const auto d = bloch_rhs(s, rates_at(t), bath);
        return State{d.d_rho_ee, d.d_rho_eg_re, d.d_rho_eg_im};
    };

    traj.samples.push_back({0.0, initial, false,
                            controls.record_rates
                                ? std::optional<RateSet>(rates_at(0.0))
                                : std::nullopt});
    check_positivity(traj, 0.0, initial);

    State y{initial.rho_ee, initial.rho_eg_re, initial.rho_eg_im};
    auto on_sample = [&](double t, const State& ys) {
        QubitState s{ys[0], ys[1], ys[2]};
        traj.samples.push_back({t, s, false,
                                controls.record_rates
                                    ? std::optional<RateSet>(rates_at(t))
                                    : std::nullopt});
        check_positivity(traj, t, s);
    };
    integrate_segment(rhs, y, 0.0, horizon, controls.ode, times, on_sample);
    return traj;
}

Trajectory evolve_measured(const QubitState& initial, const SpectralModel& model,
                           const BathParams& bath, const Protocol& protocol,
                           double sample_dt) {
    if (protocol.n_meas == 0)
        return evolve_free(initial, model, bath, protocol.tau, protocol.controls);
    if (!(protocol.tau > 0.0))
        throw std::domain_error("evolve_measured: tau must be positive");
    if (protocol.n_meas < 0)
        throw std::domain_error("evolve_measured: n_meas must be non-negative");

    const auto& controls = protocol.controls;
    const double tau = protocol.tau;
    const int n = protocol.n_meas;
    const double table_span = protocol.continuous_clock ? tau * n : tau;

    RateTable table(model, bath, table_span, controls.table, controls.quadrature);

    Trajectory traj;
    traj.rates_converged = table.converged();
    traj.samples.push_back({0.0, initial, false, std::nullopt});
    check_positivity(traj, 0.0, initial);

    std::vector<double> local_times;
    if (sample_dt > 0.0) {
        for (double t = sample_dt; t < tau - 1e-12; t += sample_dt)
            local_times.push_back(t);
    }

    QubitState state = initial;
    for (int k = 0; k < n; ++k) {
        const double t_base = tau * k;
        Rhs rhs = [&](double t_local, const State& y) {
            const double t_coeff =
                protocol.continuous_clock ? t_base + t_local : t_local;
            QubitState s{y[0], y[1], y[2]};
            const auto d = bloch_rhs(s, table.at(t_coeff), bath);
            return State{d.d_rho_ee, d.d_rho_eg_re, d.d_rho_eg_im};
        };
        auto on_sample = [&](double t_local, const State& ys) {
            QubitState s{ys[0], ys[1], ys[2]};
            traj.samples.push_back({t_base + t_local, s, false, std::nullopt});
            check_positivity(traj, t_base + t_local, s);
        };
        State y{state.rho_ee, state.rho_eg_re, state.rho_eg_im};
        y = integrate_segment(rhs, y, 0.0, tau, controls.ode, local_times, on_sample);
        state = apply_measurement({y[0], y[1], y[2]});
        traj.samples.push_back({t_base + tau, state, true, std::nullopt});
        check_positivity(traj, t_base + tau, state);
    }
    return traj;
}

double adiabatic_population(double rho_ee0, const CumulativeJ& j,
                            const BathParams& bath) {
    (void)bath;
    if (!(rho_ee0 > 0.0 && rho_ee0 < 1.0))
        throw std::domain_error("adiabatic_population: rho_ee0 must be inside (0, 1)");
    // e^{beta_S(0) omega_a} = 1/rho_ee0 - 1 from the Fermi function
    return rho_ee0 + (1.0 - rho_ee0) * j.j_plus() - rho_ee0 * j.j_minus();
}

Envelope measured_envelope(double rho_ee0, double tau, const CumulativeJ& j,
                           double t) {
    if (!(tau > 0.0)) throw std::domain_error("measured_envelope: tau must be positive");
    const double jt = j.j_total();
    if (!(jt > 0.0))
        throw std::domain_error("measured_envelope: J(tau) must be positive");
    Envelope env;
    env.effective_rate = jt / tau;
    env.steady = j.j_plus() / jt;
    env.value = (rho_ee0 - env.steady) * std::exp(-env.effective_rate * t) + env.steady;
    return env;
}

double markovian_population(double rho_ee0, const SpectralModel& model,
                            const BathParams& bath, double t) {
    if (t < 0.0) throw std::domain_error("markovian_population: t must be non-negative");
    const double gamma0 = kernels::golden_rule_rate(model, bath);
    const double rho_b = 1.0 / (std::exp(bath.beta * bath.omega_a) + 1.0);
    return (rho_ee0 - rho_b) * std::exp(-gamma0 * t) + rho_b;
}

EffectiveTemperature effective_temperature(double rho_ee, const BathParams& bath) {
    if (rho_ee < 0.0 || rho_ee > 1.0)
        throw std::domain_error("effective_temperature: rho_ee must lie in [0, 1]");
    EffectiveTemperature out;
    if (rho_ee == 0.0) {
        out.beta_s = std::numeric_limits<double>::infinity();
        out.flag = TemperatureFlag::infinite_beta;
        return out;
    }
    if (rho_ee == 1.0) {
        out.beta_s = -std::numeric_limits<double>::infinity();
        out.flag = TemperatureFlag::undefined;
        return out;
    }
    out.beta_s = std::log(1.0 / rho_ee - 1.0) / bath.omega_a;
    if (rho_ee == 0.5) out.flag = TemperatureFlag::zero_beta;
    else if (rho_ee > 0.5) out.flag = TemperatureFlag::inverted;
    return out;
}

} // namespace zenocool::dynamics

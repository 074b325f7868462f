// dynamics.hpp — generalized Bloch propagation with cached TCL2 coefficients
// and periodic nondemolition projections

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "zenocool/kernels.hpp"

namespace zenocool::dynamics {

using kernels::CumulativeJ;
using kernels::RateSet;
using quad::QuadratureSpec;
using spectrum::BathParams;
using spectrum::SpectralModel;

// Trace-normalized Bloch state: rho_gg = 1 - rho_ee is implicit and
// rho_ge = conj(rho_eg) by representation.
struct QubitState {
    double rho_ee{0.0};
    double rho_eg_re{0.0};
    double rho_eg_im{0.0};
};

struct OdeControls {
    double rel_tol{1e-8};
    double abs_tol{1e-12};
    bool fixed_step{false}; // fixed-step RK4 for deterministic golden files
    double fixed_dt{1e-3};
};

struct RateTableControls {
    double grid_dt{0.01};
    // Beyond this time the coefficients are taken at their t->infinity limits;
    // raise it to keep full time dependence over longer horizons.
    double horizon{100.0};
    bool direct_quadrature{false}; // debug: no caching, quadrature per RHS call
};

struct EvolutionControls {
    OdeControls ode;
    RateTableControls table;
    QuadratureSpec quadrature;
    bool record_rates{false};
};

struct Protocol {
    double tau{1.0};
    int n_meas{0}; // 0 = free evolution
    // each inter-measurement segment restarts the coefficient clock at zero;
    // set continuous_clock to keep one global clock across measurements
    bool continuous_clock{false};
    EvolutionControls controls;
};

struct TrajectorySample {
    double t{0.0};
    QubitState state;
    bool is_measurement{false};
    std::optional<RateSet> rates;
};

struct PositivityDiagnostic {
    double worst{0.0}; // max of |rho_eg|^2 - rho_ee rho_gg over samples
    double t_worst{0.0};
    bool violated{false}; // worst > 1e-9; never clamped
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    PositivityDiagnostic positivity;
    bool rates_converged{true};
};

// Coefficients precomputed on a uniform grid and cubic-interpolated, with the
// Markovian limits past the table horizon.
class RateTable {
public:
    RateTable(const SpectralModel& model, const BathParams& bath, double t_max,
              const RateTableControls& controls, const QuadratureSpec& spec);

    RateSet at(double t) const;
    double table_end() const { return t_end_; }
    bool converged() const { return converged_; }

private:
    double dt_{0.01};
    double t_end_{0.0};
    bool has_tail_{false};
    bool converged_{true};
    std::vector<std::array<double, 8>> grid_;
    std::array<double, 8> tail_{};
};

struct StateDerivative {
    double d_rho_ee{0.0};
    double d_rho_eg_re{0.0};
    double d_rho_eg_im{0.0};
};

// Full non-secular right-hand side, using the summed Gamma_± and Delta_±.
StateDerivative bloch_rhs(const QubitState& state, const RateSet& rates,
                          const BathParams& bath);

// Nonselective projective sigma_z measurement: populations kept, coherences
// erased exactly.
QubitState apply_measurement(const QubitState& state);

Trajectory evolve_free(const QubitState& initial, const SpectralModel& model,
                       const BathParams& bath, double horizon,
                       const EvolutionControls& controls = {},
                       std::span<const double> sample_times = {});

// n_meas projections separated by tau; records the post-measurement state at
// every t = k tau. sample_dt > 0 adds samples inside each segment.
Trajectory evolve_measured(const QubitState& initial, const SpectralModel& model,
                           const BathParams& bath, const Protocol& protocol,
                           double sample_dt = 0.0);

// Short-time adiabatic estimate rho(0) [1 + e^{beta_S(0) omega_a} J_+ - J_-]
// with beta_S(0) implied by rho_ee0. Requires rho_ee0 in (0, 1).
double adiabatic_population(double rho_ee0, const CumulativeJ& j,
                            const BathParams& bath);

struct Envelope {
    double value{0.0};
    double effective_rate{0.0}; // J(tau)/tau
    double steady{0.0};         // J_+(tau)/J(tau)
};

// Exponential quasisteady envelope under periodic measurements.
Envelope measured_envelope(double rho_ee0, double tau, const CumulativeJ& j,
                           double t);

// Markovian-limit closed form with the golden-rule rate.
double markovian_population(double rho_ee0, const SpectralModel& model,
                            const BathParams& bath, double t);

enum class TemperatureFlag {
    ok,            // rho_ee in (0, 1/2): positive beta_S
    inverted,      // rho_ee in (1/2, 1): negative beta_S
    zero_beta,     // rho_ee = 1/2
    infinite_beta, // rho_ee = 0
    undefined,     // rho_ee = 1
};

struct EffectiveTemperature {
    double beta_s{0.0};
    TemperatureFlag flag{TemperatureFlag::ok};
};

// beta_S = ln(1/rho_ee - 1)/omega_a
EffectiveTemperature effective_temperature(double rho_ee, const BathParams& bath);

} // namespace zenocool::dynamics

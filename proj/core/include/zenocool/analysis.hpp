// analysis.hpp — measurement-modified factor, cooling domain and criterion,
// optimal measurement spacing, Zeno classification

#pragma once

#include <limits>
#include <vector>

#include "zenocool/kernels.hpp"

namespace zenocool::analysis {

using quad::Estimate;
using quad::QuadratureSpec;
using spectrum::BathParams;
using spectrum::SpectralModel;

// M(tau) = [e^{beta omega_a} J_+ - J_-]/J; negative means the quasisteady
// population sits below the free thermal value rho_ee^B.
Estimate m_factor_exact(const SpectralModel& model, const BathParams& bath,
                        double tau, const QuadratureSpec& spec = {});

// Three-term low-temperature approximation: the near-resonant Taylor term,
// the oscillatory counter-rotating integral over [0, 2 omega_a] and the
// high-frequency tail contributions.
Estimate m_factor_approx(const SpectralModel& model, const BathParams& bath,
                         double tau, const QuadratureSpec& spec = {});

struct SmoothedM {
    double value{std::numeric_limits<double>::quiet_NaN()};
    bool valid{false}; // requires pi tau > 2/omega_a and a positive denominator
};

// Non-oscillatory large-tau envelope of the approximation.
SmoothedM m_factor_smoothed(const SpectralModel& model, const BathParams& bath,
                            double tau);

enum class FilterMode {
    automatic, // raw below tau = 2 pi / omega_a, time-averaged above
    raw,       // the filter at finite tau, certificates on F itself
    smoothed,  // sinc^2 replaced by its mean 1/2; certificates on the
               // polynomial-weighted form c_r (w+wa)^2 + c_cr (w-wa)^2
};

struct Lobe {
    double omega1{0.0};
    double omega2{0.0};
};

struct CoolingDomain {
    bool empty{true};
    double omega1{0.0};
    double omega2{0.0};
    double f_min{0.0};   // most negative filter value found
    double omega_min{0.0};
    FilterMode used{FilterMode::raw};
    std::vector<Lobe> lobes; // all negative intervals, when requested
};

// Negative-frequency window of the total filter F(beta, beta, tau, w); the
// reported interval is the one containing the global minimum over
// (0, omega_max]. Model-independent.
CoolingDomain cooling_domain(const BathParams& bath, double tau,
                             FilterMode mode = FilterMode::automatic,
                             double omega_max = 6.0, bool all_lobes = false);

// The function whose roots certify the returned domain boundaries.
double domain_filter(const BathParams& bath, double tau, double omega,
                     FilterMode mode);

struct CrZero {
    double omega{0.0};
    bool in_band{false}; // positive only for tau < 2 pi / omega_a
};

// Frequency w = 2 pi / tau - omega_a at which the counter-rotating filter
// vanishes.
CrZero cr_zero_curve(double tau, const BathParams& bath);

// omega_2 ~ omega_a [1 + 4 beta omega_a exp(-beta omega_a)]
double w2_estimate(const BathParams& bath);

struct W2Peak {
    double beta{0.0};
    double omega2{0.0};
};

// The estimate is maximal at beta omega_a = 1, where it reaches
// omega_a (1 + 4/e).
W2Peak w2_estimate_peak(double omega_a = 1.0);

struct CoolingCriterion {
    double lhs{0.0}; // G0'(omega_a)/G0(omega_a)
    double rhs{0.0}; // beta/2
    bool pass{false};
    bool defined{true}; // false when G0(omega_a) = 0
    // super-Ohmic only: largest inverse temperature still satisfying the
    // criterion, beta_max = 2 s / omega_a
    double beta_max{std::numeric_limits<double>::quiet_NaN()};
};

CoolingCriterion cooling_criterion(const SpectralModel& model, const BathParams& bath);

struct TauOptimum {
    double tau_min{0.0};
    double m_min{0.0};
    bool cooling{false}; // m_min < 0
    bool converged{true};
};

// Deterministic coarse scan (at least 20 points per 2 pi/omega_a period)
// followed by golden-section refinement; ties go to the smaller tau.
TauOptimum optimize_tau(const SpectralModel& model, const BathParams& bath,
                        double tau_lo, double tau_hi,
                        const QuadratureSpec& spec = {}, double grid_step = 0.0);

enum class ZenoClass { qze, qaze, boundary };

struct ZenoClassification {
    ZenoClass cls{ZenoClass::boundary};
    double effective_rate{0.0}; // J(tau)/tau
    double golden_rate{0.0};    // Gamma_0
    double ratio{0.0};
    bool converged{true};
};

// QAZE when J(tau)/tau exceeds the golden-rule rate by more than 0.1%
// relative, QZE when below by the same margin.
ZenoClassification classify_zeno(const SpectralModel& model, const BathParams& bath,
                                 double tau, const QuadratureSpec& spec = {});

struct CoolingReport {
    std::vector<double> tau_grid;
    std::vector<double> m_exact;
    std::vector<double> m_exact_error;
    std::vector<double> m_approx;
    std::vector<double> m_smoothed; // NaN where the smoothed form is invalid
    std::vector<int> point_flags;   // nonzero where a quadrature did not converge
    double tau_min{0.0};
    double m_min{0.0};
    double domain_tau{0.0};
    CoolingDomain domain;
    CoolingCriterion criterion;
    ZenoClassification zeno;
    bool any_flag{false};
};

CoolingReport make_cooling_report(const SpectralModel& model, const BathParams& bath,
                                  double tau_lo, double tau_hi, double tau_step,
                                  double domain_tau, const QuadratureSpec& spec = {});

} // namespace zenocool::analysis

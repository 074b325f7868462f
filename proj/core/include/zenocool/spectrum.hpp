// spectrum.hpp — bath spectral density models, thermal occupation, tail integrals

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace zenocool::spectrum {

enum class SdfKind { modified_lorentzian, super_ohmic, tabulated };

struct SdfDerivatives {
    double first{0.0};
    double second{0.0};
    bool one_sided{false}; // evaluated against a cutoff discontinuity
};

struct TailIntegral {
    double value{0.0};
    double truncation_bound{0.0}; // analytic bound on the discarded far tail
};

struct LorentzianParams {
    double alpha{0.0};
    double lambda{0.0};
    double omega0{0.0};
};

struct SuperOhmicParams {
    double alpha{0.0};
    double s{0.0};
    double omega_c{0.0};
};

// Everything is expressed in units of the system transition frequency omega_a
// (frequencies, times, inverse temperatures alike).
class SpectralModel {
public:
    static SpectralModel modified_lorentzian(double alpha, double lambda, double omega0);
    static SpectralModel super_ohmic(double alpha, double s, double omega_c);
    // Strictly increasing grid, non-negative samples; the last grid point is
    // the cutoff beyond which the density is identically zero.
    static SpectralModel tabulated(std::vector<double> grid, std::vector<double> density);
    // Two-column text file (frequency, density), '#' comments, whitespace separated.
    static SpectralModel tabulated_from_file(const std::string& path);

    SdfKind kind() const { return kind_; }

    double value(double omega) const;            // G0(omega), exactly 0 beyond cutoffs
    double value_over_omega(double omega) const; // G0(omega)/omega, continuous at 0
    SdfDerivatives derivatives(double omega) const;
    TailIntegral tail_integral(double omega_lo) const; // int_{lo}^{cutoff} G0/w^2

    // Upper end of the numerical support: the hard cutoff for super-Ohmic and
    // tabulated models, the documented truncation point omega0 + 50*Lambda for
    // the Lorentzian.
    double support_end() const;
    bool has_hard_cutoff() const;

    // characteristic interior frequencies worth seeding integration panels at
    std::vector<double> panel_hints() const;

    SpectralModel scaled(double factor) const; // G0 -> factor * G0

    const LorentzianParams* lorentzian() const;
    const SuperOhmicParams* super_ohmic_params() const;

private:
    struct Tabulated {
        std::vector<double> x;
        std::vector<double> y;
        std::vector<double> slope; // monotone (Fritsch-Carlson) Hermite slopes
        double eval(double omega) const;
    };

    SpectralModel() = default;

    SdfKind kind_{SdfKind::modified_lorentzian};
    std::variant<LorentzianParams, SuperOhmicParams, Tabulated> data_;
};

struct BathParams {
    double beta{1.0};    // inverse temperature, units 1/omega_a (k_B = 1)
    double omega_a{1.0}; // system transition frequency, kept explicit
};

// n_T = 1/(e^{beta w} - 1); throws std::domain_error at w = 0 where the
// 1/(beta w) divergence must be absorbed into the integrand instead.
double thermal_occupation(double beta, double omega);

// 2 n_T + 1
double thermal_weight(double beta, double omega);

// [2 n_T(w) + 1] G0(w); finite at w -> 0 whenever G0 vanishes at least linearly
double thermal_sdf(const SpectralModel& model, double beta, double omega);

} // namespace zenocool::spectrum

// spectrum.cpp — parametric and tabulated spectral densities

#include "zenocool/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "zenocool/quadrature.hpp"

namespace zenocool::spectrum {
namespace {

constexpr double kLorentzianTailWidths = 50.0; // truncate at omega0 + 50*Lambda

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Fritsch-Carlson monotone cubic slopes on a strictly increasing grid
std::vector<double> monotone_slopes(const std::vector<double>& x,
                                    const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n == 1) return m;
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        d[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        m[0] = m[1] = d[0];
        return m;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double m0 = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m0 * d0 <= 0.0) m0 = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(m0) > 3.0 * std::abs(d0)) m0 = 3.0 * d0;
        return m0;
    };
    m[0] = endpoint(h[0], h[1], d[0], d[1]);
    m[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    return m;
}

} // namespace

double SpectralModel::Tabulated::eval(double omega) const {
    if (omega < x.front() || omega > x.back()) return 0.0;
    auto it = std::upper_bound(x.begin(), x.end(), omega);
    std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i + 1 >= x.size()) i = x.size() - 2;
    const double h = x[i + 1] - x[i];
    const double t = (omega - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    const double v = h00 * y[i] + h10 * h * slope[i] + h01 * y[i + 1] + h11 * h * slope[i + 1];
    return std::max(v, 0.0);
}

SpectralModel SpectralModel::modified_lorentzian(double alpha, double lambda, double omega0) {
    require(alpha > 0.0, "modified_lorentzian: alpha must be positive");
    require(lambda > 0.0, "modified_lorentzian: lambda must be positive");
    require(omega0 > 0.0, "modified_lorentzian: omega0 must be positive");
    SpectralModel m;
    m.kind_ = SdfKind::modified_lorentzian;
    m.data_ = LorentzianParams{alpha, lambda, omega0};
    return m;
}

SpectralModel SpectralModel::super_ohmic(double alpha, double s, double omega_c) {
    require(alpha > 0.0, "super_ohmic: alpha must be positive");
    require(s >= 0.0, "super_ohmic: exponent s must be non-negative");
    require(omega_c > 0.0, "super_ohmic: omega_c must be positive");
    SpectralModel m;
    m.kind_ = SdfKind::super_ohmic;
    m.data_ = SuperOhmicParams{alpha, s, omega_c};
    return m;
}

SpectralModel SpectralModel::tabulated(std::vector<double> grid, std::vector<double> density) {
    require(grid.size() >= 4, "tabulated: need at least four grid points");
    require(grid.size() == density.size(), "tabulated: grid/density size mismatch");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        require(grid[i] < grid[i + 1], "tabulated: grid must be strictly increasing");
    require(grid.front() >= 0.0, "tabulated: negative frequencies not allowed");
    for (double v : density)
        require(v >= 0.0, "tabulated: density samples must be non-negative");

    SpectralModel m;
    m.kind_ = SdfKind::tabulated;
    Tabulated t;
    t.x = std::move(grid);
    t.y = std::move(density);
    t.slope = monotone_slopes(t.x, t.y);
    m.data_ = std::move(t);
    return m;
}

SpectralModel SpectralModel::tabulated_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("tabulated_from_file: cannot open " + path);
    std::vector<double> x, y;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double a, b;
        if (ss >> a >> b) {
            x.push_back(a);
            y.push_back(b);
        }
    }
    return tabulated(std::move(x), std::move(y));
}

double SpectralModel::value(double omega) const {
    if (omega < 0.0) throw std::domain_error("sdf value: omega must be non-negative");
    switch (kind_) {
    case SdfKind::modified_lorentzian: {
        const auto& p = std::get<LorentzianParams>(data_);
        const double d = omega - p.omega0;
        return p.alpha * omega * p.lambda * p.lambda / (p.lambda * p.lambda + d * d);
    }
    case SdfKind::super_ohmic: {
        const auto& p = std::get<SuperOhmicParams>(data_);
        if (omega > p.omega_c) return 0.0;
        return p.alpha * std::pow(p.omega_c, 1.0 - p.s) * std::pow(omega, p.s);
    }
    case SdfKind::tabulated:
        return std::get<Tabulated>(data_).eval(omega);
    }
    return 0.0;
}

double SpectralModel::value_over_omega(double omega) const {
    if (omega < 0.0) throw std::domain_error("sdf value: omega must be non-negative");
    switch (kind_) {
    case SdfKind::modified_lorentzian: {
        const auto& p = std::get<LorentzianParams>(data_);
        const double d = omega - p.omega0;
        return p.alpha * p.lambda * p.lambda / (p.lambda * p.lambda + d * d);
    }
    case SdfKind::super_ohmic: {
        const auto& p = std::get<SuperOhmicParams>(data_);
        if (omega > p.omega_c) return 0.0;
        return p.alpha * std::pow(p.omega_c, 1.0 - p.s) * std::pow(omega, p.s - 1.0);
    }
    case SdfKind::tabulated: {
        if (omega == 0.0) return 0.0; // grid support starts above zero or G0(0) = 0
        return std::get<Tabulated>(data_).eval(omega) / omega;
    }
    }
    return 0.0;
}

SdfDerivatives SpectralModel::derivatives(double omega) const {
    if (omega <= 0.0) throw std::domain_error("sdf derivatives: omega must be positive");
    switch (kind_) {
    case SdfKind::modified_lorentzian: {
        const auto& p = std::get<LorentzianParams>(data_);
        const double l2 = p.lambda * p.lambda;
        const double d = omega - p.omega0;
        const double den = l2 + d * d;
        // G0' = alpha L^2 N / den^2 with N = L^2 + w0^2 - w^2;
        // G0'' = alpha L^2 (N' den - 2 N den') / den^3, den' = 2 (w - w0)
        const double num1 = l2 + p.omega0 * p.omega0 - omega * omega;
        const double g1 = p.alpha * l2 * num1 / (den * den);
        const double g2 = p.alpha * l2 * (-2.0 * omega * den - 4.0 * num1 * d) / (den * den * den);
        return {g1, g2, false};
    }
    case SdfKind::super_ohmic: {
        const auto& p = std::get<SuperOhmicParams>(data_);
        const bool at_cut = omega >= p.omega_c;
        const double w = at_cut ? p.omega_c : omega; // left limit at the cutoff
        const double pref = p.alpha * std::pow(p.omega_c, 1.0 - p.s);
        const double g1 = p.s * pref * std::pow(w, p.s - 1.0);
        const double g2 = p.s * (p.s - 1.0) * pref * std::pow(w, p.s - 2.0);
        return {g1, g2, at_cut};
    }
    case SdfKind::tabulated: {
        const auto& t = std::get<Tabulated>(data_);
        const double h = 1e-4;
        const double lo = t.x.front(), hi = t.x.back();
        if (omega - h < lo || omega + h > hi) {
            // one-sided differences against the support edge
            const double sgn = (omega - h < lo) ? 1.0 : -1.0;
            const double f0 = t.eval(omega);
            const double f1 = t.eval(omega + sgn * h);
            const double f2 = t.eval(omega + 2.0 * sgn * h);
            const double g1 = sgn * (-1.5 * f0 + 2.0 * f1 - 0.5 * f2) / h;
            const double g2 = (f0 - 2.0 * f1 + f2) / (h * h);
            return {g1, g2, true};
        }
        const double fm = t.eval(omega - h);
        const double f0 = t.eval(omega);
        const double fp = t.eval(omega + h);
        return {(fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h), false};
    }
    }
    return {};
}

double SpectralModel::support_end() const {
    switch (kind_) {
    case SdfKind::modified_lorentzian: {
        const auto& p = std::get<LorentzianParams>(data_);
        return p.omega0 + kLorentzianTailWidths * p.lambda;
    }
    case SdfKind::super_ohmic:
        return std::get<SuperOhmicParams>(data_).omega_c;
    case SdfKind::tabulated:
        return std::get<Tabulated>(data_).x.back();
    }
    return 0.0;
}

bool SpectralModel::has_hard_cutoff() const {
    return kind_ != SdfKind::modified_lorentzian;
}

std::vector<double> SpectralModel::panel_hints() const {
    switch (kind_) {
    case SdfKind::modified_lorentzian: {
        const auto& p = std::get<LorentzianParams>(data_);
        return {p.omega0 - p.lambda, p.omega0, p.omega0 + p.lambda,
                p.omega0 + 10.0 * p.lambda};
    }
    case SdfKind::super_ohmic:
        return {0.5 * std::get<SuperOhmicParams>(data_).omega_c};
    case SdfKind::tabulated: {
        const auto& t = std::get<Tabulated>(data_);
        std::vector<double> hints;
        const std::size_t stride = std::max<std::size_t>(1, t.x.size() / 32);
        for (std::size_t i = stride; i + 1 < t.x.size(); i += stride)
            hints.push_back(t.x[i]);
        return hints;
    }
    }
    return {};
}

SpectralModel SpectralModel::scaled(double factor) const {
    require(factor > 0.0, "scaled: factor must be positive");
    SpectralModel m = *this;
    switch (kind_) {
    case SdfKind::modified_lorentzian:
        std::get<LorentzianParams>(m.data_).alpha *= factor;
        break;
    case SdfKind::super_ohmic:
        std::get<SuperOhmicParams>(m.data_).alpha *= factor;
        break;
    case SdfKind::tabulated: {
        auto& t = std::get<Tabulated>(m.data_);
        for (auto& v : t.y) v *= factor;
        for (auto& v : t.slope) v *= factor;
        break;
    }
    }
    return m;
}

const LorentzianParams* SpectralModel::lorentzian() const {
    return std::get_if<LorentzianParams>(&data_);
}

const SuperOhmicParams* SpectralModel::super_ohmic_params() const {
    return std::get_if<SuperOhmicParams>(&data_);
}

TailIntegral SpectralModel::tail_integral(double omega_lo) const {
    if (omega_lo <= 0.0) throw std::domain_error("tail_integral: omega_lo must be positive");
    switch (kind_) {
    case SdfKind::super_ohmic: {
        const auto& p = std::get<SuperOhmicParams>(data_);
        if (omega_lo >= p.omega_c) return {0.0, 0.0};
        const double pref = p.alpha * std::pow(p.omega_c, 1.0 - p.s);
        double v;
        if (std::abs(p.s - 1.0) < 1e-12) {
            v = pref * std::log(p.omega_c / omega_lo);
        } else {
            v = pref * (std::pow(p.omega_c, p.s - 1.0) - std::pow(omega_lo, p.s - 1.0)) /
                (p.s - 1.0);
        }
        return {v, 0.0};
    }
    case SdfKind::modified_lorentzian: {
        const auto& p = std::get<LorentzianParams>(data_);
        const double w_end = support_end();
        if (omega_lo >= w_end) {
            // entire request lies in the truncated tail; bound it and return 0
            const double safety = 1.0 / (1.0 - p.omega0 / omega_lo);
            const double bound = p.alpha * p.lambda * p.lambda * safety * safety /
                                 (2.0 * omega_lo * omega_lo);
            return {0.0, bound};
        }
        auto f = [this](double w) { return value_over_omega(w) / w; };
        auto hints = panel_hints();
        auto r = quad::integrate(f, omega_lo, w_end, quad::QuadratureSpec{1e-10, 1e-15, 1 << 14},
                                 hints);
        // tail beyond w_end: G0 <= alpha L^2 / (w (1 - w0/w_end)^2), so
        // int G0/w^2 <= alpha L^2 / (2 w_end^2 (1 - w0/w_end)^2)
        const double safety = 1.0 / (1.0 - p.omega0 / w_end);
        const double bound = p.alpha * p.lambda * p.lambda * safety * safety /
                             (2.0 * w_end * w_end);
        return {r.value, bound};
    }
    case SdfKind::tabulated: {
        const auto& t = std::get<Tabulated>(data_);
        if (omega_lo >= t.x.back()) return {0.0, 0.0};
        auto f = [this](double w) { return value(w) / (w * w); };
        auto hints = panel_hints();
        auto r = quad::integrate(f, std::max(omega_lo, t.x.front()), t.x.back(),
                                 quad::QuadratureSpec{1e-10, 1e-15, 1 << 14}, hints);
        return {r.value, 0.0};
    }
    }
    return {};
}

double thermal_occupation(double beta, double omega) {
    if (beta <= 0.0) throw std::domain_error("thermal_occupation: beta must be positive");
    if (omega == 0.0)
        throw std::domain_error("thermal_occupation diverges at omega = 0; "
                                "fold 1/(beta omega) into the integrand");
    if (omega < 0.0) throw std::domain_error("thermal_occupation: omega must be positive");
    return 1.0 / std::expm1(beta * omega);
}

double thermal_weight(double beta, double omega) {
    return 2.0 * thermal_occupation(beta, omega) + 1.0;
}

double thermal_sdf(const SpectralModel& model, double beta, double omega) {
    if (beta <= 0.0) throw std::domain_error("thermal_sdf: beta must be positive");
    if (omega < 0.0) throw std::domain_error("thermal_sdf: omega must be non-negative");
    if (omega == 0.0) return (2.0 / beta) * model.value_over_omega(0.0);
    // 2 n_T G0 + G0 assembled jointly: (G0/w) * 2w/expm1(beta w) stays finite near 0
    const double joint = model.value_over_omega(omega) * (2.0 * omega / std::expm1(beta * omega));
    return joint + model.value(omega);
}

} // namespace zenocool::spectrum

// quadrature.cpp — Gauss-Kronrod 7/15 panels with deterministic adaptive bisection

#include "zenocool/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace zenocool::quad {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
// (QUADPACK qk15 constants). Odd indices are the embedded Gauss nodes.
constexpr double kAbscissae[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0,
};
constexpr double kKronrodW[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278,
};
constexpr double kGaussW[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694,
};

struct Panel {
    double a{0.0};
    double b{0.0};
    std::array<double, kMaxComponents> val{};
    std::array<double, kMaxComponents> err{};
    double badness{0.0};
};

// max-heap: largest badness on top, ties resolved toward the smaller left edge
struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.badness != y.badness) return x.badness < y.badness;
        return x.a > y.a;
    }
};

void eval_panel(const VectorIntegrand& f, int n, Panel& p) {
    const double c = 0.5 * (p.a + p.b);
    const double h = 0.5 * (p.b - p.a);
    std::array<double, kMaxComponents> acc_k{};
    std::array<double, kMaxComponents> acc_g{};
    std::array<double, kMaxComponents> buf{};
    bool finite = true;

    for (int i = 0; i < 8; ++i) {
        const int sides = (i == 7) ? 1 : 2;
        for (int side = 0; side < sides; ++side) {
            const double x = (side == 0) ? c + h * kAbscissae[i] : c - h * kAbscissae[i];
            std::fill_n(buf.begin(), n, 0.0);
            f(x, std::span<double>(buf.data(), static_cast<std::size_t>(n)));
            for (int k = 0; k < n; ++k) {
                if (!std::isfinite(buf[k])) finite = false;
                acc_k[k] += kKronrodW[i] * buf[k];
                if (i % 2 == 1) acc_g[k] += kGaussW[i / 2] * buf[k];
            }
        }
    }
    for (int k = 0; k < n; ++k) {
        p.val[k] = h * acc_k[k];
        p.err[k] = finite ? std::abs(h * (acc_k[k] - acc_g[k]))
                          : std::numeric_limits<double>::infinity();
    }
}

double panel_badness(const Panel& p, int n, std::span<const double> scale) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) worst = std::max(worst, p.err[k] / scale[k]);
    return worst;
}

} // namespace

VectorEstimate integrate_vector(const VectorIntegrand& f, int n_components,
                                std::span<const double> breakpoints,
                                const QuadratureSpec& spec) {
    if (n_components < 1 || n_components > kMaxComponents)
        throw std::invalid_argument("integrate_vector: bad component count");
    if (breakpoints.size() < 2)
        throw std::invalid_argument("integrate_vector: need at least two breakpoints");

    const int n = n_components;
    std::vector<Panel> heap;
    heap.reserve(breakpoints.size());
    std::vector<Panel> retired; // too narrow to split further

    std::array<double, kMaxComponents> total{};
    std::array<double, kMaxComponents> toterr{};

    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1])) continue;
        Panel p{breakpoints[i], breakpoints[i + 1]};
        eval_panel(f, n, p);
        for (int k = 0; k < n; ++k) {
            total[k] += p.val[k];
            toterr[k] += p.err[k];
        }
        heap.push_back(p);
    }
    if (heap.empty()) {
        VectorEstimate out;
        out.n = n;
        return out;
    }

    // normalization for picking the worst panel, frozen after seeding
    std::array<double, kMaxComponents> scale{};
    for (int k = 0; k < n; ++k)
        scale[k] = std::max(spec.abs_tol, std::max(spec.rel_tol * std::abs(total[k]),
                                                   std::numeric_limits<double>::min()));
    for (auto& p : heap) p.badness = panel_badness(p, n, scale);
    std::make_heap(heap.begin(), heap.end(), PanelOrder{});

    auto tolerable = [&]() {
        for (int k = 0; k < n; ++k) {
            const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total[k]));
            if (!(toterr[k] <= tol)) return false;
        }
        return true;
    };

    while (!tolerable() && !heap.empty() &&
           static_cast<int>(heap.size() + retired.size()) < spec.max_panels) {
        std::pop_heap(heap.begin(), heap.end(), PanelOrder{});
        Panel worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        const double width_floor =
            64.0 * std::numeric_limits<double>::epsilon() *
            std::max({std::abs(worst.a), std::abs(worst.b), 1.0});
        if (!(worst.b - worst.a > width_floor) || !(mid > worst.a) || !(mid < worst.b)) {
            retired.push_back(worst);
            continue;
        }

        Panel left{worst.a, mid};
        Panel right{mid, worst.b};
        eval_panel(f, n, left);
        eval_panel(f, n, right);
        for (int k = 0; k < n; ++k) {
            total[k] += left.val[k] + right.val[k] - worst.val[k];
            toterr[k] += left.err[k] + right.err[k] - worst.err[k];
        }
        left.badness = panel_badness(left, n, scale);
        right.badness = panel_badness(right, n, scale);
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), PanelOrder{});
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), PanelOrder{});
    }

    // final deterministic accumulation in left-to-right order
    std::vector<const Panel*> all;
    all.reserve(heap.size() + retired.size());
    for (const auto& p : heap) all.push_back(&p);
    for (const auto& p : retired) all.push_back(&p);
    std::sort(all.begin(), all.end(),
              [](const Panel* x, const Panel* y) { return x->a < y->a; });

    VectorEstimate out;
    out.n = n;
    for (const Panel* p : all) {
        for (int k = 0; k < n; ++k) {
            out.value[k] += p->val[k];
            out.error[k] += p->err[k];
        }
    }
    out.converged = true;
    for (int k = 0; k < n; ++k) {
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value[k]));
        if (!(out.error[k] <= tol)) out.converged = false;
    }
    return out;
}

Estimate integrate(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec,
                   std::span<const double> interior_breaks) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double x : interior_breaks)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    auto vf = [&f](double w, std::span<double> out) { out[0] = f(w); };
    auto r = integrate_vector(vf, 1, pts, spec);
    return {r.value[0], r.error[0], r.converged};
}

std::vector<double> oscillatory_breakpoints(double a, double b, double center,
                                            double scale,
                                            std::span<const double> extra) {
    std::vector<double> pts{a, b};
    for (double x : extra)
        if (x > a && x < b) pts.push_back(x);

    if (scale > 0.0) {
        const double pi = 3.14159265358979323846;
        const double step = pi / scale;
        // cap the seeded zero count; the adaptive stage picks up any slack
        constexpr double kMaxZeros = 60000.0;
        const double span = b - a;
        double eff_step = step;
        if (span / step > kMaxZeros) eff_step = span / kMaxZeros;
        const double k_lo = std::ceil((a - center) / eff_step);
        const double k_hi = std::floor((b - center) / eff_step);
        for (double k = k_lo; k <= k_hi; k += 1.0) {
            const double x = center + k * eff_step;
            if (x > a && x < b) pts.push_back(x);
        }
    }

    std::sort(pts.begin(), pts.end());
    const double tol = 1e-13 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    std::vector<double> dedup;
    dedup.reserve(pts.size());
    for (double x : pts) {
        if (dedup.empty() || x - dedup.back() > tol) dedup.push_back(x);
    }
    if (dedup.size() < 2) dedup = {a, b};
    return dedup;
}

Estimate oscillatory_integral(const std::function<double(double)>& f, double a,
                              double b, double center, double scale,
                              const QuadratureSpec& spec,
                              std::span<const double> extra) {
    auto pts = oscillatory_breakpoints(a, b, center, scale, extra);
    auto vf = [&f](double w, std::span<double> out) { out[0] = f(w); };
    auto r = integrate_vector(vf, 1, pts, spec);
    return {r.value[0], r.error[0], r.converged};
}

} // namespace zenocool::quad

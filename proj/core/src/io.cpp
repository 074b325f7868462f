// io.cpp — CSV/JSON emitters for trajectories and cooling reports

#include "zenocool/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace zenocool::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::string& path,
                          const dynamics::Trajectory& trajectory) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t,rho_ee,re_rho_eg,im_rho_eg,is_measurement\n";
    for (const auto& s : trajectory.samples) {
        out << format_double(s.t) << ',' << format_double(s.state.rho_ee) << ','
            << format_double(s.state.rho_eg_re) << ','
            << format_double(s.state.rho_eg_im) << ','
            << (s.is_measurement ? 1 : 0) << '\n';
    }
}

namespace {

nlohmann::json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

const char* zeno_name(analysis::ZenoClass c) {
    switch (c) {
    case analysis::ZenoClass::qze: return "QZE";
    case analysis::ZenoClass::qaze: return "QAZE";
    case analysis::ZenoClass::boundary: return "boundary";
    }
    return "boundary";
}

const char* mode_name(analysis::FilterMode m) {
    switch (m) {
    case analysis::FilterMode::raw: return "raw";
    case analysis::FilterMode::smoothed: return "smoothed";
    case analysis::FilterMode::automatic: return "automatic";
    }
    return "raw";
}

} // namespace

std::string cooling_report_json(const analysis::CoolingReport& report) {
    nlohmann::json j;
    j["tau_grid"] = report.tau_grid;
    j["m_exact"] = report.m_exact;
    j["m_exact_error"] = report.m_exact_error;
    j["m_approx"] = report.m_approx;
    auto smoothed = nlohmann::json::array();
    for (double v : report.m_smoothed) smoothed.push_back(number_or_null(v));
    j["m_smoothed"] = smoothed;
    j["point_flags"] = report.point_flags;
    j["tau_min"] = report.tau_min;
    j["m_min"] = report.m_min;
    j["cooling_domain"] = {
        {"tau", report.domain_tau},
        {"empty", report.domain.empty},
        {"omega1", number_or_null(report.domain.omega1)},
        {"omega2", number_or_null(report.domain.omega2)},
        {"filter_mode", mode_name(report.domain.used)},
    };
    j["criterion"] = {
        {"lhs", report.criterion.lhs},
        {"rhs", report.criterion.rhs},
        {"pass", report.criterion.pass},
        {"defined", report.criterion.defined},
        {"beta_max", number_or_null(report.criterion.beta_max)},
    };
    j["zeno"] = {
        {"class", zeno_name(report.zeno.cls)},
        {"effective_rate", report.zeno.effective_rate},
        {"golden_rule_rate", report.zeno.golden_rate},
        {"ratio", report.zeno.ratio},
    };
    j["any_flag"] = report.any_flag;
    return j.dump(2);
}

void write_cooling_report_csv(const std::string& path,
                              const analysis::CoolingReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "tau,m_exact,m_exact_error,m_approx,m_smoothed,flag\n";
    for (std::size_t i = 0; i < report.tau_grid.size(); ++i) {
        out << format_double(report.tau_grid[i]) << ','
            << format_double(report.m_exact[i]) << ','
            << format_double(report.m_exact_error[i]) << ','
            << format_double(report.m_approx[i]) << ','
            << format_double(report.m_smoothed[i]) << ',' << report.point_flags[i]
            << '\n';
    }
}

} // namespace zenocool::io

// io.hpp — trajectory CSV export and cooling-report serialization

#pragma once

#include <string>

#include "zenocool/analysis.hpp"
#include "zenocool/dynamics.hpp"

namespace zenocool::io {

// 17 significant digits, '.' decimal separator
std::string format_double(double v);

// Columns: t, rho_ee, re_rho_eg, im_rho_eg, is_measurement
void write_trajectory_csv(const std::string& path,
                          const dynamics::Trajectory& trajectory);

// JSON document with stable key names (see README for the schema)
std::string cooling_report_json(const analysis::CoolingReport& report);

// Per-grid CSV: tau, m_exact, m_exact_error, m_approx, m_smoothed, flag
void write_cooling_report_csv(const std::string& path,
                              const analysis::CoolingReport& report);

} // namespace zenocool::io

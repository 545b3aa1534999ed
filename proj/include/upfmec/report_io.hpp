#pragma once

#include <ostream>
#include <span>
#include <string>

#include "upfmec/engine.hpp"
#include "upfmec/metrics.hpp"

namespace upfmec {

// Shortest decimal form that parses back to the same double.
std::string format_number(double v);

// Column schemas are documented in docs/output-format.md and kept stable.
void write_summary_csv(std::ostream& os, const SummaryReport& rep);
void write_summary_json(std::ostream& os, const SummaryReport& rep);
void write_cdf_csv(std::ostream& os, const CdfTable& cdf);
void write_requests_csv(std::ostream& os, const RunResult& run);
void write_trace_csv(std::ostream& os, const RunResult& run);
void write_comparison_csv(std::ostream& os, std::span<const ComparisonRow> rows);
void write_capex_points_csv(std::ostream& os, const CapexSweep& sweep);
void write_capex_analysis_csv(std::ostream& os, const CapexSweep& sweep);

// <scenario>.<scheme>.<seed>.<report>.<ext>
std::string output_file_name(const std::string& scenario, const std::string& scheme,
                             const std::string& seed, const std::string& report,
                             const std::string& ext = "csv");

}  // namespace upfmec

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pass_noma/experiment.hpp"

namespace pass_noma {

// Comma-delimited, dot decimal separator, LF line endings, header first.
void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);
void write_timings_csv(std::ostream& out, const std::vector<TrialRecord>& records);

/// Inverse of write_records_csv. Wall times are not stored there and read back as 0.
std::vector<TrialRecord> read_records_csv(std::istream& in);

/// Static SVG line chart of mean sum rate against the sweep value, one series
/// per scheme, with standard-error bars.
std::string render_chart_svg(const std::vector<SummaryRow>& summary, const std::string& title,
                             const std::string& x_label);

struct OutputPaths {
    std::string records;
    std::string summary;
    std::string timings;
    std::string chart;
};

/// Writes records.csv, summary.csv, timings.csv and <kind>.svg into out_dir (created if missing).
OutputPaths emit_outputs(const ExperimentResult& result, const std::string& out_dir);

}  // namespace pass_noma

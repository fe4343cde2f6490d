// csv.hpp - CSV emitters for sweeps, traces and response tables

#pragma once

#include "azhm/dynamics.hpp"
#include "azhm/thermo.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace azhm::csv {

// Shortest decimal that round-trips; "nan" / "inf" / "-inf" otherwise.
std::string format_double(double x);

void write_row(std::ostream& os, const std::vector<std::string>& cells);

extern const std::vector<std::string> kSweepColumns;
extern const std::vector<std::string> kTraceColumns;

// The regime column reports the AZD regime, or the Markov one in a
// Markov-only sweep.
void write_sweep(std::ostream& os, const std::vector<thermo::PerformanceRecord>& records,
                 thermo::SweepMode mode = thermo::SweepMode::Both);
void write_trace(std::ostream& os, const std::vector<dynamics::TracePoint>& trace);

// Generic numeric table with a header row.
void write_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

} // namespace azhm::csv

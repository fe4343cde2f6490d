#include "azhm/csv.hpp"

#include <charconv>
#include <cmath>

namespace azhm::csv {

const std::vector<std::string> kSweepColumns{"delta_s", "Jh_azd",  "Jc_azd",  "W_azd",  "eta_azd",
                                             "cop_azd", "Jh_mkv",  "Jc_mkv",  "W_mkv",  "eta_mkv",
                                             "cop_mkv", "regime",  "boost_power", "boost_cooling"};
const std::vector<std::string> kTraceColumns{"t", "p1", "R0", "R1", "stroke_id"};

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0; // drop the sign of -0
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

void write_sweep(std::ostream& os, const std::vector<thermo::PerformanceRecord>& records, thermo::SweepMode mode) {
    write_row(os, kSweepColumns);
    auto f = format_double;
    for (const auto& r : records) {
        auto regime = mode == thermo::SweepMode::MarkovOnly ? r.markov.regime : r.azd.regime;
        std::string label = r.error.empty() ? thermo::to_string(regime) : "error";
        write_row(os, {f(r.delta_s), f(r.azd.Jh), f(r.azd.Jc), f(r.azd.W), f(r.azd.eta), f(r.azd.cop), f(r.markov.Jh),
                       f(r.markov.Jc), f(r.markov.W), f(r.markov.eta), f(r.markov.cop), label, f(r.boost_power),
                       f(r.boost_cooling)});
    }
}

void write_trace(std::ostream& os, const std::vector<dynamics::TracePoint>& trace) {
    write_row(os, kTraceColumns);
    for (const auto& p : trace)
        write_row(os, {format_double(p.state.t), format_double(p.state.p1), format_double(p.R0), format_double(p.R1),
                       std::to_string(p.stroke_id)});
}

void write_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
    write_row(os, header);
    std::vector<std::string> cells;
    for (const auto& row : rows) {
        cells.clear();
        for (double x : row) cells.push_back(format_double(x));
        write_row(os, cells);
    }
}

} // namespace azhm::csv

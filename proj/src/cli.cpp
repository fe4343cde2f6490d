#include "azhm/cli.hpp"

#include "azhm/csv.hpp"
#include "azhm/errors.hpp"
#include "azhm/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace azhm::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw UsageError("cannot write '" + path + "'");
    return os;
}

void report_warnings(const std::vector<std::string>& notes, std::ostream& err) {
    for (const auto& n : notes) err << "warning: " << n << '\n';
}

std::vector<std::string> scenario_warnings(const scenario::Scenario& s) {
    auto hot = s.hot();
    auto cold = s.cold();
    return dynamics::config_warnings(s.cycle, s.modulation, dynamics::bath_time(hot, cold), s.beta_h, s.beta_c);
}

std::vector<double> sweep_grid(const scenario::Scenario& s) {
    if (!s.sweep) throw UsageError("scenario has no sweep grid");
    auto grid = s.sweep->grid();
    if (grid.empty()) throw UsageError("sweep grid has zero points");
    return grid;
}

std::vector<thermo::PerformanceRecord> run_sweep(const scenario::Scenario& s, thermo::SweepMode mode) {
    scenario::ScenarioSpectra factory(s);
    auto in = scenario::sweep_input(s, factory, mode);
    return thermo::sweep_modulation(in, sweep_grid(s));
}

std::size_t count_failures(const std::vector<thermo::PerformanceRecord>& r, std::ostream& err) {
    std::size_t n = 0;
    for (const auto& x : r)
        if (!x.error.empty()) {
            err << "point delta_s=" << fmt(x.delta_s) << " failed: " << x.error << '\n';
            ++n;
        }
    return n;
}

struct TraceResult {
    std::vector<dynamics::TracePoint> trace;
    double p1_ss{0.0};
};

TraceResult run_trace(const scenario::Scenario& s, bool from_transient) {
    auto hot = s.hot();
    auto cold = s.cold();
    const auto& m = s.modulation;
    TraceResult r;
    r.p1_ss = dynamics::steady_p1(dynamics::steady_state_w(m, s.beta_h, s.beta_c));
    dynamics::EvolveOptions opt;
    dynamics::MachineState init = dynamics::make_state(r.p1_ss);
    if (from_transient) {
        const auto mr = dynamics::markov_rates(hot, cold, m);
        const double k = 0.25 * m.lambda * m.lambda * (mr.R0 + mr.R1);
        if (!(k > 0.0)) throw DegenerateInputError("trace: Markov relaxation rate is zero");
        init = dynamics::make_state(0.6);
        opt.transient = 20.0 / k;
    }
    r.trace = dynamics::evolve(hot, cold, m, s.cycle, init, s.quad, opt);
    return r;
}

double stroke_time(const scenario::Scenario& s, double delta_s) {
    return s.cycle.n * s.modulation_at(delta_s).tau_s();
}

void write_overlap(const scenario::Scenario& s, double delta_s, double t, int points, std::ostream& os) {
    auto hot = s.hot(delta_s);
    auto cold = s.cold(delta_s);
    const double wp = s.modulation.omega0 + delta_s;
    const double wm = s.modulation.omega0 - delta_s;
    auto sinc = [](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; };
    std::vector<std::vector<double>> rows;
    const double hi = 2.0 * s.modulation.omega0;
    for (int i = 0; i < points; ++i) {
        const double nu = points == 1 ? 0.0 : hi * i / (points - 1);
        rows.push_back({nu, hot(nu), cold(nu), sinc((nu - wp) * t), sinc((nu - wm) * t)});
    }
    csv::write_table(os, {"nu", "G_h", "G_c", "sinc_h", "sinc_c"}, rows);
}

void write_profile(const scenario::Scenario& s, double delta_s, double t_max, int points, std::ostream& os) {
    auto hot = s.hot(delta_s);
    auto cold = s.cold(delta_s);
    const double wp = s.modulation.omega0 + delta_s;
    const double wm = s.modulation.omega0 - delta_s;
    std::vector<double> times;
    for (int k = 1; k <= points; ++k) times.push_back(t_max * k / points);
    auto ih = response::response_profile(hot, wp, times, s.quad);
    auto ic = response::response_profile(cold, wm, times, s.quad);
    const double gh = response::markovian_response(hot, wp);
    const double gc = response::markovian_response(cold, wm);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < times.size(); ++k)
        rows.push_back({times[k], ih[k].real_part, ic[k].real_part, gh, gc});
    csv::write_table(os, {"t", "I_h", "I_c", "piG_h", "piG_c"}, rows);
}

// Contiguous runs of equal regime along the grid.
void print_schedule(const std::vector<thermo::PerformanceRecord>& r, std::ostream& out) {
    std::size_t i = 0;
    while (i < r.size()) {
        std::size_t j = i;
        while (j + 1 < r.size() && r[j + 1].markov.regime == r[i].markov.regime && r[j + 1].error.empty() &&
               r[i].error.empty())
            ++j;
        const char* label = r[i].error.empty() ? thermo::to_string(r[i].markov.regime) : "error";
        out << "  " << label << "  " << fmt(r[i].delta_s) << " .. " << fmt(r[j].delta_s) << '\n';
        i = j + 1;
    }
}

void print_regimes(const scenario::Scenario& s, std::ostream& out) {
    auto hot = s.hot();
    auto cold = s.cold();
    const double tau_b = dynamics::bath_time(hot, cold);
    const double tau_s = s.modulation.tau_s();
    const double qsl = qsl_from_betas(s.modulation.omega0, s.beta_h, s.beta_c);
    out << "Delta_qsl = " << fmt(qsl) << '\n';
    out << "tau_B = " << fmt(tau_b) << '\n';
    out << "tau_S = " << fmt(tau_s) << '\n';
    out << "tau_C = " << fmt(s.cycle.n * tau_s) << '\n';
    out << "gap = " << fmt(dynamics::gap_duration(s.cycle, tau_b)) << '\n';
    if (!std::isnan(qsl)) {
        out << "schedule:\n";
        out << "  HE  0 < delta_s < " << fmt(qsl) << '\n';
        out << "  QR  " << fmt(qsl) << " < delta_s < " << fmt(s.modulation.omega0) << '\n';
    }
    if (s.sweep && s.sweep->points > 0) {
        out << "grid schedule (Markov):\n";
        print_schedule(run_sweep(s, thermo::SweepMode::MarkovOnly), out);
    }
}

nlohmann::json check_json(const Check& c) {
    nlohmann::json j;
    j["name"] = c.name;
    j["value"] = std::isnan(c.value) ? nlohmann::json(nullptr) : nlohmann::json(c.value);
    j["comparison"] = c.comparison;
    j["threshold"] = c.threshold;
    j["pass"] = c.pass;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

void sweep_figure(const std::string& preset, const std::string& file, const std::filesystem::path& dir,
                  std::ostream& err, std::vector<thermo::PerformanceRecord>* keep = nullptr) {
    auto s = scenario::load_scenario(preset);
    report_warnings(scenario_warnings(s), err);
    auto records = run_sweep(s, thermo::SweepMode::Both);
    count_failures(records, err);
    auto os = open_out((dir / file).string());
    csv::write_sweep(os, records);
    if (keep) *keep = records;
}

std::vector<Check> reproduce(const std::string& figure, const std::filesystem::path& dir, std::ostream& err,
                             std::vector<std::string>& files) {
    std::filesystem::create_directories(dir);
    std::vector<Check> checks;
    std::vector<thermo::PerformanceRecord> r;
    auto qsl_of = [](const std::string& preset) {
        auto s = scenario::load_scenario(preset);
        return qsl_from_betas(s.modulation.omega0, s.beta_h, s.beta_c);
    };
    if (figure == "2") {
        auto s = scenario::load_scenario("fig2");
        report_warnings(scenario_warnings(s), err);
        auto tr = run_trace(s, false);
        auto os = open_out((dir / "fig2_trace.csv").string());
        csv::write_trace(os, tr.trace);
        files.push_back("fig2_trace.csv");
        double dev = 0.0;
        for (const auto& p : tr.trace) dev = std::max(dev, std::abs(p.state.p1 - tr.p1_ss));
        checks.push_back({"p1_max_deviation", dev, "<", 1e-3, dev < 1e-3, "p1_ss = " + fmt(tr.p1_ss)});
    } else if (figure == "3" || figure == "4") {
        const std::string preset = "fig" + figure;
        sweep_figure(preset, preset + "_sweep.csv", dir, err, &r);
        files.push_back(preset + "_sweep.csv");
        checks.push_back(boost_power_check(r, figure == "3" ? 2.0 : 7.0));
        if (figure == "3") {
            const double qsl = qsl_of(preset);
            checks.push_back(qsl_check(r, qsl, false));
            checks.push_back(qsl_check(r, qsl, true));
        }
    } else if (figure == "5a" || figure == "5b") {
        const std::string preset = "fig" + figure;
        sweep_figure(preset, preset + "_sweep.csv", dir, err, &r);
        files.push_back(preset + "_sweep.csv");
        checks.push_back(boost_cooling_check(r, figure == "5a" ? 2.0 : 9.0));
        if (figure == "5a") {
            const double qsl = qsl_of(preset);
            checks.push_back(qsl_check(r, qsl, false));
            checks.push_back(qsl_check(r, qsl, true));
        }
    } else if (figure == "6") {
        sweep_figure("fig6", "fig6a_sweep.csv", dir, err, &r);
        files.push_back("fig6a_sweep.csv");
        auto s = scenario::load_scenario("fig6");
        const double qsl = qsl_of("fig6");
        checks.push_back(eta_agreement_check(r, 1e-2));
        checks.push_back(eta_carnot_check(r, qsl, 1.0 - s.beta_h / s.beta_c, 0.02));
        checks.push_back(cop_agreement_check(r, 1e-2, "cop_max_abs_diff"));
        std::vector<thermo::PerformanceRecord> rb;
        sweep_figure("fig5a", "fig6b_sweep.csv", dir, err, &rb);
        files.push_back("fig6b_sweep.csv");
        checks.push_back(cop_agreement_check(rb, 1e-2, "cop_max_abs_diff_fig5a"));
    } else {
        throw UsageError("unknown figure '" + figure + "'");
    }
    return checks;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const scenario::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const ValidationError& e) {
        err << "error: invalid " << e.what() << '\n';
        return kValidation;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NumericalError& e) {
        err << "error: numerical failure: " << e.what() << " (partial " << fmt(e.partial_value()) << ", error "
            << fmt(e.error_estimate()) << ")\n";
        return kNumerical;
    } catch (const DegenerateInputError& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
}

} // namespace

std::string describe(const Check& c) {
    std::string s = c.name + " = " + fmt(c.value) + " (" + c.comparison + " " + fmt(c.threshold) + ": " +
                    (c.pass ? "PASS" : "FAIL") + ")";
    if (!c.note.empty()) s += " [" + c.note + "]";
    return s;
}

double qsl_from_betas(double omega0, double beta_h, double beta_c) {
    if (!(beta_h > 0.0) || !(beta_c > beta_h)) return kNaN;
    return thermo::quantum_speed_limit(omega0, 1.0 / beta_h, 1.0 / beta_c);
}

SignChange nearest_sign_change(const std::vector<double>& grid, const std::vector<double>& values, double target) {
    SignChange best;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < grid.size() && i + 1 < values.size(); ++i) {
        const double a = values[i], b = values[i + 1];
        if (!((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0))) continue;
        double d = 0.0;
        if (target < grid[i]) d = grid[i] - target;
        if (target > grid[i + 1]) d = target - grid[i + 1];
        if (d < dist) {
            dist = d;
            best = {true, grid[i], grid[i + 1]};
        }
    }
    return best;
}

Check boost_power_check(const std::vector<thermo::PerformanceRecord>& r, double threshold) {
    double best = kNaN;
    for (const auto& x : r)
        if (x.azd.regime == thermo::Regime::HeatEngine && !std::isnan(x.boost_power))
            best = std::isnan(best) ? x.boost_power : std::max(best, x.boost_power);
    return {"boost_power_max", best, ">", threshold, best > threshold, ""};
}

Check boost_cooling_check(const std::vector<thermo::PerformanceRecord>& r, double threshold) {
    double best = kNaN;
    for (const auto& x : r)
        if (x.azd.regime == thermo::Regime::Refrigerator && !std::isnan(x.boost_cooling))
            best = std::isnan(best) ? x.boost_cooling : std::max(best, x.boost_cooling);
    return {"boost_cooling_max", best, ">", threshold, best > threshold, ""};
}

Check qsl_check(const std::vector<thermo::PerformanceRecord>& r, double delta_qsl, bool markov) {
    std::vector<double> grid, w;
    for (const auto& x : r) {
        grid.push_back(x.delta_s);
        w.push_back(markov ? x.markov.W : x.azd.W);
    }
    const double h = grid.size() > 1 ? (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1) : 0.0;
    auto sc = nearest_sign_change(grid, w, delta_qsl);
    Check c{markov ? "qsl_bracket_offset_mkv" : "qsl_bracket_offset_azd", kNaN, "<=", h, false, ""};
    if (sc.found) {
        c.value = delta_qsl < sc.lo ? sc.lo - delta_qsl : (delta_qsl > sc.hi ? delta_qsl - sc.hi : 0.0);
        c.pass = c.value <= h;
        c.note = "W changes sign in [" + fmt(sc.lo) + ", " + fmt(sc.hi) + "], Delta_qsl = " + fmt(delta_qsl);
    } else {
        c.note = "no sign change of W";
    }
    return c;
}

Check eta_agreement_check(const std::vector<thermo::PerformanceRecord>& r, double tol) {
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& x : r) {
        if (x.azd.regime != thermo::Regime::HeatEngine && x.markov.regime != thermo::Regime::HeatEngine) continue;
        ++n;
        const double d = std::abs(x.azd.eta - x.markov.eta);
        worst = std::isnan(d) ? std::numeric_limits<double>::infinity() : std::max(worst, d);
    }
    return {"eta_max_abs_diff", worst, "<", tol, n > 0 && worst < tol, std::to_string(n) + " engine points"};
}

Check cop_agreement_check(const std::vector<thermo::PerformanceRecord>& r, double tol, const std::string& name) {
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& x : r) {
        if (x.azd.regime != thermo::Regime::Refrigerator && x.markov.regime != thermo::Regime::Refrigerator) continue;
        ++n;
        const double d = std::abs(x.azd.cop - x.markov.cop);
        worst = std::isnan(d) ? std::numeric_limits<double>::infinity() : std::max(worst, d);
    }
    return {name, worst, "<", tol, n > 0 && worst < tol, std::to_string(n) + " refrigerator points"};
}

Check eta_carnot_check(const std::vector<thermo::PerformanceRecord>& r, double delta_qsl, double eta_carnot,
                       double rel_tol) {
    const thermo::PerformanceRecord* near = nullptr;
    for (const auto& x : r)
        if (x.azd.regime == thermo::Regime::HeatEngine &&
            (!near || std::abs(x.delta_s - delta_qsl) < std::abs(near->delta_s - delta_qsl)))
            near = &x;
    Check c{"eta_carnot_rel_gap", kNaN, "<", rel_tol, false, "no engine point"};
    if (near) {
        c.value = std::abs(near->azd.eta - eta_carnot) / eta_carnot;
        c.pass = c.value < rel_tol;
        c.note = "eta_azd = " + fmt(near->azd.eta) + ", eta_mkv = " + fmt(near->markov.eta) + " at delta_s = " +
                 fmt(near->delta_s) + ", eta_C = " + fmt(eta_carnot);
    }
    return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-time (anti-Zeno) two-level quantum heat machine simulator", "azhm"};
    app.require_subcommand(1);

    std::string config, out_path, what, figure;
    bool markov_only = false, azd_only = false, from_transient = false;
    double delta_s = 0.0, t_opt = 0.0;
    int points = 0;

    auto* sweep = app.add_subcommand("sweep", "Sweep the modulation frequency and write the performance CSV");
    sweep->add_option("--config", config, "Scenario JSON file or preset name")->required();
    sweep->add_option("--out", out_path, "Output CSV")->required();
    auto* mo = sweep->add_flag("--markov-only", markov_only, "Markovian baseline only");
    auto* ao = sweep->add_flag("--azd-only", azd_only, "Finite-time (AZD) results only");
    mo->excludes(ao);

    auto* trace = app.add_subcommand("trace", "Integrate the population over the scenario cycles");
    trace->add_option("--config", config, "Scenario JSON file or preset name")->required();
    trace->add_option("--out", out_path, "Output CSV")->required();
    trace->add_flag("--from-transient", from_transient, "Start at p1 = 0.6 after a Markovian relaxation phase");

    auto* resp = app.add_subcommand("response", "Dump spectral overlap tables or response profiles");
    resp->add_option("--config", config, "Scenario JSON file or preset name")->required();
    resp->add_option("--out", out_path, "Output CSV")->required();
    resp->add_option("--what", what, "overlap or profile")->required()->check(CLI::IsMember({"overlap", "profile"}));
    resp->add_option("--delta-s", delta_s, "Modulation frequency")->required();
    resp->add_option("--t", t_opt, "Kernel time (overlap) or profile end time; default n tau_S");
    resp->add_option("--points", points, "Number of rows (default 2001 overlap, 200 profile)");

    auto* reg = app.add_subcommand("regimes", "Print time scales, Delta_qsl and the regime schedule");
    reg->add_option("--config", config, "Scenario JSON file or preset name")->required();

    auto* rep = app.add_subcommand("reproduce", "Run a bundled figure preset and check it");
    rep->add_option("--figure", figure, "2, 3, 4, 5a, 5b or 6")
        ->required()
        ->check(CLI::IsMember({"2", "3", "4", "5a", "5b", "6"}));
    rep->add_option("--out", out_path, "Output directory")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    return guarded(err, [&]() -> int {
        if (sweep->parsed()) {
            auto s = scenario::load_scenario(config);
            report_warnings(scenario_warnings(s), err);
            auto mode = markov_only ? thermo::SweepMode::MarkovOnly
                                    : (azd_only ? thermo::SweepMode::AzdOnly : thermo::SweepMode::Both);
            sweep_grid(s);
            auto records = run_sweep(s, mode);
            auto os = open_out(out_path);
            csv::write_sweep(os, records, mode);
            return count_failures(records, err) ? kNumerical : kOk;
        }
        if (trace->parsed()) {
            auto s = scenario::load_scenario(config);
            report_warnings(scenario_warnings(s), err);
            auto tr = run_trace(s, from_transient);
            auto os = open_out(out_path);
            csv::write_trace(os, tr.trace);
            return kOk;
        }
        if (resp->parsed()) {
            auto s = scenario::load_scenario(config);
            if (!(delta_s > 0.0 && delta_s < s.modulation.omega0))
                throw ValidationError("delta_s", "must satisfy 0 < delta_s < omega0");
            try {
                (void)s.hot(delta_s);
                (void)s.cold(delta_s);
            } catch (const ValidationError& e) {
                throw ValidationError("delta_s", std::string("spectra invalid at this frequency (") + e.what() + ")");
            }
            if (t_opt < 0.0) throw UsageError("--t must be positive");
            if (points < 0) throw UsageError("--points must be positive");
            const double t = t_opt > 0.0 ? t_opt : stroke_time(s, delta_s);
            auto os = open_out(out_path);
            if (what == "overlap")
                write_overlap(s, delta_s, t, points > 0 ? points : 2001, os);
            else
                write_profile(s, delta_s, t, points > 0 ? points : 200, os);
            return kOk;
        }
        if (reg->parsed()) {
            auto s = scenario::load_scenario(config);
            print_regimes(s, out);
            return kOk;
        }
        std::vector<std::string> files;
        auto checks = reproduce(figure, out_path, err, files);
        nlohmann::json doc;
        doc["figure"] = figure;
        doc["files"] = files;
        doc["checks"] = nlohmann::json::array();
        bool all = true;
        for (const auto& c : checks) {
            out << describe(c) << '\n';
            doc["checks"].push_back(check_json(c));
            all = all && c.pass;
        }
        doc["pass"] = all;
        auto os = open_out((std::filesystem::path(out_path) / "checks.json").string());
        os << doc.dump(2) << '\n';
        return kOk;
    });
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace azhm::cli

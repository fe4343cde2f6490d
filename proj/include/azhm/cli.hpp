// cli.hpp - command-line front end: sweep, trace, response, regimes, reproduce

#pragma once

#include "azhm/thermo.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace azhm::cli {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kNumerical = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

// One verdict of `reproduce`, e.g. boost_power_max > 2.
struct Check {
    std::string name;
    double value{0.0};
    std::string comparison; // "<" or ">"
    double threshold{0.0};
    bool pass{false};
    std::string note;
};

std::string describe(const Check& c);

// Where the work output changes sign, searched on consecutive grid points.
struct SignChange {
    bool found{false};
    double lo{0.0};
    double hi{0.0};
};

// The sign change whose bracket lies closest to `target`.
SignChange nearest_sign_change(const std::vector<double>& grid, const std::vector<double>& values, double target);

// Delta_qsl from inverse temperatures; NaN unless beta_c > beta_h > 0.
double qsl_from_betas(double omega0, double beta_h, double beta_c);

Check boost_power_check(const std::vector<thermo::PerformanceRecord>& r, double threshold);
Check boost_cooling_check(const std::vector<thermo::PerformanceRecord>& r, double threshold);
// Passes when a sign change of W (AZD or Markov) brackets delta_qsl
// within one grid spacing.
Check qsl_check(const std::vector<thermo::PerformanceRecord>& r, double delta_qsl, bool markov);
Check eta_agreement_check(const std::vector<thermo::PerformanceRecord>& r, double tol);
Check cop_agreement_check(const std::vector<thermo::PerformanceRecord>& r, double tol, const std::string& name);
// |eta_azd - eta_C| / eta_C at the engine point nearest delta_qsl.
Check eta_carnot_check(const std::vector<thermo::PerformanceRecord>& r, double delta_qsl, double eta_carnot,
                       double rel_tol);

} // namespace azhm::cli

// thermo.hpp - heat currents, cycle averages, regimes and frequency sweeps

#pragma once

#include "azhm/dynamics.hpp"
#include "azhm/floquet.hpp"
#include "azhm/response.hpp"
#include "azhm/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace azhm::thermo {

struct InstantCurrents {
    double J_h{0.0};   // heat from the hot bath into the working fluid
    double J_c{0.0};   // heat from the cold bath into the working fluid
    double W_dot{0.0}; // -(J_h + J_c); negative when work is extracted
    double t{0.0};
};

// Currents for given response values I_h(omega0 + delta_s) and
// I_c(omega0 - delta_s).
InstantCurrents currents_from_response(const floquet::ModulationParams& m, double beta_h, double beta_c, double w,
                                       double Ih, double Ic, double t);

InstantCurrents heat_currents(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                              const floquet::ModulationParams& m, double w, double t, const response::QuadConfig& q);

enum class Regime { HeatEngine, Refrigerator, Idle };

const char* to_string(Regime r) noexcept;

struct Averages {
    double Jh{0.0};
    double Jc{0.0};
    double W{0.0};
    double eta{0.0}; // -W / Jh in the engine regime, NaN otherwise
    double cop{0.0}; // Jc / W in the refrigerator regime, NaN otherwise
    Regime regime{Regime::Idle};
};

struct PerformanceRecord {
    double delta_s{0.0};
    Averages azd;
    Averages markov;
    double boost_power{0.0};   // W_azd / W_markov when both < 0, NaN otherwise
    double boost_cooling{0.0}; // Jc_azd / Jc_markov when both > 0, NaN otherwise
    std::string error;         // non-empty when this point failed
};

// Default idle threshold 1e-9 gamma0 omega0.
double default_tolerance(const spectra::SpectralFunction& hot, const floquet::ModulationParams& m);

Regime classify_regime(double Jh, double Jc, double W, double tol);
Regime classify_regime(const Averages& a, double tol);

// Fills eta, cop and regime from the three averaged currents.
Averages finish_averages(double Jh, double Jc, double W, double tol);

void fill_boosts(PerformanceRecord& r);

double quantum_speed_limit(double omega0, double T_h, double T_c);

// Time averages over one coupling stroke (the gap carries no energy flow),
// Simpson's rule on the half-step grid of the dynamics, with w from the
// steady state. The Markov baseline replaces I by pi G.
PerformanceRecord average_over_stroke(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                                      const floquet::ModulationParams& m, double beta_h, double beta_c,
                                      const dynamics::CycleConfig& cfg, const response::QuadConfig& q,
                                      std::optional<double> tol = std::nullopt);

enum class SweepMode { Both, MarkovOnly, AzdOnly };

// Builds the spectra for one modulation frequency.
struct SpectraFactory {
    virtual ~SpectraFactory() = default;
    virtual spectra::SpectralFunction hot(double delta_s) const = 0;
    virtual spectra::SpectralFunction cold(double delta_s) const = 0;
};

struct SweepInput {
    const SpectraFactory* spectra{nullptr};
    double omega0{20.0};
    double lambda{0.2};
    double beta_h{0.0005};
    double beta_c{0.005};
    dynamics::CycleConfig cycle;
    response::QuadConfig quad;
    SweepMode mode{SweepMode::Both};
    int threads{0}; // 0: take the environment default
};

// One record per grid point in grid order. A failing point keeps its
// delta_s, NaN fields and an error message; the sweep carries on.
std::vector<PerformanceRecord> sweep_modulation(const SweepInput& in, const std::vector<double>& delta_grid);

} // namespace azhm::thermo

// dynamics.hpp - population rate equations under the two-stroke cycle

#pragma once

#include "azhm/floquet.hpp"
#include "azhm/response.hpp"
#include "azhm/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace azhm::dynamics {

struct MachineState {
    double p1{0.5};
    double p0{0.5};
    double t{0.0};
};

MachineState make_state(double p1, double t = 0.0);

struct CycleConfig {
    int n{10};                  // modulation periods per coupling stroke
    std::optional<double> tbar; // decoupling gap; 2 tau_B when unset
    int cycles{1};
    int oversample{64};         // RK4 steps per modulation period
};

// Throws ValidationError ("n", "tbar", "cycles", "oversample").
void validate(const CycleConfig& cfg);

// Bath memory time of the pair: the longer of the two correlation times.
double bath_time(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold);

double gap_duration(const CycleConfig& cfg, double tau_b);

// Soft conditions on the protocol (gap vs memory, stroke length, and the
// short-time steady-state requirements); returns human-readable notes.
std::vector<std::string> config_warnings(const CycleConfig& cfg, const floquet::ModulationParams& m,
                                         double tau_b, double beta_h, double beta_c);

struct RatePair {
    double R0{0.0}; // excitation
    double R1{0.0}; // de-excitation
    double t{0.0};
};

RatePair rates(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
               const floquet::ModulationParams& m, double t, const response::QuadConfig& q);

// Time-independent rates from I = pi G.
RatePair markov_rates(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                      const floquet::ModulationParams& m);

double steady_state_w(const floquet::ModulationParams& m, double beta_h, double beta_c);
double steady_state_w_general(double Ih, double Ic, const floquet::ModulationParams& m, double beta_h,
                              double beta_c);
inline double steady_p1(double w) { return w / (1.0 + w); }

enum class RateModel { Finite, Markov };

// Rates sampled every half step of one coupling stroke, t = j dt / 2 for
// j = 0 .. 2 n oversample. The response clock starts at 0, where I = 0.
struct StrokeRates {
    double dt{0.0};
    std::vector<RatePair> half_steps;
};

StrokeRates stroke_rates(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                         const floquet::ModulationParams& m, const CycleConfig& cfg, const response::QuadConfig& q,
                         RateModel model = RateModel::Finite);

inline constexpr int kGapStroke = -1;
inline constexpr int kTransientStroke = -2;

struct TracePoint {
    MachineState state;
    double R0{0.0};
    double R1{0.0};
    int stroke_id{0}; // cycle index while coupled, kGapStroke in a gap
};

struct EvolveOptions {
    RateModel model{RateModel::Finite};
    // Markovian relaxation run before the first stroke, when positive.
    double transient{0.0};
};

// Classical RK4 on dp1/dt = (lambda^2/4)[R0 p0 - R1 p1] with dt = tau_S /
// oversample. Each stroke restarts the response clock; gaps freeze the
// state. Throws NumericalError if p1 leaves [-1e-9, 1 + 1e-9].
std::vector<TracePoint> evolve(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                               const floquet::ModulationParams& m, const CycleConfig& cfg, const MachineState& init,
                               const response::QuadConfig& q, const EvolveOptions& opt = {});

// Same integration on precomputed stroke rates.
std::vector<TracePoint> evolve(const StrokeRates& rates, const floquet::ModulationParams& m, const CycleConfig& cfg,
                               double gap, const MachineState& init);

} // namespace azhm::dynamics

// scenario.hpp - JSON scenario files and bundled presets

#pragma once

#include "azhm/dynamics.hpp"
#include "azhm/floquet.hpp"
#include "azhm/response.hpp"
#include "azhm/spectra.hpp"
#include "azhm/thermo.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace azhm::scenario {

struct SweepGrid {
    double delta_min{0.2};
    double delta_max{19.0};
    int points{60};

    // Inclusive, evenly spaced; empty when points == 0.
    std::vector<double> grid() const;
};

struct Scenario {
    std::string name;
    floquet::ModulationParams modulation;
    spectra::SpectralModel hot_spec;
    spectra::SpectralModel cold_spec;
    double beta_h{0.0005};
    double beta_c{0.005};
    dynamics::CycleConfig cycle;
    response::QuadConfig quad;
    std::optional<SweepGrid> sweep;

    spectra::SpectralFunction hot(double delta_s) const;
    spectra::SpectralFunction cold(double delta_s) const;
    spectra::SpectralFunction hot() const { return hot(modulation.delta_s); }
    spectra::SpectralFunction cold() const { return cold(modulation.delta_s); }
    floquet::ModulationParams modulation_at(double delta_s) const;
};

// Parse failures carry the line/column; validation failures throw
// ValidationError naming the dotted field path.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Scenario parse_scenario(const std::string& text);
// Reads a file; a bundled preset name is accepted in place of a path.
Scenario load_scenario(const std::string& path_or_preset);
std::string serialize_scenario(const Scenario& s);

// Runs every structural check; throws ValidationError.
void validate(const Scenario& s);

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
std::string preset_text(const std::string& name);

// Factory adapter for thermo::sweep_modulation.
class ScenarioSpectra final : public thermo::SpectraFactory {
public:
    explicit ScenarioSpectra(const Scenario& s) : s_(s) {}
    spectra::SpectralFunction hot(double delta_s) const override { return s_.hot(delta_s); }
    spectra::SpectralFunction cold(double delta_s) const override { return s_.cold(delta_s); }

private:
    const Scenario& s_;
};

thermo::SweepInput sweep_input(const Scenario& s, const ScenarioSpectra& factory, thermo::SweepMode mode);

} // namespace azhm::scenario

#include "azhm/errors.hpp"
#include "azhm/scenario.hpp"

#include <array>
#include <utility>

namespace azhm::scenario {

namespace {

// fig6 shares the fig3 engine parameters; `reproduce --figure 6` also runs
// the fig5a refrigerator for the COP panel.
const std::array<std::pair<const char*, const char*>, 6> kPresets{{
    {"fig2", R"json({
  "name": "fig2",
  "modulation": {"omega0": 20, "lambda": 0.2, "delta_s": 10},
  "hot_spec": {"family": "quasi_lorentzian", "gamma0": 1, "epsilon": 0.01, "peaks": [{"weight": 1, "shift": 1, "width": 0.2}]},
  "cold_spec": {"family": "quasi_lorentzian", "gamma0": 1, "epsilon": 0.01, "peaks": [{"weight": 1, "shift": 1, "width": 0.2}]},
  "beta_h": 0.0005,
  "beta_c": 0.005,
  "cycle": {"n": 10, "cycles": 3, "oversample": 64},
  "quad": {"rel_tol": 1e-8, "abs_tol": 1e-12, "max_subdivisions": 2000, "oscillation_splitting": true}
}
)json"},
    {"fig3", R"json({
  "name": "fig3",
  "modulation": {"omega0": 20, "lambda": 0.2, "delta_s": 12},
  "hot_spec": {"family": "quasi_lorentzian", "gamma0": 1, "epsilon": 0.01, "peaks": [{"weight": 1, "shift": 3, "width": 0.2}]},
  "cold_spec": {"family": "quasi_lorentzian", "gamma0": 1, "epsilon": 0.01, "peaks": [{"weight": 1, "shift": 3, "width": 0.2}]},
  "beta_h": 0.0005,
  "beta_c": 0.005,
  "cycle": {"n": 10, "cycles": 1, "oversample": 64},
  "quad": {"rel_tol": 1e-8, "abs_tol": 1e-12, "max_subdivisions": 2000, "oscillation_splitting": true},
  "sweep": {"delta_min": 0.2, "delta_max": 19, "points": 60}
}
)json"},
    {"fig4", R"json({
  "name": "fig4",
  "modulation": {"omega0": 20, "lambda": 0.2, "delta_s": 12},
  "hot_spec": {"family": "super_ohmic", "gamma0": 1, "epsilon": 0.1, "s": 2, "nu_bar": 1, "delta": 0.1},
  "cold_spec": {"family": "super_ohmic", "gamma0": 1, "epsilon": 0.1, "s": 2, "nu_bar": 1, "delta": 0.1},
  "beta_h": 0.0005,
  "beta_c": 0.005,
  "cycle": {"n": 10, "cycles": 1, "oversample": 64},
  "quad": {"rel_tol": 1e-8, "abs_tol": 1e-12, "max_subdivisions": 2000, "oscillation_splitting": true},
  "sweep": {"delta_min": 0.5, "delta_max": 19, "points": 60}
}
)json"},
    {"fig5a", R"json({
  "name": "fig5a",
  "modulation": {"omega0": 20, "lambda": 0.2, "delta_s": 12},
  "hot_spec": {"family": "quasi_lorentzian", "gamma0": 1, "epsilon": 0.01, "peaks": [{"weight": 1, "shift": 3, "width": 0.2}]},
  "cold_spec": {"family": "quasi_lorentzian", "gamma0": 1, "epsilon": 0.01, "peaks": [{"weight": 1, "shift": 3, "width": 0.2}]},
  "beta_h": 0.001,
  "beta_c": 0.002,
  "cycle": {"n": 10, "cycles": 1, "oversample": 64},
  "quad": {"rel_tol": 1e-8, "abs_tol": 1e-12, "max_subdivisions": 2000, "oscillation_splitting": true},
  "sweep": {"delta_min": 0.2, "delta_max": 19, "points": 60}
}
)json"},
    {"fig5b", R"json({
  "name": "fig5b",
  "modulation": {"omega0": 20, "lambda": 0.2, "delta_s": 12},
  "hot_spec": {"family": "super_ohmic", "gamma0": 1, "epsilon": 0.1, "s": 2, "nu_bar": 1, "delta": 0.1},
  "cold_spec": {"family": "super_ohmic", "gamma0": 1, "epsilon": 0.1, "s": 2, "nu_bar": 1, "delta": 0.1},
  "beta_h": 0.001,
  "beta_c": 0.002,
  "cycle": {"n": 10, "cycles": 1, "oversample": 64},
  "quad": {"rel_tol": 1e-8, "abs_tol": 1e-12, "max_subdivisions": 2000, "oscillation_splitting": true},
  "sweep": {"delta_min": 0.5, "delta_max": 19, "points": 60}
}
)json"},
    {"fig6", R"json({
  "name": "fig6",
  "modulation": {"omega0": 20, "lambda": 0.2, "delta_s": 12},
  "hot_spec": {"family": "quasi_lorentzian", "gamma0": 1, "epsilon": 0.01, "peaks": [{"weight": 1, "shift": 3, "width": 0.2}]},
  "cold_spec": {"family": "quasi_lorentzian", "gamma0": 1, "epsilon": 0.01, "peaks": [{"weight": 1, "shift": 3, "width": 0.2}]},
  "beta_h": 0.0005,
  "beta_c": 0.005,
  "cycle": {"n": 10, "cycles": 1, "oversample": 64},
  "quad": {"rel_tol": 1e-8, "abs_tol": 1e-12, "max_subdivisions": 2000, "oscillation_splitting": true},
  "sweep": {"delta_min": 0.2, "delta_max": 19, "points": 60}
}
)json"},
}};

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : kPresets) names.emplace_back(p.first);
    return names;
}

bool is_preset(const std::string& name) {
    for (const auto& p : kPresets)
        if (name == p.first) return true;
    return false;
}

std::string preset_text(const std::string& name) {
    for (const auto& p : kPresets)
        if (name == p.first) return p.second;
    throw UsageError("unknown preset '" + name + "'");
}

} // namespace azhm::scenario

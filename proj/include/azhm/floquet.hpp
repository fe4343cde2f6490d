// floquet.hpp - sidebands of the sinusoidally modulated level splitting

#pragma once

#include <string>
#include <vector>

namespace azhm::floquet {

struct ModulationParams {
    double omega0{20.0};
    double lambda{0.2};
    double delta_s{10.0};

    double tau_s() const;
};

// Throws ValidationError ("omega0", "lambda", "delta_s") on a violated
// invariant. lambda = 0 is accepted (unmodulated reference).
void validate(const ModulationParams& m);

// Advisory notes, e.g. lambda above the small-amplitude regime.
std::vector<std::string> warnings(const ModulationParams& m);

struct Sideband {
    int q{0};
    double frequency{0.0};
    double weight{0.0};
};

enum class WeightMode { Exact, SmallLambda };

// Sidebands q = -q_max .. q_max in order. Exact weights are J_q(lambda)^2.
std::vector<Sideband> sideband_weights(const ModulationParams& m, int q_max, WeightMode mode);

struct SidebandFrequency {
    int q{0};
    double frequency{0.0};
    bool nonpositive{false};
};

std::vector<SidebandFrequency> sideband_frequencies(const ModulationParams& m, int q_max);

} // namespace azhm::floquet

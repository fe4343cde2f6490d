// floquet.cpp - sideband frequencies and Bessel weights

#include "azhm/floquet.hpp"

#include "azhm/errors.hpp"

#include <cmath>
#include <numbers>

namespace azhm::floquet {

double ModulationParams::tau_s() const { return 2.0 * std::numbers::pi / delta_s; }

void validate(const ModulationParams& m) {
    if (!std::isfinite(m.omega0) || !(m.omega0 > 0.0)) throw ValidationError("omega0", "must be > 0");
    if (!std::isfinite(m.lambda) || m.lambda < 0.0 || m.lambda >= 1.0)
        throw ValidationError("lambda", "must satisfy 0 <= lambda < 1");
    if (!std::isfinite(m.delta_s) || !(m.delta_s > 0.0) || !(m.delta_s < m.omega0))
        throw ValidationError("delta_s", "must satisfy 0 < delta_s < omega0");
}

std::vector<std::string> warnings(const ModulationParams& m) {
    std::vector<std::string> out;
    if (m.lambda > 0.3) out.push_back("lambda > 0.3: small-amplitude sideband weights are inaccurate");
    return out;
}

std::vector<Sideband> sideband_weights(const ModulationParams& m, int q_max, WeightMode mode) {
    if (q_max < 1) throw UsageError("sideband_weights: q_max must be >= 1");
    std::vector<Sideband> out;
    out.reserve(2 * static_cast<std::size_t>(q_max) + 1);
    const double l2 = m.lambda * m.lambda;
    for (int q = -q_max; q <= q_max; ++q) {
        double p = 0.0;
        if (mode == WeightMode::Exact) {
            // J_{-q} = (-1)^q J_q, so the squares agree.
            const double j = std::cyl_bessel_j(static_cast<double>(std::abs(q)), m.lambda);
            p = j * j;
        } else if (q == 0) {
            p = 1.0 - 0.5 * l2;
        } else if (std::abs(q) == 1) {
            p = 0.25 * l2;
        }
        out.push_back({q, m.omega0 + q * m.delta_s, p});
    }
    return out;
}

std::vector<SidebandFrequency> sideband_frequencies(const ModulationParams& m, int q_max) {
    if (q_max < 1) throw UsageError("sideband_frequencies: q_max must be >= 1");
    std::vector<SidebandFrequency> out;
    for (int q = -q_max; q <= q_max; ++q) {
        const double w = m.omega0 + q * m.delta_s;
        out.push_back({q, w, !(w > 0.0)});
    }
    return out;
}

} // namespace azhm::floquet

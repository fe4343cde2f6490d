// response.hpp - finite-time response integrals of a bath spectrum with the
// sinc kernel sin((nu - omega) t) / (nu - omega)

#pragma once

#include "azhm/spectra.hpp"

#include <optional>
#include <span>
#include <vector>

namespace azhm::response {

struct QuadConfig {
    double rel_tol{1e-8};
    double abs_tol{1e-12};
    int max_subdivisions{2000};
    bool oscillation_splitting{true};
};

// Throws ValidationError ("rel_tol", "abs_tol", "max_subdivisions").
void validate(const QuadConfig& q);

enum class ImagPart { None, Plus, Minus };

struct ResponseValue {
    double real_part{0.0};
    std::optional<double> imag_part;
    double omega{0.0};
    double t{0.0};
    double error_estimate{0.0};
};

// sin((nu - omega) t) / (nu - omega); equals t at nu = omega.
double sinc_kernel(double nu, double omega, double t);

// I(omega, t) over the whole real line. With ImagPart::Plus/Minus also
// returns +-int G(nu) [cos((nu - omega) t) - 1] / (nu - omega) dnu.
// Throws UsageError for t <= 0 and NumericalError when the tolerance can't
// be met.
ResponseValue convolve_response(const spectra::SpectralDensity& f, double omega, double t, const QuadConfig& q,
                                ImagPart imag = ImagPart::None);

// pi G(omega).
double markovian_response(const spectra::SpectralDensity& f, double omega);

// convolve_response at each time of a strictly increasing positive grid.
std::vector<ResponseValue> response_profile(const spectra::SpectralDensity& f, double omega,
                                            std::span<const double> t_grid, const QuadConfig& q,
                                            ImagPart imag = ImagPart::None);

} // namespace azhm::response

// spectra.hpp - hot/cold bath spectral functions with KMS extension

#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace azhm::spectra {

enum class BathSide { Hot, Cold };

const char* to_string(BathSide side) noexcept;

// One term of the multi-peak quasi-Lorentzian family.
struct LorentzPeak {
    double weight{1.0}; // c_r >= 0
    double shift{0.0};  // detuning of the peak from the sideband frequency
    double width{1.0};  // Gamma_B,r > 0
};

struct QuasiLorentzianSpec {
    double gamma0{1.0};
    std::vector<LorentzPeak> peaks{LorentzPeak{}};
    double epsilon{0.01};
};

struct SuperOhmicSpec {
    double gamma0{1.0};
    double s{2.0};
    double nu_bar{1.0};
    double delta{0.1};
    double epsilon{0.1};
};

using SpectralModel = std::variant<QuasiLorentzianSpec, SuperOhmicSpec>;

// A closed piece of the real line the integrand lives on. `lo_open`/`hi_open`
// mark bounds that come from tail truncation (the density decays smoothly
// past them) rather than from a step function.
struct SupportInterval {
    double lo{0.0};
    double hi{0.0};
    bool lo_open{false};
    bool hi_open{false};
};

// Anything that can be convolved with the sinc kernel. SpectralFunction is the
// production implementation; tests plug in doubles through this interface.
class SpectralDensity {
public:
    virtual ~SpectralDensity() = default;

    // Density on the whole real line, negative branch included.
    virtual double operator()(double nu) const = 0;
    virtual double beta() const = 0;
    // Disjoint, sorted intervals outside of which the density is negligible.
    virtual std::vector<SupportInterval> integration_support() const = 0;
    // Peaks and step edges on the whole line; used as quadrature breakpoints.
    virtual std::vector<double> features() const = 0;
    // Widest spectral feature (sets the quadrature core window).
    virtual double feature_width() const = 0;
};

class SpectralFunction final : public SpectralDensity {
public:
    // Throws ValidationError (field names relative to the model) on any
    // violated structural invariant.
    SpectralFunction(BathSide side, SpectralModel model, double beta, double omega0, double delta_s);

    double operator()(double nu) const override;
    double beta() const override { return beta_; }
    std::vector<SupportInterval> integration_support() const override;
    std::vector<double> features() const override;
    double feature_width() const override;

    // One-sided density for nu >= 0 (no KMS factor).
    double positive_branch(double nu) const;

    BathSide side() const noexcept { return side_; }
    const SpectralModel& model() const noexcept { return model_; }
    double omega0() const noexcept { return omega0_; }
    double delta_s() const noexcept { return delta_s_; }
    double gamma0() const noexcept;
    // Frequency guard epsilon of the model.
    double epsilon() const noexcept;

    // Step-function support on the positive axis, (lo, hi); hi may be +inf.
    SupportInterval step_support() const noexcept { return step_; }
    // Smallest interval of the positive axis outside which G < 1e-12 gamma0.
    SupportInterval effective_support() const noexcept { return effective_; }

private:
    BathSide side_;
    SpectralModel model_;
    double beta_;
    double omega0_;
    double delta_s_;
    SupportInterval step_;
    SupportInterval effective_;
};

// Evaluates the spectral density at nu (total on the reals, 0 at nu = 0).
inline double eval_spectral(const SpectralFunction& f, double nu) { return f(nu); }

// Detailed balance G(-nu) = G(nu) exp(-nu beta) on every grid point, to
// 1e-12 max(1, G(nu)). Throws UsageError on an empty grid or nu <= 0.
bool check_kms(const SpectralDensity& f, std::span<const double> grid);

// G_h(omega0 + nu) == G_c(omega0 - nu) within 1e-12 for grid nu in
// [0, omega0 - epsilon_c); points outside that range are skipped. The band
// omega0 - epsilon_c <= nu < omega0 maps onto the cold bath's zero-frequency
// guard and is excluded. Throws UsageError on mismatched omega0 / delta_s or
// when the sides are not (Hot, Cold).
bool check_mutual_symmetry(const SpectralFunction& hot, const SpectralFunction& cold,
                           std::span<const double> grid);

// Nominal bath memory time: 1 / min width for quasi-Lorentzian, 1 / nu_bar
// for super-Ohmic.
double correlation_time(const SpectralFunction& f);

} // namespace azhm::spectra

// spectra.cpp - quasi-Lorentzian and super-Ohmic bath spectra

#include "azhm/spectra.hpp"

#include "azhm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace azhm::spectra {

namespace {

constexpr double kSupportThreshold = 1e-12; // relative to gamma0
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ValidationError(field, what);
}

bool finite(double x) { return std::isfinite(x); }

double lorentz_center(BathSide side, double omega0, double delta_s, const LorentzPeak& p) {
    return side == BathSide::Hot ? omega0 + delta_s + p.shift : omega0 - delta_s - p.shift;
}

// Super-Ohmic shape x^s e^{-x/nu_bar} / nu_bar^{s-1}, x >= 0 (gamma0 excluded).
double ohmic_shape(const SuperOhmicSpec& m, double x) {
    if (x <= 0.0) return 0.0;
    return std::pow(x, m.s) / std::pow(m.nu_bar, m.s - 1.0) * std::exp(-x / m.nu_bar);
}

double ohmic_origin(BathSide side, double omega0, double delta_s, const SuperOhmicSpec& m) {
    return side == BathSide::Hot ? omega0 + delta_s - m.delta : omega0 - delta_s + m.delta;
}

// Bisection for the crossing of a monotone function with the threshold.
template <class F>
double bisect(F&& f, double lo, double hi, double level) {
    const bool rising = f(lo) < f(hi);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const bool above = f(mid) >= level;
        if (above == rising)
            hi = mid;
        else
            lo = mid;
    }
    return rising ? hi : lo;
}

// Offsets [x_lo, x_hi] from the origin where the super-Ohmic shape exceeds
// the threshold; empty (x_lo > x_hi) if it never does.
std::pair<double, double> ohmic_range(const SuperOhmicSpec& m) {
    const double level = kSupportThreshold;
    const double xpk = m.s * m.nu_bar;
    if (ohmic_shape(m, xpk) < level) return {1.0, 0.0};
    auto f = [&](double x) { return ohmic_shape(m, x); };
    const double x_lo = bisect(f, 0.0, xpk, level);
    double top = 2.0 * xpk;
    while (f(top) >= level) top *= 2.0;
    const double x_hi = bisect(f, xpk, top, level);
    return {x_lo, x_hi};
}

void validate(BathSide side, const SpectralModel& model, double beta, double omega0, double delta_s) {
    require(finite(beta) && beta >= 0.0, "beta", "must be finite and >= 0");
    require(finite(omega0) && omega0 > 0.0, "omega0", "must be > 0");
    require(finite(delta_s) && delta_s > 0.0 && delta_s < omega0, "delta_s", "must satisfy 0 < delta_s < omega0");
    std::visit(overloaded{
                   [&](const QuasiLorentzianSpec& m) {
                       require(finite(m.gamma0) && m.gamma0 > 0.0, "gamma0", "must be > 0");
                       require(!m.peaks.empty(), "peaks", "at least one peak required");
                       require(finite(m.epsilon) && m.epsilon > 0.0, "epsilon", "must be > 0");
                       require(2.0 * m.epsilon < omega0, "epsilon", "must be below omega0 / 2");
                       bool any = false;
                       for (std::size_t r = 0; r < m.peaks.size(); ++r) {
                           const auto& p = m.peaks[r];
                           const std::string base = "peaks[" + std::to_string(r) + "]";
                           require(finite(p.weight) && p.weight >= 0.0, base + ".weight", "must be >= 0");
                           require(finite(p.shift), base + ".shift", "must be finite");
                           require(finite(p.width) && p.width > 0.0, base + ".width", "must be > 0");
                           any = any || p.weight > 0.0;
                       }
                       require(any, "peaks", "at least one weight must be > 0");
                       (void)side;
                   },
                   [&](const SuperOhmicSpec& m) {
                       require(finite(m.gamma0) && m.gamma0 > 0.0, "gamma0", "must be > 0");
                       require(finite(m.s) && m.s > 1.0, "s", "must be > 1");
                       require(finite(m.nu_bar) && m.nu_bar > 0.0, "nu_bar", "must be > 0");
                       require(finite(m.epsilon) && m.epsilon > 0.0, "epsilon", "must be > 0");
                       const double cap = 0.5 * std::min(delta_s, omega0 - delta_s);
                       require(finite(m.delta) && m.delta > 0.0 && m.delta < cap, "delta",
                               "must satisfy 0 < delta < min(delta_s, omega0 - delta_s) / 2");
                       require(omega0 - delta_s + m.delta > m.epsilon, "epsilon",
                               "must lie below the cold support edge omega0 - delta_s + delta");
                   },
               },
               model);
}

} // namespace

const char* to_string(BathSide side) noexcept { return side == BathSide::Hot ? "hot" : "cold"; }

SpectralFunction::SpectralFunction(BathSide side, SpectralModel model, double beta, double omega0,
                                   double delta_s)
    : side_(side), model_(std::move(model)), beta_(beta), omega0_(omega0), delta_s_(delta_s) {
    validate(side_, model_, beta_, omega0_, delta_s_);

    std::visit(overloaded{
                   [&](const QuasiLorentzianSpec& m) {
                       if (side_ == BathSide::Hot)
                           step_ = {omega0_ + m.epsilon, kInf, false, false};
                       else
                           step_ = {m.epsilon, omega0_ - m.epsilon, false, false};
                       const double n = static_cast<double>(m.peaks.size());
                       double lo = kInf, hi = -kInf;
                       for (const auto& p : m.peaks) {
                           const double ratio = p.weight / n / kSupportThreshold;
                           if (ratio <= 1.0) continue;
                           const double hw = p.width * std::sqrt(ratio - 1.0);
                           const double c = lorentz_center(side_, omega0_, delta_s_, p);
                           lo = std::min(lo, c - hw);
                           hi = std::max(hi, c + hw);
                       }
                       effective_ = step_;
                       if (lo < hi) {
                           if (lo > step_.lo) effective_ = {lo, effective_.hi, true, effective_.hi_open};
                           if (hi < step_.hi) effective_ = {effective_.lo, hi, effective_.lo_open, true};
                           if (effective_.lo >= effective_.hi) effective_ = {step_.lo, step_.lo, false, false};
                       }
                   },
                   [&](const SuperOhmicSpec& m) {
                       const double origin = ohmic_origin(side_, omega0_, delta_s_, m);
                       const auto [x_lo, x_hi] = ohmic_range(m);
                       if (side_ == BathSide::Hot) {
                           step_ = {origin, kInf, false, false};
                           effective_ = x_lo <= x_hi ? SupportInterval{origin + x_lo, origin + x_hi, false, true}
                                                     : SupportInterval{origin, origin, false, false};
                       } else {
                           step_ = {m.epsilon, origin, false, false};
                           if (x_lo > x_hi) {
                               effective_ = {origin, origin, false, false};
                           } else {
                               const double lo = origin - x_hi;
                               effective_ = lo > m.epsilon ? SupportInterval{lo, origin - x_lo, true, false}
                                                           : SupportInterval{m.epsilon, origin - x_lo, false, false};
                           }
                       }
                   },
               },
               model_);
}

double SpectralFunction::gamma0() const noexcept {
    return std::visit([](const auto& m) { return m.gamma0; }, model_);
}

double SpectralFunction::epsilon() const noexcept {
    return std::visit([](const auto& m) { return m.epsilon; }, model_);
}

double SpectralFunction::positive_branch(double nu) const {
    // Theta(0) = 0: the supports are open.
    if (!(nu > step_.lo && nu < step_.hi)) return 0.0;
    return std::visit(overloaded{
                          [&](const QuasiLorentzianSpec& m) {
                              double acc = 0.0;
                              for (const auto& p : m.peaks) {
                                  const double d = lorentz_center(side_, omega0_, delta_s_, p) - nu;
                                  const double g2 = p.width * p.width;
                                  acc += p.weight * m.gamma0 * g2 / (d * d + g2);
                              }
                              return acc / static_cast<double>(m.peaks.size());
                          },
                          [&](const SuperOhmicSpec& m) {
                              const double origin = ohmic_origin(side_, omega0_, delta_s_, m);
                              const double x = side_ == BathSide::Hot ? nu - origin : origin - nu;
                              return m.gamma0 * ohmic_shape(m, x);
                          },
                      },
                      model_);
}

double SpectralFunction::operator()(double nu) const {
    if (nu > 0.0) return positive_branch(nu);
    if (nu < 0.0) return positive_branch(-nu) * std::exp(nu * beta_);
    return 0.0;
}

std::vector<SupportInterval> SpectralFunction::integration_support() const {
    const SupportInterval& e = effective_;
    if (!(e.lo < e.hi)) return {};
    // The open side of a super-Ohmic onset is exact; keep the step edge so
    // the kink lands on a panel boundary.
    SupportInterval pos = e;
    if (std::holds_alternative<SuperOhmicSpec>(model_)) {
        if (side_ == BathSide::Hot)
            pos.lo = step_.lo;
        else
            pos.hi = step_.hi;
    }
    SupportInterval neg{-pos.hi, -pos.lo, pos.hi_open, pos.lo_open};
    return {neg, pos};
}

std::vector<double> SpectralFunction::features() const {
    std::vector<double> out;
    auto add = [&](double x) {
        if (std::isfinite(x)) {
            out.push_back(x);
            out.push_back(-x);
        }
    };
    add(step_.lo);
    add(step_.hi);
    std::visit(overloaded{
                   [&](const QuasiLorentzianSpec& m) {
                       for (const auto& p : m.peaks) {
                           const double c = lorentz_center(side_, omega0_, delta_s_, p);
                           if (c > step_.lo && c < step_.hi) add(c);
                       }
                   },
                   [&](const SuperOhmicSpec& m) {
                       const double origin = ohmic_origin(side_, omega0_, delta_s_, m);
                       const double pk = side_ == BathSide::Hot ? origin + m.s * m.nu_bar : origin - m.s * m.nu_bar;
                       if (pk > step_.lo && pk < step_.hi) add(pk);
                   },
               },
               model_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double SpectralFunction::feature_width() const {
    return std::visit(overloaded{
                          [](const QuasiLorentzianSpec& m) {
                              double w = 0.0;
                              for (const auto& p : m.peaks) w = std::max(w, p.width);
                              return w;
                          },
                          [](const SuperOhmicSpec& m) { return m.s * m.nu_bar; },
                      },
                      model_);
}

bool check_kms(const SpectralDensity& f, std::span<const double> grid) {
    if (grid.empty()) throw UsageError("check_kms: empty grid");
    const double beta = f.beta();
    for (double nu : grid) {
        if (!(nu > 0.0)) throw UsageError("check_kms: grid points must be > 0");
        const double g = f(nu);
        if (std::abs(f(-nu) - g * std::exp(-nu * beta)) > 1e-12 * std::max(1.0, g)) return false;
    }
    return true;
}

bool check_mutual_symmetry(const SpectralFunction& hot, const SpectralFunction& cold,
                           std::span<const double> grid) {
    if (hot.side() != BathSide::Hot || cold.side() != BathSide::Cold)
        throw UsageError("check_mutual_symmetry: expected a (hot, cold) pair");
    if (hot.omega0() != cold.omega0()) throw UsageError("check_mutual_symmetry: omega0 differs");
    if (hot.delta_s() != cold.delta_s()) throw UsageError("check_mutual_symmetry: delta_s differs");
    const double w0 = hot.omega0();
    const double band = w0 - cold.epsilon();
    for (double nu : grid) {
        if (!(nu >= 0.0 && nu < band)) continue;
        if (std::abs(hot(w0 + nu) - cold(w0 - nu)) > 1e-12) return false;
    }
    return true;
}

double correlation_time(const SpectralFunction& f) {
    return std::visit(overloaded{
                          [](const QuasiLorentzianSpec& m) {
                              double w = kInf;
                              for (const auto& p : m.peaks) w = std::min(w, p.width);
                              return 1.0 / w;
                          },
                          [](const SuperOhmicSpec& m) { return 1.0 / m.nu_bar; },
                      },
                      f.model());
}

} // namespace azhm::spectra

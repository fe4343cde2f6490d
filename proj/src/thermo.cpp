// thermo.cpp - currents, averages and sweeps

#include "azhm/thermo.hpp"

#include "azhm/errors.hpp"
#include "azhm/parallel.hpp"

#include <cmath>
#include <limits>

namespace azhm::thermo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Averages undefined_averages() { return {kNaN, kNaN, kNaN, kNaN, kNaN, Regime::Idle}; }

// Simpson mean over [0, tau_C] of samples on the half-step grid.
double simpson_mean(const std::vector<double>& f, double h) {
    const std::size_t n = f.size() - 1; // even
    double acc = f.front() + f.back();
    for (std::size_t j = 1; j < n; ++j) acc += (j % 2 == 1 ? 4.0 : 2.0) * f[j];
    return acc * h / 3.0 / (h * static_cast<double>(n));
}

struct MeanResponse {
    double Ih{0.0};
    double Ic{0.0};
};

MeanResponse mean_response(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                           const floquet::ModulationParams& m, const dynamics::CycleConfig& cfg,
                           const response::QuadConfig& q) {
    const double dt = m.tau_s() / cfg.oversample;
    const std::size_t half = 2 * static_cast<std::size_t>(cfg.n) * static_cast<std::size_t>(cfg.oversample);
    std::vector<double> times(half);
    for (std::size_t j = 1; j <= half; ++j) times[j - 1] = 0.5 * dt * static_cast<double>(j);
    const auto ih = response::response_profile(hot, m.omega0 + m.delta_s, times, q);
    const auto ic = response::response_profile(cold, m.omega0 - m.delta_s, times, q);
    std::vector<double> fh(half + 1, 0.0), fc(half + 1, 0.0);
    for (std::size_t j = 1; j <= half; ++j) {
        fh[j] = ih[j - 1].real_part;
        fc[j] = ic[j - 1].real_part;
    }
    return {simpson_mean(fh, 0.5 * dt), simpson_mean(fc, 0.5 * dt)};
}

Averages averages_from(const floquet::ModulationParams& m, double beta_h, double beta_c, double Ih, double Ic,
                       double tol) {
    const double w = dynamics::steady_state_w(m, beta_h, beta_c);
    const InstantCurrents c = currents_from_response(m, beta_h, beta_c, w, Ih, Ic, 0.0);
    return finish_averages(c.J_h, c.J_c, c.W_dot, tol);
}

PerformanceRecord evaluate(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                           const floquet::ModulationParams& m, double beta_h, double beta_c,
                           const dynamics::CycleConfig& cfg, const response::QuadConfig& q, double tol,
                           SweepMode mode) {
    PerformanceRecord r;
    r.delta_s = m.delta_s;
    r.azd = undefined_averages();
    r.markov = undefined_averages();
    if (mode != SweepMode::AzdOnly) {
        const double Ih = response::markovian_response(hot, m.omega0 + m.delta_s);
        const double Ic = response::markovian_response(cold, m.omega0 - m.delta_s);
        r.markov = averages_from(m, beta_h, beta_c, Ih, Ic, tol);
    }
    if (mode != SweepMode::MarkovOnly) {
        const MeanResponse mr = mean_response(hot, cold, m, cfg, q);
        r.azd = averages_from(m, beta_h, beta_c, mr.Ih, mr.Ic, tol);
    }
    fill_boosts(r);
    return r;
}

} // namespace

InstantCurrents currents_from_response(const floquet::ModulationParams& m, double beta_h, double beta_c, double w,
                                       double Ih, double Ic, double t) {
    if (!(w >= 0.0)) throw UsageError("heat_currents: w must be >= 0");
    const double k = 0.25 * m.lambda * m.lambda;
    const double wp = m.omega0 + m.delta_s;
    const double wm = m.omega0 - m.delta_s;
    InstantCurrents c;
    c.t = t;
    c.J_h = k * wp * Ih * (std::exp(-wp * beta_h) - w) / (w + 1.0);
    c.J_c = k * wm * Ic * (std::exp(-wm * beta_c) - w) / (w + 1.0);
    c.W_dot = -(c.J_h + c.J_c);
    return c;
}

InstantCurrents heat_currents(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                              const floquet::ModulationParams& m, double w, double t, const response::QuadConfig& q) {
    if (!(t > 0.0)) throw UsageError("heat_currents: t must be > 0");
    const double Ih = response::convolve_response(hot, m.omega0 + m.delta_s, t, q).real_part;
    const double Ic = response::convolve_response(cold, m.omega0 - m.delta_s, t, q).real_part;
    return currents_from_response(m, hot.beta(), cold.beta(), w, Ih, Ic, t);
}

const char* to_string(Regime r) noexcept {
    switch (r) {
    case Regime::HeatEngine:
        return "HE";
    case Regime::Refrigerator:
        return "QR";
    case Regime::Idle:
        break;
    }
    return "idle";
}

double default_tolerance(const spectra::SpectralFunction& hot, const floquet::ModulationParams& m) {
    return 1e-9 * hot.gamma0() * m.omega0;
}

Regime classify_regime(double Jh, double Jc, double W, double tol) {
    if (Jh > tol && Jc < -tol && W < -tol) return Regime::HeatEngine;
    if (Jc > tol && Jh < -tol && W > tol) return Regime::Refrigerator;
    return Regime::Idle;
}

Regime classify_regime(const Averages& a, double tol) { return classify_regime(a.Jh, a.Jc, a.W, tol); }

Averages finish_averages(double Jh, double Jc, double W, double tol) {
    Averages a{Jh, Jc, W, kNaN, kNaN, classify_regime(Jh, Jc, W, tol)};
    if (a.regime == Regime::HeatEngine) a.eta = -W / Jh;
    if (a.regime == Regime::Refrigerator) a.cop = Jc / W;
    return a;
}

void fill_boosts(PerformanceRecord& r) {
    r.boost_power = (r.azd.W < 0.0 && r.markov.W < 0.0) ? r.azd.W / r.markov.W : kNaN;
    r.boost_cooling = (r.azd.Jc > 0.0 && r.markov.Jc > 0.0) ? r.azd.Jc / r.markov.Jc : kNaN;
}

double quantum_speed_limit(double omega0, double T_h, double T_c) {
    if (!(T_c > 0.0) || !(T_h > T_c)) throw UsageError("quantum_speed_limit: requires T_h > T_c > 0");
    return omega0 * (T_h - T_c) / (T_h + T_c);
}

PerformanceRecord average_over_stroke(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                                      const floquet::ModulationParams& m, double beta_h, double beta_c,
                                      const dynamics::CycleConfig& cfg, const response::QuadConfig& q,
                                      std::optional<double> tol) {
    floquet::validate(m);
    dynamics::validate(cfg);
    return evaluate(hot, cold, m, beta_h, beta_c, cfg, q, tol ? *tol : default_tolerance(hot, m), SweepMode::Both);
}

std::vector<PerformanceRecord> sweep_modulation(const SweepInput& in, const std::vector<double>& delta_grid) {
    if (!in.spectra) throw UsageError("sweep_modulation: no spectra factory");
    if (delta_grid.empty()) throw UsageError("sweep_modulation: empty grid");
    dynamics::validate(in.cycle);
    response::validate(in.quad);
    std::vector<PerformanceRecord> out(delta_grid.size());
    const int threads = in.threads > 0 ? in.threads : default_threads();
    parallel_for(delta_grid.size(), threads, [&](std::size_t i) {
        PerformanceRecord& r = out[i];
        r.delta_s = delta_grid[i];
        r.azd = undefined_averages();
        r.markov = undefined_averages();
        r.boost_power = r.boost_cooling = kNaN;
        try {
            const floquet::ModulationParams m{in.omega0, in.lambda, delta_grid[i]};
            floquet::validate(m);
            const auto hot = in.spectra->hot(m.delta_s);
            const auto cold = in.spectra->cold(m.delta_s);
            r = evaluate(hot, cold, m, in.beta_h, in.beta_c, in.cycle, in.quad, default_tolerance(hot, m), in.mode);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });
    return out;
}

} // namespace azhm::thermo

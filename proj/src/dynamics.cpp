// dynamics.cpp - RK4 population dynamics and steady states

#include "azhm/dynamics.hpp"

#include "azhm/errors.hpp"

#include <cmath>
#include <sstream>

namespace azhm::dynamics {

namespace {

constexpr double kBoundSlack = 1e-9;

double kappa(const floquet::ModulationParams& m) { return 0.25 * m.lambda * m.lambda; }

double drift(double p1, double R0, double R1, double k) { return k * (R0 * (1.0 - p1) - R1 * p1); }

void check_bounds(double p1, double t) {
    if (!(p1 >= -kBoundSlack && p1 <= 1.0 + kBoundSlack)) {
        std::ostringstream os;
        os << "evolve: p1 = " << p1 << " left [0, 1] at t = " << t;
        throw NumericalError(os.str(), p1, 0.0);
    }
}

} // namespace

MachineState make_state(double p1, double t) { return {p1, 1.0 - p1, t}; }

void validate(const CycleConfig& cfg) {
    if (cfg.n < 1) throw ValidationError("n", "must be >= 1");
    if (cfg.tbar && !(*cfg.tbar >= 0.0 && std::isfinite(*cfg.tbar))) throw ValidationError("tbar", "must be >= 0");
    if (cfg.cycles < 1) throw ValidationError("cycles", "must be >= 1");
    if (cfg.oversample < 2) throw ValidationError("oversample", "must be >= 2");
}

double bath_time(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold) {
    return std::max(spectra::correlation_time(hot), spectra::correlation_time(cold));
}

double gap_duration(const CycleConfig& cfg, double tau_b) { return cfg.tbar ? *cfg.tbar : 2.0 * tau_b; }

std::vector<std::string> config_warnings(const CycleConfig& cfg, const floquet::ModulationParams& m,
                                         double tau_b, double beta_h, double beta_c) {
    std::vector<std::string> out;
    const double tau_c = cfg.n * m.tau_s();
    if (gap_duration(cfg, tau_b) < tau_b) out.push_back("decoupling gap shorter than the bath memory time");
    if (cfg.n < 5) out.push_back("fewer than 5 modulation periods per stroke");
    // 1/tau_C must be small against both temperatures and below omega0 - delta_s.
    const double rate = 1.0 / tau_c;
    if (beta_c > 0.0 && rate > 0.1 / beta_c) out.push_back("1/tau_C is not small against T_c");
    if (beta_h > 0.0 && rate > 0.1 / beta_h) out.push_back("1/tau_C is not small against T_h");
    if (!(rate < m.omega0 - m.delta_s)) out.push_back("1/tau_C exceeds omega0 - delta_s");
    for (auto& w : floquet::warnings(m)) out.push_back(std::move(w));
    return out;
}

RatePair rates(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
               const floquet::ModulationParams& m, double t, const response::QuadConfig& q) {
    const double wp = m.omega0 + m.delta_s;
    const double wm = m.omega0 - m.delta_s;
    RatePair r;
    r.t = t;
    r.R0 = response::convolve_response(hot, -wp, t, q).real_part + response::convolve_response(cold, -wm, t, q).real_part;
    r.R1 = response::convolve_response(hot, wp, t, q).real_part + response::convolve_response(cold, wm, t, q).real_part;
    return r;
}

RatePair markov_rates(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                      const floquet::ModulationParams& m) {
    const double wp = m.omega0 + m.delta_s;
    const double wm = m.omega0 - m.delta_s;
    RatePair r;
    r.R0 = response::markovian_response(hot, -wp) + response::markovian_response(cold, -wm);
    r.R1 = response::markovian_response(hot, wp) + response::markovian_response(cold, wm);
    return r;
}

double steady_state_w(const floquet::ModulationParams& m, double beta_h, double beta_c) {
    if (!(m.omega0 - m.delta_s > 0.0)) throw UsageError("steady_state_w: omega0 - delta_s must be > 0");
    return 0.5 * (std::exp(-beta_h * (m.omega0 + m.delta_s)) + std::exp(-beta_c * (m.omega0 - m.delta_s)));
}

double steady_state_w_general(double Ih, double Ic, const floquet::ModulationParams& m, double beta_h,
                              double beta_c) {
    if (!(Ih + Ic > 0.0)) throw DegenerateInputError("steady_state_w_general: Ih + Ic must be > 0");
    const double eh = std::exp(-beta_h * (m.omega0 + m.delta_s));
    const double ec = std::exp(-beta_c * (m.omega0 - m.delta_s));
    return (eh * Ih + ec * Ic) / (Ih + Ic);
}

StrokeRates stroke_rates(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                         const floquet::ModulationParams& m, const CycleConfig& cfg, const response::QuadConfig& q,
                         RateModel model) {
    validate(cfg);
    StrokeRates out;
    out.dt = m.tau_s() / cfg.oversample;
    const std::size_t half = 2 * static_cast<std::size_t>(cfg.n) * static_cast<std::size_t>(cfg.oversample);
    out.half_steps.resize(half + 1);
    for (std::size_t j = 0; j <= half; ++j) out.half_steps[j].t = 0.5 * out.dt * static_cast<double>(j);
    if (model == RateModel::Markov) {
        const RatePair r = markov_rates(hot, cold, m);
        for (auto& p : out.half_steps) {
            p.R0 = r.R0;
            p.R1 = r.R1;
        }
        return out;
    }
    std::vector<double> times(half);
    for (std::size_t j = 1; j <= half; ++j) times[j - 1] = out.half_steps[j].t;
    const double wp = m.omega0 + m.delta_s;
    const double wm = m.omega0 - m.delta_s;
    const auto h_up = response::response_profile(hot, -wp, times, q);
    const auto c_up = response::response_profile(cold, -wm, times, q);
    const auto h_dn = response::response_profile(hot, wp, times, q);
    const auto c_dn = response::response_profile(cold, wm, times, q);
    for (std::size_t j = 1; j <= half; ++j) {
        out.half_steps[j].R0 = h_up[j - 1].real_part + c_up[j - 1].real_part;
        out.half_steps[j].R1 = h_dn[j - 1].real_part + c_dn[j - 1].real_part;
    }
    return out;
}

std::vector<TracePoint> evolve(const StrokeRates& rates, const floquet::ModulationParams& m, const CycleConfig& cfg,
                               double gap, const MachineState& init) {
    validate(cfg);
    const std::size_t steps = (rates.half_steps.size() - 1) / 2;
    const double k = kappa(m);
    const double dt = rates.dt;
    std::vector<TracePoint> out;
    out.reserve(static_cast<std::size_t>(cfg.cycles) * (steps + 2) + 1);
    double p1 = init.p1;
    double clock = init.t;
    for (int c = 0; c < cfg.cycles; ++c) {
        const double t0 = clock;
        out.push_back({make_state(p1, t0), rates.half_steps[0].R0, rates.half_steps[0].R1, c});
        for (std::size_t i = 0; i < steps; ++i) {
            const RatePair& a = rates.half_steps[2 * i];
            const RatePair& b = rates.half_steps[2 * i + 1];
            const RatePair& e = rates.half_steps[2 * i + 2];
            const double k1 = drift(p1, a.R0, a.R1, k);
            const double k2 = drift(p1 + 0.5 * dt * k1, b.R0, b.R1, k);
            const double k3 = drift(p1 + 0.5 * dt * k2, b.R0, b.R1, k);
            const double k4 = drift(p1 + dt * k3, e.R0, e.R1, k);
            p1 += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            const double t = t0 + dt * static_cast<double>(i + 1);
            check_bounds(p1, t);
            out.push_back({make_state(p1, t), e.R0, e.R1, c});
        }
        clock = t0 + dt * static_cast<double>(steps);
        if (gap > 0.0) {
            out.push_back({make_state(p1, clock), 0.0, 0.0, kGapStroke});
            clock += gap;
            out.push_back({make_state(p1, clock), 0.0, 0.0, kGapStroke});
        }
    }
    return out;
}

std::vector<TracePoint> evolve(const spectra::SpectralFunction& hot, const spectra::SpectralFunction& cold,
                               const floquet::ModulationParams& m, const CycleConfig& cfg, const MachineState& init,
                               const response::QuadConfig& q, const EvolveOptions& opt) {
    floquet::validate(m);
    validate(cfg);
    if (!(std::abs(init.p0 + init.p1 - 1.0) <= 1e-12) || init.p1 < 0.0 || init.p1 > 1.0)
        throw UsageError("evolve: initial state must be normalized with 0 <= p1 <= 1");
    const double gap = gap_duration(cfg, bath_time(hot, cold));
    std::vector<TracePoint> out;
    MachineState start = init;
    if (opt.transient > 0.0) {
        const RatePair r = markov_rates(hot, cold, m);
        const double k = kappa(m);
        const double dt = m.tau_s() / cfg.oversample;
        const auto steps = static_cast<long>(std::ceil(opt.transient / dt));
        double p1 = init.p1;
        double t = init.t - dt * static_cast<double>(steps);
        out.push_back({make_state(p1, t), r.R0, r.R1, kTransientStroke});
        for (long i = 0; i < steps; ++i) {
            const double k1 = drift(p1, r.R0, r.R1, k);
            const double k2 = drift(p1 + 0.5 * dt * k1, r.R0, r.R1, k);
            const double k3 = drift(p1 + 0.5 * dt * k2, r.R0, r.R1, k);
            const double k4 = drift(p1 + dt * k3, r.R0, r.R1, k);
            p1 += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
            check_bounds(p1, t);
            out.push_back({make_state(p1, t), r.R0, r.R1, kTransientStroke});
        }
        start = make_state(p1, init.t);
    }
    const StrokeRates sr = stroke_rates(hot, cold, m, cfg, q, opt.model);
    auto body = evolve(sr, m, cfg, gap, start);
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

} // namespace azhm::dynamics

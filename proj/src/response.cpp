// response.cpp - sinc-kernel convolution over the real line
//
// Work happens in x = nu - omega. Each support interval gets a core region
// (the kernel window plus the spectral features) split at kernel zeros and
// refined adaptively; what lies beyond is walked lobe by lobe. Tails that
// end at a truncation bound are summed as alternating series with Euler
// acceleration.

#include "azhm/response.hpp"

#include "azhm/errors.hpp"
#include "azhm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <numbers>
#include <string>

namespace azhm::response {

namespace {

using spectra::SpectralDensity;
using spectra::SupportInterval;

constexpr double kPi = std::numbers::pi;
constexpr long kLobeCap = 4'000'000;
constexpr int kCalmLobes = 3;

double real_kernel(double x, double t) {
    const double u = x * t;
    if (std::abs(u) < 1e-6) return t * (1.0 - u * u / 6.0);
    return std::sin(u) / x;
}

double imag_kernel(double x, double t) {
    const double u = x * t;
    if (std::abs(u) < 1e-4) return t * u * (-0.5 + u * u / 24.0);
    return (std::cos(u) - 1.0) / x;
}

// cos(pi xi / 2) at the 15 Kronrod nodes xi in node order.
const std::array<double, 15>& lobe_table() {
    static const std::array<double, 15> table = [] {
        std::array<double, 15> s{};
        for (int j = 0; j < 15; ++j) {
            const double xi = j < 7 ? -quad::kXgk[j] : (j == 7 ? 0.0 : quad::kXgk[14 - j]);
            s[j] = std::cos(0.5 * kPi * xi);
        }
        return s;
    }();
    return table;
}

// Support, breakpoints and feature width in x coordinates for one omega.
struct Geometry {
    std::vector<SupportInterval> support;
    std::vector<double> features;
    double width{0.0};
};

Geometry make_geometry(const SpectralDensity& f, double omega) {
    Geometry g;
    for (auto s : f.integration_support()) {
        if (!(s.lo < s.hi)) continue;
        s.lo -= omega;
        s.hi -= omega;
        g.support.push_back(s);
    }
    for (double x : f.features()) g.features.push_back(x - omega);
    g.width = f.feature_width();
    return g;
}

class Evaluator {
public:
    Evaluator(const SpectralDensity& f, double omega, const Geometry& g, const QuadConfig& q)
        : f_(f), omega_(omega), g_(g), q_(q) {}

    ResponseValue run(double t, ImagPart imag) {
        if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("convolve_response: t must be > 0");
        t_ = t;
        budget_ = q_.max_subdivisions;
        ResponseValue out;
        out.omega = omega_;
        out.t = t;
        const auto re = integrate(false);
        out.real_part = re.value;
        out.error_estimate = re.error;
        if (imag != ImagPart::None) {
            const auto im = integrate(true);
            out.imag_part = imag == ImagPart::Plus ? im.value : -im.value;
            out.error_estimate += im.error;
        }
        return out;
    }

private:
    struct Part {
        double value{0.0};
        double error{0.0};
    };
    struct Range {
        double lo{0.0};
        double hi{0.0};
    };

    double G(double x) const { return f_(omega_ + x); }

    // Kernel zeros: k pi / t for the sine, (k + 1/2) pi / t for the cosine.
    double zero(long k, bool imag) const { return (static_cast<double>(k) + (imag ? 0.5 : 0.0)) * kPi / t_; }

    Part integrate(bool imag) {
        const double half = std::max(40.0 / t_, 10.0 * g_.width);
        auto full = [&](double x) { return G(x) * (imag ? imag_kernel(x, t_) : real_kernel(x, t_)); };

        struct Tail {
            double start, end;
            bool open;
        };
        std::vector<quad::Panel> core_panels;
        std::vector<Tail> tails;

        for (const auto& s : g_.support) {
            Range core{1.0, 0.0};
            auto merge = [&](double lo, double hi) {
                lo = std::max(lo, s.lo);
                hi = std::min(hi, s.hi);
                if (!(lo < hi)) return;
                if (core.lo > core.hi) {
                    core = {lo, hi};
                } else {
                    core.lo = std::min(core.lo, lo);
                    core.hi = std::max(core.hi, hi);
                }
            };
            merge(-half, half);
            for (double x : g_.features) merge(x - 10.0 * g_.width, x + 10.0 * g_.width);

            if (core.lo <= core.hi) {
                add_core_panels(core, imag, core_panels, full);
                if (core.lo > s.lo) tails.push_back({core.lo, s.lo, s.lo_open});
                if (core.hi < s.hi) tails.push_back({core.hi, s.hi, s.hi_open});
            } else if (!s.lo_open) {
                tails.push_back({s.lo, s.hi, s.hi_open});
            } else if (!s.hi_open) {
                tails.push_back({s.hi, s.lo, s.lo_open});
            } else {
                const double mid = std::clamp(0.0, s.lo, s.hi);
                tails.push_back({mid, s.lo, true});
                tails.push_back({mid, s.hi, true});
            }
        }

        const auto core = quad::refine(full, std::move(core_panels), q_.abs_tol, q_.rel_tol, budget_);
        budget_ -= core.subdivisions;
        if (!core.converged)
            throw NumericalError("convolve_response: core quadrature did not converge at omega = " +
                                     std::to_string(omega_) + ", t = " + std::to_string(t_),
                                 core.value, core.error);

        quad::NeumaierSum total;
        total.add(core.value);
        double error = core.error;
        const double scale = std::abs(core.value);
        for (const auto& tail : tails) {
            const Part p = walk(tail.start, tail.end, tail.open, imag, scale, full);
            total.add(p.value);
            error += p.error;
            if (imag) {
                // Non-oscillating remainder -int G / x over the same stretch.
                const Part r = smooth_remainder(tail.start, tail.end, scale);
                total.add(r.value);
                error += r.error;
            }
        }
        return {total.value(), error};
    }

    template <class F>
    void add_core_panels(Range core, bool imag, std::vector<quad::Panel>& out, F& full) const {
        struct Break {
            double x;
            long k; // lobe index of a kernel zero, LONG_MIN otherwise
        };
        std::vector<Break> br;
        br.push_back({core.lo, LONG_MIN});
        br.push_back({core.hi, LONG_MIN});
        for (double x : g_.features)
            if (x > core.lo && x < core.hi) br.push_back({x, LONG_MIN});
        if (q_.oscillation_splitting) {
            const double period = kPi / t_;
            const long k0 = static_cast<long>(std::floor(core.lo / period)) + 1;
            const long k1 = static_cast<long>(std::ceil(core.hi / period)) - 1;
            if (k1 - k0 > kLobeCap)
                throw NumericalError("convolve_response: core spans too many kernel lobes", 0.0, 0.0);
            for (long k = k0; k <= k1; ++k) {
                const double z = static_cast<double>(k) * period;
                if (z > core.lo && z < core.hi) br.push_back({z, k});
            }
        }
        std::sort(br.begin(), br.end(), [](const Break& a, const Break& b) { return a.x < b.x; });
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            const Break& a = br[i];
            const Break& b = br[i + 1];
            if (!(a.x < b.x)) continue;
            if (!imag && a.k != LONG_MIN && b.k == a.k + 1)
                out.push_back(lobe_panel(a.k, false));
            else
                out.push_back(quad::gk15(full, a.x, b.x));
        }
    }

    // Panel over the m-th kernel lobe using tabulated trig values.
    quad::Panel lobe_panel(long m, bool imag) const {
        const double a = zero(m, imag);
        const double b = zero(m + 1, imag);
        const auto& tab = lobe_table();
        // sin over [m pi, (m+1) pi] or cos over [(m+1/2) pi, (m+3/2) pi].
        const long parity = imag ? m + 1 : m;
        const double sign = (parity % 2 == 0) ? 1.0 : -1.0;
        return quad::gk15_indexed([&](int j, double x) { return G(x) * sign * tab[j] / x; }, a, b);
    }

    template <class F>
    Part walk(double start, double end, bool open_end, bool imag, double scale, F& full) {
        const int dir = end > start ? 1 : -1;
        const double period = kPi / t_;
        const double off = imag ? 0.5 : 0.0;
        // Oscillating part only: cos(xt)/x in the imaginary case.
        auto osc = [&](double x) { return imag ? G(x) * std::cos(x * t_) / x : full(x); };

        long k = dir > 0 ? static_cast<long>(std::floor(start / period - off)) + 1
                         : static_cast<long>(std::ceil(start / period - off)) - 1;
        while (dir * (zero(k, imag) - start) <= 0.0) k += dir;

        quad::NeumaierSum sum;
        double err = 0.0;
        quad::EulerAccelerator acc;
        double prev = 0.0;
        bool have_prev = false;
        int calm = 0;
        double a = start;
        bool a_is_zero = false;
        for (long lobes = 0;; ++lobes) {
            if (lobes > kLobeCap)
                throw NumericalError("convolve_response: tail did not converge", sum.value(), err);
            const double z = zero(k, imag);
            const bool reached = dir * (z - end) >= 0.0;
            const double b = reached ? end : z;
            const double lo = std::min(a, b), hi = std::max(a, b);
            quad::Panel p;
            if (a_is_zero && !reached)
                p = lobe_panel(dir > 0 ? k - 1 : k, imag);
            else if (lo < hi)
                p = quad::gk15(osc, lo, hi);
            const double thr = threshold(scale, sum.value());
            if (p.error > thr) {
                const auto r = quad::refine(osc, {p}, thr, 0.0, budget_);
                budget_ -= r.subdivisions;
                if (!r.converged) throw NumericalError("convolve_response: tail panel did not converge", sum.value(), err);
                p.value = r.value;
                p.error = r.error;
            }
            sum.add(p.value);
            err += p.error;
            if (reached) return {sum.value(), err};
            if (open_end && a_is_zero) {
                acc.push(sum.value());
                if (acc.ready()) {
                    const double est = acc.estimate();
                    const double change = std::abs(est - prev);
                    if (have_prev && change < threshold(scale, est))
                        ++calm;
                    else
                        calm = 0;
                    prev = est;
                    have_prev = true;
                    if (calm >= kCalmLobes) return {est, err + change};
                }
            }
            a = z;
            a_is_zero = true;
            k += dir;
        }
    }

    Part smooth_remainder(double start, double end, double scale) {
        const double lo = std::min(start, end), hi = std::max(start, end);
        auto fx = [&](double x) { return -G(x) / x; };
        // Geometric breakpoints keep long stretches away from x = 0 cheap.
        std::vector<double> br{lo};
        if (lo > 0.0 || hi < 0.0) {
            const double near = std::min(std::abs(lo), std::abs(hi));
            const double far = std::max(std::abs(lo), std::abs(hi));
            const double sgn = lo > 0.0 ? 1.0 : -1.0;
            std::vector<double> mags;
            for (double m = 2.0 * near; m < far; m *= 2.0) mags.push_back(m);
            if (sgn < 0.0) std::reverse(mags.begin(), mags.end());
            for (double m : mags) br.push_back(sgn * m);
        }
        br.push_back(hi);
        std::vector<quad::Panel> panels;
        for (std::size_t i = 0; i + 1 < br.size(); ++i)
            if (br[i] < br[i + 1]) panels.push_back(quad::gk15(fx, br[i], br[i + 1]));
        const auto r = quad::refine(fx, std::move(panels), 0.1 * threshold(scale, 0.0), 0.1 * q_.rel_tol, budget_,
                                    scale);
        budget_ -= r.subdivisions;
        if (!r.converged) throw NumericalError("convolve_response: imaginary remainder did not converge", r.value, r.error);
        return {r.value, r.error};
    }

    double threshold(double scale, double running) const {
        return 0.1 * std::max(q_.abs_tol, q_.rel_tol * std::max(scale, std::abs(running)));
    }

    const SpectralDensity& f_;
    double omega_;
    const Geometry& g_;
    const QuadConfig& q_;
    double t_{0.0};
    int budget_{0};
};

} // namespace

void validate(const QuadConfig& q) {
    if (!(q.rel_tol > 0.0) || !std::isfinite(q.rel_tol)) throw ValidationError("rel_tol", "must be > 0");
    if (!(q.abs_tol > 0.0) || !std::isfinite(q.abs_tol)) throw ValidationError("abs_tol", "must be > 0");
    if (q.max_subdivisions < 16) throw ValidationError("max_subdivisions", "must be >= 16");
}

double sinc_kernel(double nu, double omega, double t) {
    if (t < 0.0) throw UsageError("sinc_kernel: t must be >= 0");
    return real_kernel(nu - omega, t);
}

ResponseValue convolve_response(const SpectralDensity& f, double omega, double t, const QuadConfig& q,
                                ImagPart imag) {
    validate(q);
    const Geometry g = make_geometry(f, omega);
    return Evaluator(f, omega, g, q).run(t, imag);
}

double markovian_response(const SpectralDensity& f, double omega) { return kPi * f(omega); }

std::vector<ResponseValue> response_profile(const SpectralDensity& f, double omega, std::span<const double> t_grid,
                                            const QuadConfig& q, ImagPart imag) {
    validate(q);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0)) throw UsageError("response_profile: times must be > 0");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw UsageError("response_profile: times must increase strictly");
    }
    const Geometry g = make_geometry(f, omega);
    Evaluator ev(f, omega, g, q);
    std::vector<ResponseValue> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back(ev.run(t, imag));
    return out;
}

} // namespace azhm::response

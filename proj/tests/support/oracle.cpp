// oracle.cpp - brute-force references for the response integrals

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace oracle {

namespace {

const long double kPiL = 3.141592653589793238462643383279502884L;
// Grid points per half kernel period (and per spectral width).
constexpr double kPointsPerLobe = 64.0;

double positive(const Spectrum& sp, double nu) {
    const double w0 = sp.omega0, D = sp.delta_s;
    if (sp.lorentzian) {
        const bool in = sp.hot ? nu > w0 + sp.epsilon : (nu > sp.epsilon && nu < w0 - sp.epsilon);
        if (!in) return 0.0;
        long double acc = 0.0L;
        for (std::size_t r = 0; r < sp.weight.size(); ++r) {
            const long double c = sp.hot ? w0 + D + sp.shift[r] : w0 - D - sp.shift[r];
            const long double g = sp.width[r];
            acc += sp.weight[r] * sp.gamma0 * g * g / ((c - nu) * (c - nu) + g * g);
        }
        return static_cast<double>(acc / sp.weight.size());
    }
    long double x;
    if (sp.hot) {
        x = static_cast<long double>(nu) - (w0 + D - sp.delta);
    } else {
        if (!(nu > sp.epsilon)) return 0.0;
        x = (w0 - D + sp.delta) - static_cast<long double>(nu);
    }
    if (!(x > 0)) return 0.0;
    return static_cast<double>(sp.gamma0 * std::pow(x, (long double)sp.s) /
                               std::pow((long double)sp.nu_bar, (long double)sp.s - 1) * std::exp(-x / sp.nu_bar));
}

// Step-function support of the positive branch.
std::pair<double, double> positive_support(const Spectrum& sp) {
    const double inf = std::numeric_limits<double>::infinity();
    const double w0 = sp.omega0, D = sp.delta_s;
    if (sp.lorentzian) return sp.hot ? std::pair{w0 + sp.epsilon, inf} : std::pair{sp.epsilon, w0 - sp.epsilon};
    // Cut the exponential tail where G has fallen below 1e-20 gamma0.
    double x = sp.s * sp.nu_bar;
    while (std::pow(x / sp.nu_bar, sp.s) * sp.nu_bar * std::exp(-x / sp.nu_bar) > 1e-20) x += sp.nu_bar;
    if (sp.hot) return {w0 + D - sp.delta, w0 + D - sp.delta + x};
    return {std::max(sp.epsilon, w0 - D + sp.delta - x), w0 - D + sp.delta};
}

using Kernel = std::function<double(double x)>;

// Romberg-corrected trapezoid over [a, b] with spacing close to h. A
// power-law onset at one end (onset = -1 at a, +1 at b) is smoothed with
// nu = a + (b - a) u^4 so the trapezoid sees an integrand with many
// continuous derivatives.
long double segment(const Spectrum& sp, double omega, const Kernel& k, double a, double b, double h, long& points,
                    int onset = 0) {
    long n = std::max(4L, static_cast<long>(std::ceil((b - a) / h)));
    if (onset != 0) n *= 4;
    n = (n + 3) / 4 * 4;
    const long double len = static_cast<long double>(b) - a;
    const long double step = 1.0L / n;
    long double s1 = 0, s2 = 0, s4 = 0; // sums over every, every 2nd, every 4th point
    for (long i = 0; i <= n; ++i) {
        const long double u = step * i;
        long double nu, jac = len;
        if (onset < 0) {
            nu = a + len * u * u * u * u;
            jac = 4 * len * u * u * u;
        } else if (onset > 0) {
            const long double r = 1 - u;
            nu = b - len * r * r * r * r;
            jac = 4 * len * r * r * r;
        } else {
            nu = a + len * u;
        }
        // One-sided limits at segment ends: a segment may end on a jump.
        if (i == 0) nu = std::nextafter(a, b);
        if (i == n) nu = std::nextafter(b, a);
        long double v = spectral(sp, static_cast<double>(nu));
        if (v != 0) v *= k(static_cast<double>(nu - omega)) * jac;
        if (i == 0 || i == n) v *= 0.5L;
        s1 += v;
        if (i % 2 == 0) s2 += v;
        if (i % 4 == 0) s4 += v;
    }
    points += n + 1;
    const long double t1 = s1 * step, t2 = s2 * 2 * step, t4 = s4 * 4 * step;
    const long double r1 = (4 * t1 - t2) / 3, r2 = (4 * t2 - t4) / 3;
    return (16 * r1 - r2) / 15;
}

// Super-Ohmic onsets, where G grows like a non-integer power.
std::vector<double> onsets(const Spectrum& sp) {
    if (sp.lorentzian) return {};
    const double o = sp.hot ? sp.omega0 + sp.delta_s - sp.delta : sp.omega0 - sp.delta_s + sp.delta;
    return {o, -o};
}

// The fine window covers features +- 100 widths and omega +- window_t; the
// kernel period is resolved there. Beyond it, out to outer_widths, far_k
// (if given) is integrated on a grid that follows only the spectrum.
// Whenever the support continues past the integrated range, tail(x, dir)
// supplies the neglected remainder beyond x = nu - omega (dir = +1 right).
using Tail = std::function<long double(double x, int dir)>;

TrapezoidResult integrate(const Spectrum& sp, double omega, double period, double window_t, const Kernel& k,
                          double outer_widths = 0.0, const Kernel& far_k = nullptr, const Tail& tail = nullptr) {
    const double w = width(sp);
    const auto ks = kinks(sp);
    std::vector<double> centers = ks;
    centers.push_back(omega);
    double flo = omega - window_t, fhi = omega + window_t;
    double lo = flo, hi = fhi;
    for (double c : ks) {
        flo = std::min(flo, c - 100.0 * w);
        fhi = std::max(fhi, c + 100.0 * w);
        lo = std::min(lo, c - outer_widths * w);
        hi = std::max(hi, c + outer_widths * w);
    }
    if (!far_k) {
        lo = flo;
        hi = fhi;
    }
    lo = std::min(lo, flo);
    hi = std::max(hi, fhi);
    const auto [pa, pb] = positive_support(sp);
    TrapezoidResult out;
    long double total = 0;
    for (int sign : {-1, 1}) {
        const double ta = sign > 0 ? pa : -pb, tb = sign > 0 ? pb : -pa;
        const double a = std::max(ta, lo), b = std::min(tb, hi);
        if (!(a < b)) continue;
        // Oscillating part beyond the fine window.
        if (tail && ta < flo && flo < tb) total += tail(flo - omega, -1);
        if (tail && tb > fhi && fhi > ta) total += tail(fhi - omega, +1);
        std::vector<double> br{a, b};
        for (double e : {flo, fhi})
            if (e > a && e < b) br.push_back(e);
        for (double c : centers) {
            if (c > a && c < b) br.push_back(c);
            for (double base : {w, period}) {
                for (double d = base; d < (b - a) + std::abs(c) + 1.0; d *= 2) {
                    if (c - d > a && c - d < b) br.push_back(c - d);
                    if (c + d > a && c + d < b) br.push_back(c + d);
                }
            }
        }
        // Geometric points can land within rounding of a support edge or an
        // onset; drop them so the edge keeps its own segment.
        std::vector<double> hard{a, b};
        for (double c : centers) hard.push_back(c);
        for (double o : onsets(sp)) hard.push_back(o);
        auto near_hard = [&](double x) {
            if (std::find(hard.begin(), hard.end(), x) != hard.end()) return false;
            for (double y : hard)
                if (std::abs(x - y) <= 1e-9 * (1.0 + std::abs(y))) return true;
            return false;
        };
        br.erase(std::remove_if(br.begin(), br.end(), near_hard), br.end());
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end()), br.end());
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            const double sa = br[i], sb = br[i + 1];
            double dist = std::numeric_limits<double>::infinity();
            for (double c : centers) {
                if (c >= sa && c <= sb)
                    dist = 0;
                else
                    dist = std::min(dist, std::min(std::abs(c - sa), std::abs(c - sb)));
            }
            const bool far = sa >= fhi || sb <= flo;
            const double h = far ? std::max(w, dist) / kPointsPerLobe : std::min(period / kPointsPerLobe, std::max(w, dist) / kPointsPerLobe);
            int onset = 0;
            for (double o : onsets(sp)) {
                if (o == sa) onset = -1;
                if (o == sb) onset = 1;
            }
            total += segment(sp, omega, far ? far_k : k, sa, sb, h, out.points, onset);
        }
    }
    out.value = static_cast<double>(total);
    return out;
}

// Two integration-by-parts terms for int F(x) {sin, cos}(x t) dx over the
// half line beyond x, with F = G(omega + x) / x.
long double oscillating_tail(const Spectrum& sp, double omega, double t, double x, int dir, bool cosine) {
    auto F = [&](long double y) -> long double { return spectral(sp, static_cast<double>(omega + y)) / y; };
    const long double hstep = 1e-4L * std::max(1.0L, std::fabs((long double)x));
    const long double f0 = F(x);
    // One-sided difference keeps the stencil inside the support.
    const long double f1 = (F(x + dir * hstep) - F(x + 2 * dir * hstep) * 0.25L - f0 * 0.75L) / (dir * hstep * 0.5L);
    const long double s = std::sin((long double)x * t), c = std::cos((long double)x * t);
    // Right tail: int_x^inf F sin = F c / t - F' s / t^2;  int_x^inf F cos = -F s / t - F' c / t^2.
    long double right = cosine ? (-f0 * s / t - f1 * c / (t * (long double)t)) : (f0 * c / t - f1 * s / (t * (long double)t));
    // Left tail int_-inf^x equals minus the same antiderivative at x.
    return dir > 0 ? right : -right;
}

} // namespace

double spectral(const Spectrum& sp, double nu) {
    if (nu > 0) return positive(sp, nu);
    if (nu < 0) return positive(sp, -nu) * std::exp(nu * sp.beta);
    return 0.0;
}

double width(const Spectrum& sp) {
    if (!sp.lorentzian) return sp.s * sp.nu_bar;
    return *std::max_element(sp.width.begin(), sp.width.end());
}

std::vector<double> kinks(const Spectrum& sp) {
    std::vector<double> out;
    const auto [a, b] = positive_support(sp);
    out.push_back(a);
    if (std::isfinite(b)) out.push_back(b);
    if (sp.lorentzian) {
        for (double sh : sp.shift) out.push_back(sp.hot ? sp.omega0 + sp.delta_s + sh : sp.omega0 - sp.delta_s - sh);
    } else {
        out.push_back(sp.hot ? a + sp.s * sp.nu_bar : b - sp.s * sp.nu_bar);
    }
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(-out[i]);
    return out;
}

TrapezoidResult sinc_trapezoid(const Spectrum& sp, double omega, double t) {
    auto k = [t](double x) {
        const double u = x * t;
        if (std::fabs(u) < 1e-5) return t * (1 - u * u / 6 + u * u * u * u / 120);
        return std::sin(u) / x;
    };
    return integrate(sp, omega, static_cast<double>(kPiL) / t, 200.0 / t, k, 0.0, nullptr,
                     [&](double x, int dir) { return oscillating_tail(sp, omega, t, x, dir, false); });
}

TrapezoidResult cos_trapezoid(const Spectrum& sp, double omega, double t) {
    auto k = [t](double x) {
        const double u = x * t;
        if (std::fabs(u) < 1e-5) return t * (-u / 2 + u * u * u / 24);
        return (std::cos(u) - 1) / x;
    };
    // The non-oscillating -1/x part decays slowly: keep it out to a wide
    // window, dropping only the oscillating part beyond omega +- 200 / t.
    auto far = [](double x) { return -1 / x; };
    return integrate(sp, omega, static_cast<double>(kPiL) / t, 200.0 / t, k, 1e7, far,
                     [&](double x, int dir) { return oscillating_tail(sp, omega, t, x, dir, true); });
}

TrapezoidResult fejer_trapezoid(const Spectrum& sp, double omega, double tau) {
    auto k = [tau](double x) {
        const double u = x * tau;
        if (std::fabs(u) < 1e-4) return tau * (0.5 - u * u / 24);
        return (1 - std::cos(u)) / (x * x * tau);
    };
    return integrate(sp, omega, static_cast<double>(kPiL) / tau, 200.0 / tau, k);
}

double total_weight(const Spectrum& sp) {
    auto one = [](double) { return 1.0; };
    return integrate(sp, 0.0, 1e300, 0.0, one, 1e8, one).value;
}

} // namespace oracle

// quadrature.hpp - Gauss-Kronrod panels, global adaptive refinement,
// compensated sums and alternating-series acceleration

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <queue>
#include <vector>

namespace azhm::quad {

// Neumaier's variant of Kahan summation.
class NeumaierSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_{0.0};
    double comp_{0.0};
};

// 15-point Kronrod abscissae (descending, last is the center) and weights,
// with the embedded 7-point Gauss weights (QUADPACK qk15).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a{0.0};
    double b{0.0};
    double value{0.0};
    double error{0.0};
    double resabs{0.0};
};

// Node j in [0, 15): j < 7 sits at center - h*kXgk[j], j == 7 at the center,
// j > 7 at center + h*kXgk[14 - j]. g(j, x) returns the integrand there.
template <class G>
Panel gk15_indexed(G&& g, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double ah = std::abs(h);
    double fv1[7], fv2[7];
    const double fc = g(7, c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        fv1[j] = g(j, c - dx);
        fv2[j] = g(14 - j, c + dx);
        const double s = fv1[j] + fv2[j];
        resk += kWgk[j] * s;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    Panel p{a, b, resk * h, 0.0, resabs * ah};
    resasc *= ah;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (p.resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * p.resabs, err);
    p.error = err;
    return p;
}

template <class F>
Panel gk15(F&& f, double a, double b) {
    return gk15_indexed([&](int, double x) { return f(x); }, a, b);
}

struct AdaptiveResult {
    double value{0.0};
    double error{0.0};
    double resabs{0.0};
    int subdivisions{0};
    bool converged{true};
};

// Global adaptive refinement: repeatedly bisect the panel with the largest
// error estimate until the summed estimate meets
// max(abs_tol, rel_tol*|I|, 100*eps*sum|f|) or the bisection budget runs out.
// `floor_value` is added to |I| when forming the relative target.
template <class F>
AdaptiveResult refine(F&& f, std::vector<Panel> panels, double abs_tol, double rel_tol, int max_subdivisions,
                      double floor_value = 0.0) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    AdaptiveResult out;
    if (panels.empty()) return out;
    auto worse = [&](std::size_t i, std::size_t j) {
        if (panels[i].error != panels[j].error) return panels[i].error < panels[j].error;
        return i > j;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);
    double total = 0.0, err = 0.0, resabs = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        total += panels[i].value;
        err += panels[i].error;
        resabs += panels[i].resabs;
        heap.push(i);
    }
    auto target = [&] {
        return std::max({abs_tol, rel_tol * std::abs(total + floor_value), 100.0 * eps * resabs});
    };
    while (err > target()) {
        if (out.subdivisions >= max_subdivisions) {
            out.converged = false;
            break;
        }
        const std::size_t i = heap.top();
        heap.pop();
        const Panel p = panels[i];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > std::min(p.a, p.b) && mid < std::max(p.a, p.b))) {
            // Panel can no longer be split; its error is what it is.
            out.converged = false;
            break;
        }
        Panel l = gk15(f, p.a, mid);
        Panel r = gk15(f, mid, p.b);
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        resabs += l.resabs + r.resabs - p.resabs;
        panels[i] = l;
        panels.push_back(r);
        heap.push(i);
        heap.push(panels.size() - 1);
        ++out.subdivisions;
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    NeumaierSum v, e, s;
    for (const auto& p : panels) {
        v.add(p.value);
        e.add(p.error);
        s.add(p.resabs);
    }
    out.value = v.value();
    out.error = e.value();
    out.resabs = s.value();
    if (out.error <= target()) out.converged = true;
    return out;
}

// Adaptive integral of f over [a, b] seeded by the given breakpoints.
template <class F>
AdaptiveResult integrate(F&& f, const std::vector<double>& breaks, double abs_tol, double rel_tol,
                         int max_subdivisions) {
    std::vector<Panel> panels;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (breaks[i + 1] != breaks[i]) panels.push_back(gk15(f, breaks[i], breaks[i + 1]));
    return refine(f, std::move(panels), abs_tol, rel_tol, max_subdivisions);
}

// Euler's repeated-averaging transform applied to a stream of partial sums
// of an alternating series. The estimate uses the last order+1 sums.
class EulerAccelerator {
public:
    explicit EulerAccelerator(int order = 6);
    void push(double partial_sum);
    bool ready() const noexcept { return static_cast<int>(sums_.size()) == order_ + 1; }
    // Falls back to the latest partial sum until enough terms are in.
    double estimate() const;

private:
    int order_;
    std::deque<double> sums_;
};

} // namespace azhm::quad

#pragma once

#include "riesz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

// Globally adaptive Gauss-Kronrod (7,15) integration with optional seed
// breakpoints and power substitutions that absorb algebraic endpoint
// singularities. Single-threaded per integral; callers parallelize across
// integrals, not inside one.
namespace riesz::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    int panels = 0;
};

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_panels = 10000; // hard budget
    bool throw_on_failure = false;
};

namespace detail {

// QUADPACK dqk15 nodes and weights
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv1[8], fv2[8];
    const double fc = f(center);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = std::fabs(resk);
    fv1[7] = fv2[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double y1 = f(center - dx);
        const double y2 = f(center + dx);
        fv1[j] = y1;
        fv2[j] = y2;
        resk += kWgk[j] * (y1 + y2);
        resabs += kWgk[j] * (std::fabs(y1) + std::fabs(y2));
        if (j % 2 == 1) resg += kWg[j / 2] * (y1 + y2);
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    resasc *= std::fabs(half);
    resabs *= std::fabs(half);
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps_floor = 50.0 * 2.2204460492503131e-16 * resabs;
    err = std::max(err, eps_floor);
    return Panel{a, b, resk * half, err};
}

} // namespace detail

// Adaptive integration of f over [a, b]. `breaks` seeds the initial partition
// (values outside (a,b) are ignored); refinement then always splits the panel
// with the largest error estimate.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {},
                 std::span<const double> breaks = {}) {
    Result res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breaks)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<detail::Panel> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto p = detail::gk15(f, edges[i], edges[i + 1]);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    int panels = static_cast<int>(heap.size());
    auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)); };
    // stop early when refinement stops paying (integrand noise floor reached)
    double best_err = total_err;
    int stagnant = 0;
    while (total_err > tolerance() && panels < opt.max_panels && stagnant < 60) {
        detail::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating point resolution; accept as is
            heap.push(detail::Panel{worst.a, worst.b, worst.value, 0.0});
            total_err -= worst.error;
            continue;
        }
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
        if (total_err < 0.999 * best_err) {
            best_err = total_err;
            stagnant = 0;
        } else {
            ++stagnant;
        }
    }
    res.value = total;
    res.error = total_err;
    res.panels = panels;
    res.converged = total_err <= tolerance();
    if (!res.converged && opt.throw_on_failure)
        throw numeric_accuracy_error("quadrature did not converge within panel budget",
                                     res.value, res.error);
    return res;
}

// Geometric breakpoint ladder accumulating toward `toward` (= a or b), starting
// at distance `scale` from it. Used to seed panels around near-singular peaks.
inline std::vector<double> geometric_breaks(double a, double b, double toward, double scale,
                                            double ratio = 4.0) {
    std::vector<double> out;
    if (!(scale > 0.0) || b <= a) return out;
    const double len = b - a;
    for (double d = scale; d < len; d *= ratio)
        out.push_back(toward == a ? a + d : b - d);
    return out;
}

// Integrate f over [a, b] where f behaves like (x-a)^(p-1) * smooth near a
// with p possibly < 1. The substitution x = a + u^m turns the edge factor into
// u^(m*p-1), so m >= 2/p gives an integrand vanishing at least linearly.
template <class F>
Result integrate_power_left(F&& f, double a, double b, int m, const Options& opt = {}) {
    if (b <= a) return Result{0.0, 0.0, true, 0};
    const double umax = std::pow(b - a, 1.0 / m);
    auto g = [&](double u) {
        const double step = std::pow(u, m);
        const double x = a + step;
        if (x <= a || x >= b) return 0.0; // guard fp edges
        return f(x) * m * std::pow(u, m - 1);
    };
    return integrate(g, 0.0, umax, opt);
}

template <class F>
Result integrate_power_right(F&& f, double a, double b, int m, const Options& opt = {}) {
    if (b <= a) return Result{0.0, 0.0, true, 0};
    const double umax = std::pow(b - a, 1.0 / m);
    auto g = [&](double u) {
        const double step = std::pow(u, m);
        const double x = b - step;
        if (x <= a || x >= b) return 0.0;
        return f(x) * m * std::pow(u, m - 1);
    };
    return integrate(g, 0.0, umax, opt);
}

// Golden-section maximization of a unimodal function on [a, b].
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double x_tol, int max_it = 200) {
    constexpr double inv_phi = 0.61803398874989484820;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_it && (b - a) > x_tol; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

} // namespace riesz::quad

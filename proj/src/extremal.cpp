#include "riesz/extremal.hpp"

#include "riesz/quadrature.hpp"
#include "riesz/radial.hpp"

#include <cmath>
#include <stdexcept>

namespace riesz {

namespace {

double squared_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

} // namespace

SpherePoint inverse_stereographic(std::span<const double> x) {
    const double r2 = squared_norm(x);
    const double denom = 1.0 + r2;
    SpherePoint xi;
    xi.coords.resize(x.size() + 1);
    for (std::size_t i = 0; i < x.size(); ++i) xi.coords[i] = 2.0 * x[i] / denom;
    xi.coords.back() = (1.0 - r2) / denom;
    return xi;
}

std::vector<double> stereographic(const SpherePoint& xi) {
    const double last = xi.coords.back();
    if (1.0 + last < 1e-12)
        throw std::domain_error("stereographic: projection undefined at the south pole");
    std::vector<double> x(xi.coords.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = xi.coords[i] / (1.0 + last);
    return x;
}

double plane_jacobian(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    return std::pow(2.0 / (1.0 + squared_norm(x)), n);
}

double sphere_jacobian(const SpherePoint& xi) {
    const double last = xi.coords.back();
    if (1.0 + last < 1e-12)
        throw std::domain_error("sphere_jacobian: singular at the south pole");
    return std::pow(1.0 + last, -xi.dim());
}

double distance_identity_residual(std::span<const double> x, std::span<const double> y) {
    const int n = static_cast<int>(x.size());
    if (static_cast<int>(y.size()) != n)
        throw std::domain_error("distance_identity_residual: dimension mismatch");
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    const auto xi = inverse_stereographic(x);
    const auto eta = inverse_stereographic(y);
    double sd2 = 0.0;
    for (std::size_t i = 0; i < xi.coords.size(); ++i)
        sd2 += (xi.coords[i] - eta.coords[i]) * (xi.coords[i] - eta.coords[i]);
    const double rhs = std::pow(sphere_jacobian(xi), 1.0 / n) * sd2 *
                       std::pow(sphere_jacobian(eta), 1.0 / n);
    if (d2 == 0.0 && rhs == 0.0) return 0.0;
    return std::fabs(d2 - rhs) / std::max(d2, rhs);
}

double sphere_kernel_closed_form(const Params& p) {
    const double n = p.n, s = p.s;
    return std::exp(s * std::log(2.0) + 0.5 * n * std::log(pi) + log_gamma(0.5 * s)
                    - log_gamma(0.5 * (n + s)));
}

double sphere_kernel_integral(const Params& p, double rel_tol) {
    // |xi - eta|^2 = 2 - 2 cos(Theta) = 4 sin^2(Theta/2); the integrand near
    // Theta = 0 behaves like Theta^{s-1}. Evaluated through logs: the two
    // factors overflow/underflow separately long before their product does.
    const int n = p.n;
    const double s = p.s;
    auto integrand = [&](double theta) {
        const double st = std::sin(theta);
        const double d = 2.0 * std::sin(0.5 * theta);
        if (st <= 0.0 || d <= 0.0) return 0.0;
        const double log_val = (n - 1) * std::log(st) + (s - n) * std::log(d);
        return std::exp(log_val);
    };
    quad::Options opt;
    opt.rel_tol = rel_tol;
    const int m = (s >= 1.5) ? 1 : std::clamp(static_cast<int>(std::ceil(2.5 / s)), 3, 40);
    const double area = (n == 1) ? 1.0 : sphere_area(n); // |S^{n-1}|, two points for n = 1
    double integral;
    if (m > 1)
        integral = quad::integrate_power_left(integrand, 0.0, pi, m, opt).value;
    else
        integral = quad::integrate(integrand, 0.0, pi, opt).value;
    if (n == 1) {
        // S^1 parametrized by arclength on both half-circles
        return 2.0 * integral;
    }
    return area * integral;
}

double sphere_kernel_integral_offaxis(const Params& p, double alpha, double rel_tol) {
    const int n = p.n;
    if (n < 2)
        throw std::domain_error("sphere_kernel_integral_offaxis: needs n >= 2");
    const double s = p.s;
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    (void)ca;
    quad::Options outer_opt;
    outer_opt.rel_tol = rel_tol;

    // The inner slice integral over S^{n-1} has the same quadratic form as
    // the radial angular kernel: with the chord gap g = 2 sin(delta/2) and
    // cross = 4 sin(alpha) sin(theta), synthesize radii r' s' with
    // r's' = cross/4, r'-s' = g and reuse that machinery (elementary n = 3).
    auto inner = [&](double delta) {
        if (delta == 0.0) return 0.0;
        const double theta = alpha + delta;
        if (theta <= 0.0 || theta >= pi) return 0.0;
        const double st = std::sin(theta);
        const double gap = 2.0 * std::sin(0.5 * std::fabs(delta));
        const double cross = 4.0 * sa * st;
        const double hyp = std::sqrt(gap * gap + cross);
        const double r_synth = 0.5 * (hyp + gap);
        const double s_synth = 0.5 * (hyp - gap);
        const double kernel =
            angular_kernel_gap(p, r_synth, s_synth, gap, rel_tol * 1e-2);
        return kernel * std::pow(st, n - 1);
    };
    // split at the interior singularity and absorb the |delta|^{s-1} edge on
    // both sides, integrating in the gap variable
    const int m = (s >= 1.5) ? 1 : std::clamp(static_cast<int>(std::ceil(2.5 / s)), 3, 40);
    auto below = [&](double delta) { return inner(-delta); };
    double total = 0.0;
    if (m > 1) {
        total += quad::integrate_power_left(below, 0.0, alpha, m, outer_opt).value;
        total += quad::integrate_power_left(inner, 0.0, pi - alpha, m, outer_opt).value;
    } else {
        auto lo_seeds = quad::geometric_breaks(0.0, alpha, 0.0, 1e-10);
        total += quad::integrate(below, 0.0, alpha, outer_opt, lo_seeds).value;
        auto hi_seeds = quad::geometric_breaks(0.0, pi - alpha, 0.0, 1e-10);
        total += quad::integrate(inner, 0.0, pi - alpha, outer_opt, hi_seeds).value;
    }
    return total;
}

RadialProfile extremal_profile(const Params& p) {
    return extremal_family_profile(p, 2.0, 1.0);
}

RadialProfile extremal_family_profile(const Params& p, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("extremal_family_profile: scales must be positive");
    const double k = 0.5 * (p.n + p.s);
    RadialProfile::Traits t;
    t.monotone_decreasing = true;
    t.tail = TailModel{std::pow(a, k), 2.0 * k}; // (a/rho^2)^k far out
    t.far_field_start = 32.0 * std::sqrt(b);
    t.sup_bound = std::pow(a / b, k);
    return RadialProfile::from_function(
        [a, b, k](double rho) { return std::pow(a / (b + rho * rho), k); }, t);
}

double extremal_potential(const Params& p, double rho) {
    const double top = riesz_constant(p) * extremal_constant(p);
    return top * std::pow(1.0 + rho * rho, -0.5 * (p.n - p.s));
}

double extremal_superlevel_measure(const Params& p, double lambda) {
    const double top = riesz_constant(p) * extremal_constant(p);
    if (!(lambda > 0.0))
        throw std::domain_error("extremal_superlevel_measure: lambda must be positive");
    if (lambda >= top) return 0.0;
    // ((top/lambda)^{2/(n-s)} - 1)^{n/2} via expm1 to survive lambda near top
    const double expo = std::expm1(2.0 / (p.n - p.s) * std::log(top / lambda));
    return unit_ball_volume(p.n) * std::pow(expo, 0.5 * p.n);
}

DecreasingEnvelope extremal_potential_envelope(const Params& p, const EnvelopeOptions& opt) {
    const double coef = riesz_constant(p) * extremal_constant(p);
    return envelope_from_function(
        [p](double rho) { return extremal_potential(p, rho); }, opt,
        DecreasingEnvelope::Tail{coef, p.n - p.s});
}

} // namespace riesz

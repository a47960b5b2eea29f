#include "riesz/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

// Every constant is assembled in the log domain and exponentiated once, so
// dimensions up to a few hundred stay inside double range.
namespace riesz {

Params::Params(int n_, double s_) : n(n_), s(s_) {
    if (n < 1) throw std::domain_error("Params: dimension n must be >= 1");
    if (!(s > 0.0) || !(s < static_cast<double>(n)) || !std::isfinite(s))
        throw std::domain_error("Params: order s must satisfy 0 < s < n");
}

bool Params::in_lower_bound_window() const noexcept {
    return n > 2 && s < 0.25 * (n - 2);
}

void Params::require_lower_bound_window() const {
    if (!in_lower_bound_window())
        throw std::domain_error("Params: lower-bound window requires n > 2 and 0 < s < (n-2)/4");
}

CompositionParams::CompositionParams(Params p, double alpha_) : base(p), alpha(alpha_) {
    if (!(alpha > 0.0) || !(alpha < static_cast<double>(base.n)))
        throw std::domain_error("CompositionParams: 0 < alpha < n required");
    if (!(alpha + base.s < static_cast<double>(base.n)))
        throw std::domain_error("CompositionParams: alpha + s < n required");
}

double log_riesz_constant(const Params& p) {
    const double n = p.n, s = p.s;
    return -s * std::log(2.0) - 0.5 * n * std::log(pi)
         + log_gamma(0.5 * (n - s)) - log_gamma(0.5 * s);
}

double riesz_constant(const Params& p) {
    return std::exp(log_riesz_constant(p));
}

double log_unit_ball_volume(int n) {
    if (n < 1) throw std::domain_error("unit_ball_volume: n >= 1 required");
    return 0.5 * n * std::log(pi) - log_gamma(0.5 * n + 1.0);
}

double unit_ball_volume(int n) {
    return std::exp(log_unit_ball_volume(n));
}

double sphere_area(int n) {
    return n * unit_ball_volume(n);
}

double extremal_constant(const Params& p) {
    const double n = p.n, s = p.s;
    return std::exp(0.5 * n * std::log(pi) + 0.5 * (s + n) * std::log(2.0)
                    + log_gamma(0.5 * s) - log_gamma(0.5 * (s + n)));
}

double composition_constant(const CompositionParams& cp) {
    const double n = cp.base.n, s = cp.base.s, a = cp.alpha;
    return std::exp(0.5 * n * std::log(pi)
                    + log_gamma(0.5 * s) + log_gamma(0.5 * a) + log_gamma(0.5 * (n - s - a))
                    - log_gamma(0.5 * (n - s)) - log_gamma(0.5 * (n - a))
                    - log_gamma(0.5 * (s + a)));
}

double best_constant_upper(const Params& p) {
    const double n = p.n, s = p.s;
    return std::exp(log_riesz_constant(p) + (n - s) / n * log_unit_ball_volume(p.n)
                    + std::log(n / s));
}

double best_constant_lower(const Params& p) {
    p.require_lower_bound_window();
    const double n = p.n, s = p.s;
    const double factor = (n - 2.0 - 4.0 * s) / (2.0 * s * (n - 2.0 - s));
    return std::exp(log_riesz_constant(p) + (n - s) / n * log_unit_ball_volume(p.n)
                    + std::log(factor));
}

double sharp_floor(const Params& p) {
    const double n = p.n, s = p.s;
    return std::exp(log_riesz_constant(p) + (n - s) / n * log_unit_ball_volume(p.n));
}

double tau_constant(const Params& p) {
    const double n = p.n, s = p.s;
    // 2^{s/2} - 1 via expm1 keeps small s accurate
    const double log_pow_term = std::log(std::expm1(0.5 * s * std::log(2.0)));
    return std::exp(std::log(2.0) - 0.5 * s * std::log(4.0 * pi)
                    + (s - n) / n * log_pow_term + std::log(n / (n - s))
                    - (s / n) * std::log(s) - log_gamma(0.5 * s));
}

double tau_constant_majorant(const Params& p) {
    const double n = p.n, s = p.s;
    return std::exp(std::log(2.0 / std::log(2.0)) + 0.5 * s * std::log(4.0 * pi)
                    - log_gamma(0.5 * s + 1.0) + std::log(n / (n - s)));
}

} // namespace riesz

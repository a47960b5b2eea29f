#include "riesz/heat.hpp"

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace riesz {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

double heat_kernel(const Params& p, double t, double rho) {
    if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be positive");
    return std::exp(-0.5 * p.n * std::log(4.0 * pi * t) - rho * rho / (4.0 * t));
}

// ---------------------------------------------------------------------------
// Angular Gaussian factor G_t(rho, sigma) = int_{S^{n-1}} P_t(|rho e - sigma w|) dw
// ---------------------------------------------------------------------------

namespace {

double gauss_angular(const Params& p, double t, double rho, double sigma) {
    const int n = p.n;
    const double inv4t = 0.25 / t;
    if (rho == 0.0 || sigma == 0.0) {
        const double r2 = rho * rho + sigma * sigma;
        return sphere_area(n) * std::exp(-0.5 * n * std::log(4.0 * pi * t) - r2 * inv4t);
    }
    const double diff2 = (rho - sigma) * (rho - sigma);
    const double sum2 = (rho + sigma) * (rho + sigma);
    const double pref = std::exp(-0.5 * n * std::log(4.0 * pi * t));
    if (n == 1) {
        return pref * (std::exp(-diff2 * inv4t) + std::exp(-sum2 * inv4t));
    }
    if (n == 3) {
        const double k2 = rho * sigma / t; // sum2 - diff2 = 4 rho sigma
        double diff_exp;
        if (k2 < 500.0)
            diff_exp = std::exp(-sum2 * inv4t) * std::expm1(k2);
        else
            diff_exp = std::exp(-diff2 * inv4t) - std::exp(-sum2 * inv4t);
        return pref * (4.0 * pi * t / (rho * sigma)) * diff_exp;
    }
    if (n == 5) {
        const double omega3 = sphere_area(4);
        const double k = rho * sigma / (2.0 * t);
        if (k < 0.1) {
            const double k2 = k * k;
            const double series = 4.0 / 3.0 + 2.0 * k2 / 15.0 + k2 * k2 / 210.0;
            const double a2 = rho * rho + sigma * sigma;
            return pref * omega3 * std::exp(-a2 * inv4t) * series;
        }
        const double term = (2.0 / (k * k * k)) *
                            ((k - 1.0) * std::exp(-diff2 * inv4t) +
                             (k + 1.0) * std::exp(-sum2 * inv4t));
        return pref * omega3 * term;
    }
    // generic polar quadrature
    const double arg = rho * sigma / t;
    auto integrand = [&](double phi) {
        const double sp = std::sin(phi), cp = std::cos(phi);
        const double base = (n == 2) ? 1.0 : std::pow(sp * cp, n - 2);
        return base * std::exp(-arg * sp * sp);
    };
    quad::Options opt;
    opt.rel_tol = 1e-11;
    const double half_pi = 0.5 * pi;
    const double width = arg > 1.0 ? 1.0 / std::sqrt(arg) : half_pi;
    auto seeds = quad::geometric_breaks(0.0, half_pi, 0.0, std::min(width, half_pi * 0.5));
    const double angular = sphere_area(n - 1) * std::pow(2.0, n - 1) *
                           quad::integrate(integrand, 0.0, half_pi, opt, seeds).value;
    return pref * std::exp(-diff2 * inv4t) * angular;
}

} // namespace

double heat_convolve(const RadialProfile& f, const Params& p, double t, double rho,
                     double rel_tol) {
    if (!(t > 0.0)) throw std::domain_error("heat_convolve: t must be positive");
    const int n = p.n;
    const double end = f.support_end();
    const double window = 18.0 * std::sqrt(t);
    const double lo = std::max(0.0, rho - window);
    const double hi = std::min(end, rho + window);
    if (hi <= lo) return 0.0;

    auto integrand = [&](double sigma) {
        const double h = f(sigma);
        if (h == 0.0) return 0.0;
        return gauss_angular(p, t, rho, sigma) * h * std::pow(sigma, n - 1);
    };
    quad::Options opt;
    opt.rel_tol = rel_tol;

    double total = 0.0;
    double a = lo;
    if (lo == 0.0) {
        const double p_edge = n - f.inner_exponent();
        if (p_edge <= 0.0)
            throw divergent_norm_error("heat_convolve: profile not locally integrable");
        if (p_edge < 1.5) {
            const int m = std::clamp(static_cast<int>(std::ceil(2.5 / p_edge)), 2, 40);
            const double z0 = std::min(hi, std::max(0.5 * rho, 2.0 * std::sqrt(t)));
            if (z0 > 0.0) {
                total += quad::integrate_power_left(integrand, 0.0, z0, m, opt).value;
                a = z0;
            }
        }
    }
    if (a < hi) {
        std::vector<double> seeds;
        const double st = std::sqrt(t);
        for (double d = st; d < hi - a; d *= 4.0) {
            if (rho - d > a && rho - d < hi) seeds.push_back(rho - d);
            if (rho + d > a && rho + d < hi) seeds.push_back(rho + d);
        }
        if (rho > a && rho < hi) seeds.push_back(rho);
        total += quad::integrate(integrand, a, hi, opt, seeds).value;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Subordination
// ---------------------------------------------------------------------------

namespace {

struct LateTimeRule {
    double amp;   // T_t f <= amp * t^{-decay}
    double decay; // n/2 for integrable f, (n - alpha)/2 for the pure power
    double scale2;
};

LateTimeRule late_time_rule(const RadialProfile& f, const Params& p, double rho) {
    const int n = p.n;
    const bool integrable =
        f.inner_exponent() < n && (f.cutoff() || !f.tail() || f.tail()->exponent > n);
    if (integrable) {
        const double l1 = l1_norm(f, p);
        const double size = f.cutoff() ? *f.cutoff() : f.far_field_start();
        return LateTimeRule{std::exp(-0.5 * n * std::log(4.0 * pi)) * l1, 0.5 * n,
                            (1.0 + rho + size) * (1.0 + rho + size)};
    }
    // pure power h = sigma^{-q}: T_t f(0) = omega 2^{alpha-1} Gamma(alpha/2)
    // (4 pi t)^{-n/2} t^{alpha/2} exactly, with alpha = n - q
    const double alpha = n - f.inner_exponent();
    if (!(alpha > 0.0) || !(alpha + p.s < n))
        throw std::domain_error("late_time_rule: unsupported profile decay");
    const double amp = sphere_area(n) * std::pow(2.0, alpha - 1.0) * gamma_fn(0.5 * alpha) *
                       std::exp(-0.5 * n * std::log(4.0 * pi));
    return LateTimeRule{amp, 0.5 * (n - alpha), (1.0 + rho) * (1.0 + rho)};
}

// integral of t^{s/2-1} T_t f over [t_cut, upper] (log substitution)
template <class Conv>
double middle_time_integral(Conv&& conv, double s, double t_cut, double upper, double rel_tol) {
    auto g = [&](double u) {
        const double t = std::exp(u);
        return std::exp(0.5 * s * u) * conv(t);
    };
    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.max_panels = 4000;
    const double u0 = std::log(t_cut), u1 = std::log(upper);
    std::vector<double> seeds;
    for (double u = u0 + 2.0; u < u1; u += 2.0) seeds.push_back(u);
    return quad::integrate(g, u0, u1, opt, seeds).value;
}

} // namespace

double subordination_potential(const RadialProfile& f, const Params& p, double rho,
                               double rel_tol) {
    const double s = p.s;
    auto conv = [&](double t) { return heat_convolve(f, p, t, rho, rel_tol * 0.05); };

    const double t0 = 1e-12 * (1.0 + rho) * (1.0 + rho);
    const double head_density = conv(t0);
    const double head = head_density * (2.0 / s) * std::pow(t0, 0.5 * s);

    const auto rule = late_time_rule(f, p, rho);
    const double tail_exp = rule.decay - 0.5 * s; // tail(T) = amp T^{-tail_exp} / tail_exp
    if (!(tail_exp > 0.0))
        throw divergent_norm_error("subordination_potential: late-time integral diverges");

    double upper = std::max(100.0 * rule.scale2, 10.0 * t0);
    double middle = middle_time_integral(conv, s, t0, upper, rel_tol * 0.2);
    for (int iter = 0; iter < 60; ++iter) {
        const double tail = rule.amp * std::pow(upper, -tail_exp) / tail_exp;
        const double est = head + middle + tail;
        const double tail_err = tail * std::min(1.0, 5.0 * rule.scale2 / upper + 0.02);
        if (tail_err <= 0.3 * rel_tol * std::fabs(est)) {
            return (head + middle + tail) / gamma_fn(0.5 * s);
        }
        middle += middle_time_integral(conv, s, upper, upper * 16.0, rel_tol * 0.2);
        upper *= 16.0;
    }
    throw numeric_accuracy_error("subordination_potential: tail did not settle",
                                 (head + middle) / gamma_fn(0.5 * s), kNan);
}

double subordination_residual(const RadialProfile& f, const Params& p, double rho) {
    const double via_heat = subordination_potential(f, p, rho);
    const double direct = riesz_potential(f, p, rho);
    return std::fabs(via_heat / direct - 1.0);
}

// ---------------------------------------------------------------------------
// Averaged maximal operator
// ---------------------------------------------------------------------------

HeatAverager::HeatAverager(const RadialProfile& f, const Params& p, double rho,
                           int points_per_decade) {
    const double scale = (1.0 + rho) * (1.0 + rho);
    const double t_lo = 1e-10 * scale;
    const double t_hi = 1e10 * scale;
    const double u0 = std::log(t_lo), u1 = std::log(t_hi);
    const int decades = static_cast<int>(std::ceil((u1 - u0) / std::log(10.0)));
    const int count = 2 * decades * points_per_decade + 1;
    log_t_.resize(count);
    conv_.resize(count);
    for (int i = 0; i < count; ++i) {
        log_t_[i] = u0 + (u1 - u0) * i / (count - 1.0);
        conv_[i] = heat_convolve(f, p, std::exp(log_t_[i]), rho, 1e-9);
    }
    head_t_ = t_lo;
    head_value_ = conv_.front();
    // derivative-corrected trapezoid in u (integrand e^u T_{e^u}): fourth
    // order at every node, no midpoint values needed
    prefix_.assign(count, 0.0);
    const double h = (u1 - u0) / (count - 1.0);
    auto g = [&](int i) { return std::exp(log_t_[i]) * conv_[i]; };
    auto gp = [&](int i) { // centered derivative estimate in u
        if (i == 0) return (g(1) - g(0)) / h;
        if (i == count - 1) return (g(i) - g(i - 1)) / h;
        return (g(i + 1) - g(i - 1)) / (2.0 * h);
    };
    for (int i = 1; i < count; ++i) {
        const double seg = 0.5 * h * (g(i - 1) + g(i)) +
                           h * h / 12.0 * (gp(i - 1) - gp(i));
        prefix_[i] = prefix_[i - 1] + seg;
    }
}

double HeatAverager::prefix_at(double t) const {
    const double u = std::log(t);
    if (u <= log_t_.front()) return 0.0;
    if (u >= log_t_.back()) return prefix_.back();
    const auto it = std::upper_bound(log_t_.begin(), log_t_.end(), u);
    const std::size_t i = static_cast<std::size_t>(it - log_t_.begin()) - 1;
    // local trapezoid from the node, integrand interpolated linearly
    const double ui = log_t_[i];
    const double h = log_t_[1] - log_t_[0];
    const double gi = std::exp(ui) * conv_[i];
    const double gnext = std::exp(log_t_[i + 1]) * conv_[i + 1];
    const double gu = gi + (gnext - gi) * (u - ui) / h;
    return prefix_[i] + 0.5 * (gi + gu) * (u - ui);
}

double HeatAverager::average(double r) const {
    if (!(r > 0.0)) throw std::domain_error("HeatAverager: r must be positive");
    if (r <= head_t_) return head_value_;
    const double head = head_value_ * head_t_;
    return (head + prefix_at(r)) / r;
}

SupScan HeatAverager::supremum() const {
    SupScan best{head_value_, head_t_};
    for (std::size_t i = 0; i < log_t_.size(); ++i) {
        const double r = std::exp(log_t_[i]);
        const double a = average(r);
        if (a > best.value) best = SupScan{a, r};
    }
    const double step = std::exp(log_t_[1] - log_t_[0]);
    auto [lr, lv] = quad::golden_max(
        [&](double u) { return average(std::exp(u)); },
        std::log(best.maximizer / step), std::log(best.maximizer * step), 1e-6);
    if (lv > best.value) best = SupScan{lv, std::exp(lr)};
    return best;
}

double averaged_heat_maximal(const RadialProfile& f, const Params& p, double rho) {
    return HeatAverager(f, p, rho).supremum().value;
}

DecreasingEnvelope averaged_maximal_envelope(const RadialProfile& f, const Params& p,
                                             const EnvelopeOptions& opt) {
    const auto grid = log_radius_grid(opt);
    auto samples = par::map_grid(
        grid, [&](double rho) { return averaged_heat_maximal(f, p, rho); }, opt.mode);
    // Dirac-like far field M0 f ~ C rho^{-n}; fit the coefficient at the end
    const double coef = samples.back() * std::pow(grid.back(), p.n);
    return DecreasingEnvelope::from_samples(grid, std::move(samples),
                                            DecreasingEnvelope::Tail{coef, double(p.n)});
}

// ---------------------------------------------------------------------------
// Split bound and tau
// ---------------------------------------------------------------------------

namespace {

double j1_integral(const RadialProfile& f, const Params& p, double rho, double split_time,
                   double rel_tol) {
    auto conv = [&](double t) { return heat_convolve(f, p, t, rho, rel_tol * 0.05); };
    const double t0 = std::min(1e-12 * (1.0 + rho) * (1.0 + rho), 1e-6 * split_time);
    const double head = conv(t0) * (2.0 / p.s) * std::pow(t0, 0.5 * p.s);
    return head + middle_time_integral(conv, p.s, t0, split_time, rel_tol * 0.3);
}

double j2_integral(const RadialProfile& f, const Params& p, double rho, double split_time,
                   double rel_tol) {
    auto conv = [&](double t) { return heat_convolve(f, p, t, rho, rel_tol * 0.05); };
    const auto rule = late_time_rule(f, p, rho);
    const double tail_exp = rule.decay - 0.5 * p.s;
    double upper = std::max({100.0 * rule.scale2, 10.0 * split_time});
    double acc = middle_time_integral(conv, p.s, split_time, upper, rel_tol * 0.3);
    for (int iter = 0; iter < 60; ++iter) {
        const double tail = rule.amp * std::pow(upper, -tail_exp) / tail_exp;
        const double tail_err = tail * std::min(1.0, 5.0 * rule.scale2 / upper + 0.02);
        if (tail_err <= 0.3 * rel_tol * std::max(std::fabs(acc + tail), 1e-300))
            return acc + tail;
        acc += middle_time_integral(conv, p.s, upper, upper * 16.0, rel_tol * 0.3);
        upper *= 16.0;
    }
    throw numeric_accuracy_error("j2_integral: tail did not settle", acc, kNan);
}

// log(a e^{x u} + b e^{y u}) evaluated stably
double log_envelope(double log_a, double xa, double log_b, double xb, double u) {
    const double ta = log_a + xa * u;
    const double tb = log_b + xb * u;
    const double m = std::max(ta, tb);
    return m + std::log(std::exp(ta - m) + std::exp(tb - m));
}

} // namespace

double tau_minimized_numeric(const Params& p) {
    const double n = p.n, s = p.s;
    // majorant a R^{s/2} + b R^{(s-n)/2} with M0 = ||f||_1 = 1
    const double log_a = std::log(2.0) - std::log(std::expm1(0.5 * s * std::log(2.0)));
    const double log_b = std::log(2.0 / (n - s)) - 0.5 * n * std::log(4.0 * pi);
    const double xa = 0.5 * s, xb = 0.5 * (s - n);
    // closed-form first-order condition as the seed
    const double log_r_star = (2.0 / n) * (std::log(n - s) + log_b - log_a - std::log(s));
    auto neg_log_phi = [&](double u) { return -log_envelope(log_a, xa, log_b, xb, u); };
    auto [u_min, neg_min] = quad::golden_max(neg_log_phi, log_r_star - 4.0, log_r_star + 4.0,
                                             1e-12);
    (void)u_min;
    return std::exp(-neg_min - log_gamma(0.5 * s));
}

double tau_from_printed_radius(const Params& p) {
    const double n = p.n, s = p.s;
    const double factor = std::pow(2.0, 0.5 * s - 1.0) - 1.0;
    if (!(factor > 0.0)) return kNan; // radicand negative for s < 2
    const double log_r = (2.0 / n) * (-0.5 * n * std::log(4.0 * pi) + std::log(factor)
                                      - std::log(s));
    const double log_a = std::log(2.0) - std::log(std::expm1(0.5 * s * std::log(2.0)));
    const double log_b = std::log(2.0 / (n - s)) - 0.5 * n * std::log(4.0 * pi);
    const double log_phi = log_envelope(log_a, 0.5 * s, log_b, 0.5 * (s - n), log_r);
    return std::exp(log_phi - log_gamma(0.5 * s));
}

HeatSplit split_bound(const RadialProfile& f, const Params& p, double rho, double split_time) {
    if (!(split_time > 0.0))
        throw std::domain_error("split_bound: split time must be positive");
    const double s = p.s;
    HeatSplit out;
    out.split_time = split_time;
    out.j1 = j1_integral(f, p, rho, split_time, 1e-9);
    out.j2 = j2_integral(f, p, rho, split_time, 1e-9);

    const double m0 = averaged_heat_maximal(f, p, rho);
    const double l1 = l1_norm(f, p);
    const double half_s_pow = std::pow(2.0, -0.5 * s);
    out.j1_majorant = 2.0 * std::pow(split_time, 0.5 * s) * half_s_pow / (1.0 - half_s_pow) * m0;
    out.j2_majorant = 2.0 / (p.n - s) * std::exp(-0.5 * p.n * std::log(4.0 * pi)) *
                      std::pow(split_time, 0.5 * (s - p.n)) * l1;
    const double gamma_half_s = gamma_fn(0.5 * s);
    out.bound_a3 = (out.j1_majorant + out.j2_majorant) / gamma_half_s;
    out.tau_printed = tau_constant(p);
    out.tau_minimized = tau_minimized_numeric(p);
    out.averaged_max = m0;
    out.pointwise_a4 = out.tau_minimized * std::pow(m0, (p.n - s) / p.n) *
                       std::pow(l1, s / p.n);
    out.potential = riesz_potential(f, p, rho);
    return out;
}

double dyadic_j1(const RadialProfile& f, const Params& p, double rho, double split_time,
                 double rel_tol) {
    auto conv = [&](double t) { return heat_convolve(f, p, t, rho, rel_tol * 0.05); };
    // below the plateau time the convolution is constant in t to full
    // precision and the octave integrals are elementary
    const double t_flat = 1e-12 * (1.0 + rho) * (1.0 + rho);
    const double flat_value = conv(t_flat);
    double total = 0.0;
    double last_panel = 0.0;
    // panels decay like 2^{-i s/2}; small s needs many octaves
    for (int i = 1; i <= 3000; ++i) {
        const double lo = std::exp2(-i) * split_time;
        const double hi = 2.0 * lo;
        if (hi <= t_flat) {
            last_panel = flat_value * (2.0 / p.s) *
                         (std::pow(hi, 0.5 * p.s) - std::pow(lo, 0.5 * p.s));
        } else {
            last_panel = middle_time_integral(conv, p.s, lo, hi, rel_tol);
        }
        total += last_panel;
        // panels decay geometrically like 2^{-i s/2} once T_t f plateaus
        const double remaining_bound =
            last_panel * std::pow(2.0, -0.5 * p.s) / (1.0 - std::pow(2.0, -0.5 * p.s)) * 2.0;
        if (remaining_bound <= rel_tol * std::fabs(total) && i >= 8) {
            return total + last_panel * std::pow(2.0, -0.5 * p.s) /
                               (1.0 - std::pow(2.0, -0.5 * p.s));
        }
    }
    throw numeric_accuracy_error("dyadic_j1: series did not settle", total, kNan);
}

// ---------------------------------------------------------------------------
// Asymptotic comparison table
// ---------------------------------------------------------------------------

std::vector<AsymptoticRow> asymptotic_comparison(std::span<const int> n_grid,
                                                 std::span<const double> s_grid,
                                                 par::Mode mode) {
    std::vector<AsymptoticRow> rows(n_grid.size() * s_grid.size());
    par::for_index(
        rows.size(),
        [&](std::size_t idx) {
            const int n = n_grid[idx / s_grid.size()];
            const double s = s_grid[idx % s_grid.size()];
            AsymptoticRow row;
            row.n = n;
            row.s = s;
            const Params p(n, s);
            row.tau_printed = tau_constant(p);
            row.tau_minimized = tau_minimized_numeric(p);
            row.upper_bound = best_constant_upper(p);
            row.ratio = row.tau_printed / row.upper_bound;
            row.ratio_min_printed = row.tau_minimized / row.tau_printed;
            row.heat_majorant = tau_constant_majorant(p);
            rows[idx] = row;
        },
        mode);
    return rows;
}

std::string asymptotic_csv(const std::vector<AsymptoticRow>& rows) {
    std::ostringstream out;
    out.precision(12);
    out << "n,s,tau_printed,tau_minimized,upper_bound,ratio,ratio_min_printed,heat_majorant\n";
    for (const auto& r : rows)
        out << r.n << ',' << r.s << ',' << r.tau_printed << ',' << r.tau_minimized << ','
            << r.upper_bound << ',' << r.ratio << ',' << r.ratio_min_printed << ','
            << r.heat_majorant << '\n';
    return out.str();
}

} // namespace riesz

#include "riesz/radial.hpp"

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fritsch-Butland shape-preserving slopes; monotone data yields a monotone
// interpolant.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double slope = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (slope * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::fabs(slope) > 3.0 * std::fabs(d0)) return 3.0 * d0;
        return slope;
    };
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& d, double xi) {
    const auto it = std::upper_bound(x.begin(), x.end(), xi);
    std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i + 1 >= x.size()) i = x.size() - 2;
    const double h = x[i + 1] - x[i];
    const double t = (xi - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
}

// substitution order that turns an edge factor (x-a)^(p-1) into u^(m p - 1)
// with m p >= ~2.5
int substitution_order(double p) {
    if (p >= 1.5) return 1; // no substitution needed
    int m = static_cast<int>(std::ceil(2.5 / std::max(p, 0.0625)));
    return std::clamp(m, 2, 40);
}

} // namespace

// ---------------------------------------------------------------------------
// RadialProfile
// ---------------------------------------------------------------------------

RadialProfile RadialProfile::from_grid(std::vector<double> nodes, std::vector<double> values,
                                       bool monotone_decreasing, std::optional<TailModel> tail,
                                       std::optional<double> cutoff) {
    if (nodes.size() < 2 || nodes.size() != values.size())
        throw std::domain_error("RadialProfile: need matching node/value arrays of length >= 2");
    if (nodes.front() < 0.0)
        throw std::domain_error("RadialProfile: radii must be nonnegative");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            throw std::domain_error("RadialProfile: nodes must be strictly increasing");
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::domain_error("RadialProfile: values must be finite and nonnegative");
    if (monotone_decreasing)
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            if (values[i + 1] > values[i])
                throw std::domain_error("RadialProfile: values violate the monotone flag");
    if (tail && cutoff)
        throw std::domain_error("RadialProfile: tail model and cutoff are mutually exclusive");
    if (tail && !(tail->exponent > 0.0 && tail->coefficient >= 0.0))
        throw std::domain_error("RadialProfile: tail model requires beta > 0, A >= 0");
    if (cutoff && !(*cutoff > 0.0))
        throw std::domain_error("RadialProfile: cutoff must be positive");

    RadialProfile f;
    f.slopes_ = pchip_slopes(nodes, values);
    f.traits_.monotone_decreasing = monotone_decreasing;
    f.traits_.tail = tail;
    f.traits_.cutoff = cutoff;
    f.traits_.far_field_start = nodes.back();
    f.traits_.sup_bound = *std::max_element(values.begin(), values.end());
    f.nodes_ = std::move(nodes);
    f.values_ = std::move(values);
    return f;
}

RadialProfile RadialProfile::from_function(std::function<double(double)> h, Traits traits) {
    RadialProfile f;
    f.exact_ = std::move(h);
    f.traits_ = std::move(traits);
    return f;
}

double RadialProfile::support_end() const noexcept {
    if (traits_.cutoff) return *traits_.cutoff;
    if (!exact_ && !traits_.tail && !nodes_.empty()) return nodes_.back();
    return kInf;
}

double RadialProfile::grid_value(double rho) const {
    if (rho <= nodes_.front()) return values_.front();
    if (rho >= nodes_.back()) {
        if (traits_.tail)
            return traits_.tail->coefficient * std::pow(rho, -traits_.tail->exponent);
        return 0.0;
    }
    double v = pchip_eval(nodes_, values_, slopes_, rho);
    return std::max(v, 0.0);
}

double RadialProfile::operator()(double rho) const {
    if (rho < 0.0) throw std::domain_error("RadialProfile: negative radius");
    if (traits_.cutoff && rho > *traits_.cutoff) return 0.0;
    if (exact_) return exact_(rho);
    return grid_value(rho);
}

RadialProfile RadialProfile::scaled_argument(double a) const {
    if (!(a > 0.0)) throw std::domain_error("scaled_argument: scale must be positive");
    Traits t = traits_;
    if (t.cutoff) t.cutoff = *t.cutoff / a;
    if (t.tail) t.tail = TailModel{t.tail->coefficient * std::pow(a, -t.tail->exponent), t.tail->exponent};
    t.far_field_start = traits_.far_field_start / a;
    if (exact_) {
        auto base = exact_;
        return from_function([base, a](double rho) { return base(a * rho); }, t);
    }
    std::vector<double> nodes = nodes_;
    for (double& x : nodes) x /= a;
    return from_grid(std::move(nodes), values_, traits_.monotone_decreasing, t.tail, t.cutoff);
}

// ---------------------------------------------------------------------------
// Built-in families
// ---------------------------------------------------------------------------

RadialProfile indicator_profile(double radius, double height) {
    RadialProfile::Traits t;
    t.monotone_decreasing = true;
    t.cutoff = radius;
    t.sup_bound = height;
    return RadialProfile::from_function([height](double) { return height; }, t);
}

RadialProfile power_profile(double decay, std::optional<double> cutoff) {
    if (!(decay > 0.0)) throw std::domain_error("power_profile: decay exponent must be positive");
    RadialProfile::Traits t;
    t.monotone_decreasing = true;
    t.inner_exponent = decay;
    t.cutoff = cutoff;
    if (!cutoff) t.tail = TailModel{1.0, decay};
    t.far_field_start = 1.0;
    return RadialProfile::from_function([decay](double rho) { return std::pow(rho, -decay); }, t);
}

RadialProfile gaussian_profile(double width, double height) {
    RadialProfile::Traits t;
    t.monotone_decreasing = true;
    t.sup_bound = height;
    const double inv2w2 = 0.5 / (width * width);
    return RadialProfile::from_function(
        [height, inv2w2](double rho) { return height * std::exp(-rho * rho * inv2w2); }, t);
}

// ---------------------------------------------------------------------------
// Radial mass integrals
// ---------------------------------------------------------------------------

namespace {

// int_a^b w(sigma) h(sigma) sigma^{n-1} dsigma for finite [a, b]; handles an
// algebraic profile singularity at sigma = 0.
template <class W>
double bounded_mass_integral(const RadialProfile& f, int n, W&& weight, double a, double b,
                             const quad::Options& opt) {
    if (b <= a) return 0.0;
    auto integrand = [&](double sigma) {
        const double h = f(sigma);
        if (h == 0.0) return 0.0;
        return weight(sigma) * h * std::pow(sigma, n - 1);
    };
    const double p_edge = n - f.inner_exponent();
    if (a == 0.0 && p_edge <= 0.0)
        throw divergent_norm_error("profile too singular at the origin for this integral");
    double total = 0.0;
    double lo = a;
    if (a == 0.0) {
        const int m = substitution_order(p_edge);
        const double z0 = std::min(b, 1.0);
        if (m > 1) {
            total += quad::integrate_power_left(integrand, 0.0, z0, m, opt).value;
        } else {
            auto seeds = quad::geometric_breaks(0.0, z0, 0.0, z0 * 1e-8);
            total += quad::integrate(integrand, 0.0, z0, opt, seeds).value;
        }
        lo = z0;
    }
    if (lo < b) {
        // log-geometric panels for wide ranges
        std::vector<double> seeds;
        for (double x = std::max(lo, 1e-300) * 4.0; x < b; x *= 4.0) seeds.push_back(x);
        total += quad::integrate(integrand, lo, b, opt, seeds).value;
    }
    return total;
}

struct FarIntegration {
    double value = 0.0;
    double remainder_error = 0.0;
};

// Extends int_T0^inf w(sigma) h(sigma) sigma^{n-1} dsigma, where
// w(sigma) ~ w_coef * sigma^{w_exp} in the far field. Uses the profile tail
// model for an analytic remainder when present, otherwise geometric chunking
// until the contribution is negligible.
template <class W>
FarIntegration far_mass_integral(const RadialProfile& f, int n, W&& weight, double t0,
                                 double w_coef, double w_exp, double corr_scale,
                                 double abs_budget, const quad::Options& opt) {
    FarIntegration out;
    auto integrand = [&](double sigma) {
        const double h = f(sigma);
        if (h == 0.0) return 0.0;
        return weight(sigma) * h * std::pow(sigma, n - 1);
    };
    double t = t0;
    if (f.tail()) {
        const double beta = f.tail()->exponent;
        const double coef = f.tail()->coefficient;
        const double decay = beta - (w_exp + n); // integrand ~ sigma^{-decay - 1 + ...}
        if (!(decay > 0.0))
            throw divergent_norm_error("far-field tail decays too slowly for this integral");
        for (int iter = 0; iter < 60; ++iter) {
            const double rem = w_coef * coef * std::pow(t, -decay) / decay;
            const double hv = f(t);
            const double model = coef * std::pow(t, -beta);
            const double mismatch = model > 0.0 ? std::fabs(hv / model - 1.0) : 0.0;
            const double corr = corr_scale / (t * t);
            const double rem_err = rem * (mismatch + corr + 1e-12);
            if (rem_err <= abs_budget || rem <= abs_budget) {
                out.value += rem;
                out.remainder_error = rem_err;
                return out;
            }
            std::vector<double> seeds;
            for (double x = t * 2.0; x < 4.0 * t; x *= 2.0) seeds.push_back(x);
            out.value += quad::integrate(integrand, t, 4.0 * t, opt, seeds).value;
            t *= 4.0;
        }
        throw numeric_accuracy_error("far-field extension did not settle", out.value, kInf);
    }
    // rapid decay: chunk until negligible twice in a row
    int quiet = 0;
    for (int iter = 0; iter < 80; ++iter) {
        const double chunk = quad::integrate(integrand, t, 4.0 * t, opt).value;
        out.value += chunk;
        t *= 4.0;
        if (std::fabs(chunk) <= abs_budget * 0.5) {
            if (++quiet >= 2) {
                out.remainder_error = std::fabs(chunk);
                return out;
            }
        } else {
            quiet = 0;
        }
    }
    throw numeric_accuracy_error("far-field extension did not settle", out.value, kInf);
}

} // namespace

double l1_norm(const RadialProfile& f, const Params& p, double rel_tol) {
    const int n = p.n;
    const double omega = sphere_area(n);
    if (f.inner_exponent() >= n)
        throw divergent_norm_error("l1_norm: profile is not locally integrable in this dimension");
    if (f.tail() && !(f.tail()->exponent > n))
        throw divergent_norm_error("l1_norm: tail exponent must exceed the dimension");

    quad::Options opt;
    opt.rel_tol = rel_tol * 0.2;
    auto unit_weight = [](double) { return 1.0; };

    const double end = f.support_end();
    if (std::isfinite(end))
        return omega * bounded_mass_integral(f, n, unit_weight, 0.0, end, opt);

    const double t0 = std::max(4.0, f.far_field_start());
    double head = bounded_mass_integral(f, n, unit_weight, 0.0, t0, opt);
    const double budget = rel_tol * std::max(std::fabs(head), 1e-300);
    auto far = far_mass_integral(f, n, unit_weight, t0, 1.0, 0.0, 1.0, budget, opt);
    return omega * (head + far.value);
}

// ---------------------------------------------------------------------------
// Angular kernel
// ---------------------------------------------------------------------------

namespace {

// n = 3: elementary antiderivative of (A - B c)^{-(3-s)/2} against dc
double kernel_n3(double s, double rho, double sigma, double diff) {
    const double sum = rho + sigma;
    const double two_pi = 2.0 * pi;
    if (diff == 0.0 && s <= 1.0) return kInf;
    if (std::fabs(s - 1.0) < 1e-13)
        return two_pi / (rho * sigma) * std::log(sum / diff);
    return two_pi * (std::pow(diff, s - 1.0) - std::pow(sum, s - 1.0)) / ((1.0 - s) * rho * sigma);
}

// n = 5: expand (1 - c^2) in powers of w = A - B c and integrate term by term.
// The w1 = diff^2 endpoint powers are folded with the term coefficients so the
// evaluation stays cancellation-free right up to the diagonal:
//   c0 w1^{1-q} = -(sum^2/B^2) diff^{s-1},  w1^{2-q} = diff^{s-1},
//   w1^{3-q} = diff^{s+1}   (q = (5-s)/2).
double kernel_n5(double s, double rho, double sigma, double diff) {
    if (diff == 0.0 && s <= 1.0) return kInf;
    const double sum = rho + sigma;
    const double sum2 = sum * sum;
    const double a = rho * rho + sigma * sigma;
    const double b = 2.0 * rho * sigma;
    const double b2 = b * b;
    const double q = 0.5 * (5.0 - s);
    const double e0 = 1.0 - q, e1 = 2.0 - q, e2 = 3.0 - q;
    const double lw2 = 2.0 * std::log(sum);
    const double log_diff = std::log(diff);
    const double d_s1 = (diff == 0.0) ? 0.0 : std::exp((s - 1.0) * log_diff);
    const double d_sp1 = (diff == 0.0) ? 0.0 : std::exp((s + 1.0) * log_diff);
    const double c0 = -(diff * diff) * sum2 / b2;
    const double c1 = 2.0 * a / b2;
    const double c2 = -1.0 / b2;

    double acc = 0.0;
    if (std::fabs(e0) < 1e-12) {
        acc += c0 * 2.0 * (std::log(sum) - log_diff);
    } else {
        acc += (c0 * std::exp(e0 * lw2) + (sum2 / b2) * d_s1) / e0;
    }
    if (std::fabs(e1) < 1e-12) {
        acc += c1 * 2.0 * (std::log(sum) - log_diff);
    } else {
        acc += c1 * (std::exp(e1 * lw2) - d_s1) / e1;
    }
    acc += c2 * (std::exp(e2 * lw2) - d_sp1) / e2;
    const double omega3 = sphere_area(4); // |S^3| = 2 pi^2
    return omega3 * acc / b;
}

} // namespace

namespace {

double angular_kernel_gap_quadrature(const Params& p, double rho, double sigma, double gap,
                                     double rel_tol) {
    const int n = p.n;
    const double s = p.s;
    if (rho == 0.0 && sigma == 0.0)
        throw std::domain_error("angular_kernel: singular at rho = sigma = 0");
    if (n == 1) {
        return std::pow(gap, s - 1.0) + std::pow(rho + sigma, s - 1.0);
    }
    if (rho == 0.0 || sigma == 0.0)
        return sphere_area(n) * std::pow(std::max(rho, sigma), s - n);

    const double q = 0.5 * (n - s);
    const double a2 = gap * gap;
    const double b2 = 4.0 * rho * sigma;
    const double pref = sphere_area(n - 1) * std::pow(2.0, n - 1);
    auto integrand = [&](double phi) {
        const double sp = std::sin(phi), cp = std::cos(phi);
        double base = (n == 2) ? 1.0 : std::pow(sp * cp, n - 2);
        return base * std::pow(a2 + b2 * sp * sp, -q);
    };
    quad::Options opt;
    opt.rel_tol = rel_tol;
    const double half_pi = 0.5 * pi;
    if (a2 == 0.0) {
        if (s <= 1.0) return kInf;
        const int m = substitution_order(s - 1.0);
        if (m > 1) return pref * quad::integrate_power_left(integrand, 0.0, half_pi, m, opt).value;
        return pref * quad::integrate(integrand, 0.0, half_pi, opt).value;
    }
    const double delta = std::min(std::sqrt(a2 / b2), 0.5 * half_pi);
    auto seeds = quad::geometric_breaks(0.0, half_pi, 0.0, delta);
    return pref * quad::integrate(integrand, 0.0, half_pi, opt, seeds).value;
}

} // namespace

double angular_kernel_gap(const Params& p, double rho, double sigma, double gap,
                          double rel_tol) {
    if (rho == 0.0 && sigma == 0.0)
        throw std::domain_error("angular_kernel: singular at rho = sigma = 0");
    if (p.n == 1 || rho == 0.0 || sigma == 0.0)
        return angular_kernel_gap_quadrature(p, rho, sigma, gap, rel_tol);
    const double ratio = std::min(rho, sigma) / std::max(rho, sigma);
    if (p.n == 3 && ratio > 1e-3) return kernel_n3(p.s, rho, sigma, gap);
    if (p.n == 5 && ratio > 1e-2) return kernel_n5(p.s, rho, sigma, gap);
    return angular_kernel_gap_quadrature(p, rho, sigma, gap, rel_tol);
}

double angular_kernel_quadrature(const Params& p, double rho, double sigma, double rel_tol) {
    return angular_kernel_gap_quadrature(p, rho, sigma, std::fabs(rho - sigma), rel_tol);
}

double angular_kernel(const Params& p, double rho, double sigma, double rel_tol) {
    return angular_kernel_gap(p, rho, sigma, std::fabs(rho - sigma), rel_tol);
}

// ---------------------------------------------------------------------------
// Riesz potential
// ---------------------------------------------------------------------------

namespace {

// correction scale for the far-field kernel expansion: the angular average of
// |rho e - sigma w|^{s-n} is sigma^{s-n} (1 + c2 (rho/sigma)^2 + ...) with
// c2 = (n-s)(n-s+2-n)/(2n) = (n-s)(2-s)/(2n)
double far_correction_scale(const Params& p, double rho) {
    const double c2 = 0.5 * (p.n - p.s) * std::fabs(2.0 - p.s) / p.n;
    return (c2 + 1.0) * rho * rho + 1.0;
}

} // namespace

double riesz_potential(const RadialProfile& f, const Params& p, double rho,
                       const PotentialOptions& opt) {
    const int n = p.n;
    const double s = p.s;
    const double gamma_s = riesz_constant(p);
    const double omega = sphere_area(n);
    const double end = f.support_end();

    quad::Options qopt;
    qopt.rel_tol = opt.rel_tol * 0.1;
    qopt.max_panels = opt.max_panels;
    const double kernel_tol = opt.rel_tol * 0.02;

    if (f.tail() && !(f.tail()->exponent > s))
        throw divergent_norm_error("riesz_potential: tail decays too slowly, potential diverges");

    if (rho == 0.0) {
        // K(0, sigma) = omega sigma^{s-n} exactly
        if (f.inner_exponent() >= s) return kInf;
        auto weight = [&](double sigma) { return omega * std::pow(sigma, s - n); };
        if (std::isfinite(end))
            return gamma_s * bounded_mass_integral(f, n, weight, 0.0, end, qopt);
        const double t0 = std::max(4.0, f.far_field_start());
        double head = bounded_mass_integral(f, n, weight, 0.0, t0, qopt);
        const double budget = opt.rel_tol * std::max(std::fabs(head), 1e-300);
        auto far = far_mass_integral(f, n, weight, t0, omega, s - n, 1.0, budget, qopt);
        return gamma_s * (head + far.value);
    }

    if (f.inner_exponent() >= n) return kInf; // not locally integrable

    auto integrand = [&](double sigma) {
        // below double resolution of the diagonal the true contribution is
        // negligible while kernel powers would overflow
        if (std::fabs(sigma - rho) < 1e-100 * rho) return 0.0;
        const double h = f(sigma);
        if (h == 0.0) return 0.0;
        return angular_kernel(p, rho, sigma, kernel_tol) * h * std::pow(sigma, n - 1);
    };
    // diagonal pieces integrate in the gap variable so the kernel sees the
    // distance to the diagonal exactly
    auto integrand_below = [&](double gap) {
        if (gap <= 0.0) return 0.0;
        const double sigma = rho - gap;
        if (sigma <= 0.0) return 0.0;
        const double h = f(sigma);
        if (h == 0.0) return 0.0;
        return angular_kernel_gap(p, rho, sigma, gap, kernel_tol) * h * std::pow(sigma, n - 1);
    };
    auto integrand_above = [&](double gap) {
        if (gap <= 0.0) return 0.0;
        const double sigma = rho + gap;
        const double h = f(sigma);
        if (h == 0.0) return 0.0;
        return angular_kernel_gap(p, rho, sigma, gap, kernel_tol) * h * std::pow(sigma, n - 1);
    };

    const int m_diag = std::clamp(static_cast<int>(std::ceil(2.5 / std::min(s, 2.0))), 3, 40);
    double total = 0.0;
    double err_acc = 0.0;
    bool budget_hit = false;
    auto take = [&](const quad::Result& r) {
        total += r.value;
        err_acc += r.error;
        budget_hit = budget_hit || r.panels >= qopt.max_panels;
    };
    // only after exhausting the refinement budget does a large error estimate
    // count as failure; the estimates are routinely pessimistic otherwise
    auto finish = [&](double value, double extra_err) {
        if (budget_hit &&
            err_acc + extra_err > 100.0 * opt.rel_tol * std::max(std::fabs(value), 1e-300))
            throw numeric_accuracy_error("riesz_potential: quadrature did not converge",
                                         gamma_s * value, gamma_s * (err_acc + extra_err));
        return gamma_s * value;
    };

    // inner region [0, left_end]
    const double left_end = std::min(rho, end);
    if (left_end > 0.0) {
        const double z0 = 0.5 * left_end;
        const double p_edge = n - f.inner_exponent();
        const int m0 = substitution_order(p_edge);
        if (m0 > 1) {
            take(quad::integrate_power_left(integrand, 0.0, z0, m0, qopt));
        } else {
            auto seeds = quad::geometric_breaks(0.0, z0, 0.0, z0 * 1e-10);
            take(quad::integrate(integrand, 0.0, z0, qopt, seeds));
        }
        if (left_end == rho) {
            take(quad::integrate_power_left(integrand_below, 0.0, rho - z0, m_diag, qopt));
        } else {
            // support ends before the diagonal; seed panels toward the end,
            // where the kernel peak outside the interval is closest
            auto seeds = quad::geometric_breaks(z0, left_end, left_end,
                                                std::max(rho - left_end, 1e-12 * rho));
            take(quad::integrate(integrand, z0, left_end, qopt, seeds));
        }
    }

    if (end <= rho) return finish(total, 0.0);

    // outer region [rho, ...]
    const double mid = std::min(end, std::max(2.0 * rho, rho + 1.0));
    take(quad::integrate_power_left(integrand_above, 0.0, mid - rho, m_diag, qopt));

    if (std::isfinite(end)) {
        if (mid < end) {
            std::vector<double> seeds;
            for (double x = mid * 4.0; x < end; x *= 4.0) seeds.push_back(x);
            take(quad::integrate(integrand, mid, end, qopt, seeds));
        }
        return finish(total, 0.0);
    }

    const double t0 = std::max({4.0 * (1.0 + rho), f.far_field_start(), mid});
    if (mid < t0) {
        std::vector<double> seeds;
        for (double x = mid * 4.0; x < t0; x *= 4.0) seeds.push_back(x);
        take(quad::integrate(integrand, mid, t0, qopt, seeds));
    }
    const double budget = opt.rel_tol * std::max(std::fabs(total), 1e-300);
    auto weight_far = [&](double sigma) { return angular_kernel(p, rho, sigma, kernel_tol); };
    auto far = far_mass_integral(f, n, weight_far, t0, omega, s - n,
                                 far_correction_scale(p, rho), budget, qopt);
    total += far.value;
    return finish(total, far.remainder_error);
}

// ---------------------------------------------------------------------------
// Ball mass and the fractional maximal function
// ---------------------------------------------------------------------------

double ball_mass(const RadialProfile& f, const Params& p, double center_radius, double r,
                 double rel_tol) {
    if (center_radius < 0.0 || r < 0.0)
        throw std::domain_error("ball_mass: radii must be nonnegative");
    if (r == 0.0) return 0.0;
    const int n = p.n;
    const double omega = sphere_area(n);
    const double end = f.support_end();
    quad::Options opt;
    opt.rel_tol = rel_tol * 0.5;
    auto unit_weight = [](double) { return 1.0; };

    if (center_radius == 0.0)
        return omega * bounded_mass_integral(f, n, unit_weight, 0.0, std::min(r, end), opt);

    const double rho0 = center_radius;
    double total = 0.0;
    const double full_end = r > rho0 ? std::min(r - rho0, end) : 0.0;
    if (full_end > 0.0)
        total += omega * bounded_mass_integral(f, n, unit_weight, 0.0, full_end, opt);

    const double cap_lo = (r >= rho0) ? full_end : rho0 - r;
    const double cap_hi = std::min(rho0 + r, end);
    if (cap_hi <= cap_lo) return total;

    auto cap_weight = [&](double sigma) {
        // 1 - u = (r^2 - (sigma-rho0)^2)/(2 rho0 sigma), factored so thin caps
        // keep full precision
        const double delta = sigma - rho0;
        const double omu = (r - delta) * (r + delta) / (2.0 * rho0 * sigma);
        return sphere_cap_fraction_stable(n, omu);
    };
    total += omega * bounded_mass_integral(f, n, cap_weight, cap_lo, cap_hi, opt);
    return total;
}

SupScan fractional_maximal_scan(const RadialProfile& f, const Params& p, double rho) {
    const double log_v = log_unit_ball_volume(p.n);
    const double expo = p.s / p.n - 1.0;
    auto candidate = [&](double r) {
        const double mass = ball_mass(f, p, rho, r, 1e-8);
        if (mass <= 0.0) return 0.0;
        return std::exp(expo * (log_v + p.n * std::log(r))) * mass;
    };
    const double scale = 1.0 + rho;
    const int per_decade = 8;
    const int k_lo = -6 * per_decade, k_hi = 6 * per_decade;
    double best = -1.0, best_r = scale;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double r = scale * std::pow(10.0, static_cast<double>(k) / per_decade);
        const double c = candidate(r);
        if (c > best) {
            best = c;
            best_r = r;
        }
    }
    const double step = std::pow(10.0, 1.0 / per_decade);
    // quadratic near the top: 2e-4 in log r keeps the value well inside 1e-5
    auto [lr, lv] = quad::golden_max(
        [&](double t) { return candidate(std::exp(t)); },
        std::log(best_r / step), std::log(best_r * step), 2e-4);
    SupScan out;
    out.value = std::max(best, lv);
    out.maximizer = lv >= best ? std::exp(lr) : best_r;
    return out;
}

double fractional_maximal(const RadialProfile& f, const Params& p, double rho) {
    return fractional_maximal_scan(f, p, rho).value;
}

double dirac_maximal(const Params& p, double rho) {
    if (!(rho > 0.0)) throw std::domain_error("dirac_maximal: rho must be positive");
    return std::exp(-log_unit_ball_volume(p.n) - p.n * std::log(rho));
}

// ---------------------------------------------------------------------------
// Mass-deficit witness
// ---------------------------------------------------------------------------

double witness_radius(const RadialProfile& f, const Params& p, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw infeasible_witness_error("witness_radius: epsilon must lie in (0,1)");
    const double total = l1_norm(f, p);
    if (!(total > 0.0))
        throw infeasible_witness_error("witness_radius: profile carries no mass");
    const double target = (1.0 - epsilon) * total;

    double hi = 1.0;
    for (int i = 0; i < 200 && ball_mass(f, p, 0.0, hi) < target; ++i) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = lo < 1e-300 ? 0.5 * hi : std::sqrt(lo * hi);
        if (mid <= lo || mid >= hi) break;
        (ball_mass(f, p, 0.0, mid) < target ? lo : hi) = mid;
    }
    return hi;
}

PointwiseWitness pointwise_lower_witness(const RadialProfile& f, const WitnessConfig& cfg,
                                         const Params& p, double rho) {
    const double radius = witness_radius(f, p, cfg.epsilon);
    const double total = l1_norm(f, p);
    const double value =
        (1.0 - cfg.epsilon) * total * std::pow(rho + radius, p.s - p.n);
    return PointwiseWitness{value, radius};
}

} // namespace riesz

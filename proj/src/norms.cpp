#include "riesz/norms.hpp"

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace riesz {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string describe(const NormResult& r) {
    std::ostringstream o;
    o.precision(12);
    o << "value=" << r.value << ";maximizer=" << r.maximizer
      << ";attained_in_limit=" << (r.attained_in_limit ? "true" : "false")
      << ";tolerance=" << r.tolerance;
    return o.str();
}

// ---------------------------------------------------------------------------
// DecreasingEnvelope
// ---------------------------------------------------------------------------

DecreasingEnvelope DecreasingEnvelope::from_samples(std::vector<double> radii,
                                                    std::vector<double> values,
                                                    std::optional<Tail> tail,
                                                    std::optional<double> support_end) {
    if (radii.size() < 2 || radii.size() != values.size())
        throw std::domain_error("DecreasingEnvelope: need matching arrays of length >= 2");
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1]))
            throw std::domain_error("DecreasingEnvelope: radii must be strictly increasing");
    // clamp small quadrature noise; anything larger is a real monotonicity bug
    double worst = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[i - 1]) {
            if (values[i - 1] > 0.0)
                worst = std::max(worst, values[i] / values[i - 1] - 1.0);
            values[i] = values[i - 1];
        }
    }
    if (worst > 1e-3)
        throw invariant_violation("DecreasingEnvelope: samples are not nonincreasing");
    DecreasingEnvelope F;
    F.radii_ = std::move(radii);
    F.values_ = std::move(values);
    F.tail_ = tail;
    F.support_end_ = support_end;
    return F;
}

DecreasingEnvelope DecreasingEnvelope::from_function(std::function<double(double)> fn,
                                                     std::vector<double> scan_radii,
                                                     std::optional<Tail> tail,
                                                     std::optional<double> support_end) {
    std::vector<double> vals(scan_radii.size());
    for (std::size_t i = 0; i < scan_radii.size(); ++i) vals[i] = fn(scan_radii[i]);
    auto F = from_samples(std::move(scan_radii), std::move(vals), tail, support_end);
    F.exact_ = std::move(fn);
    return F;
}

double DecreasingEnvelope::value(double rho) const {
    if (rho < 0.0) throw std::domain_error("DecreasingEnvelope: negative radius");
    if (support_end_ && rho >= *support_end_) return 0.0;
    if (rho <= radii_.front()) return values_.front(); // flat cap below the grid
    if (exact_) return exact_(rho);
    if (rho >= radii_.back()) {
        if (tail_) return tail_->coefficient * std::pow(rho, -tail_->exponent);
        return values_.back();
    }
    const auto it = std::upper_bound(radii_.begin(), radii_.end(), rho);
    const std::size_t i = static_cast<std::size_t>(it - radii_.begin()) - 1;
    const double f0 = values_[i], f1 = values_[i + 1];
    if (f0 <= 0.0) return 0.0;
    if (f1 <= 0.0 || f1 == f0) {
        // linear fallback on degenerate segments
        const double t = (rho - radii_[i]) / (radii_[i + 1] - radii_[i]);
        return f0 + t * (f1 - f0);
    }
    // power-law segment: F = f0 (rho/rho_i)^{-e}
    const double e = std::log(f0 / f1) / std::log(radii_[i + 1] / radii_[i]);
    return f0 * std::pow(rho / radii_[i], -e);
}

double DecreasingEnvelope::invert_segment(std::size_t i, double lambda) const {
    const double r0 = radii_[i], r1 = radii_[i + 1];
    const double f0 = values_[i], f1 = values_[i + 1];
    if (exact_) {
        double lo = r0, hi = r1;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (exact_(mid) > lambda ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
    if (f1 == f0 || f1 <= 0.0) {
        if (f1 <= 0.0 && f0 > lambda) {
            const double t = (f0 - lambda) / (f0 - f1);
            return r0 + t * (r1 - r0);
        }
        return lambda < f0 ? r1 : r0;
    }
    const double e = std::log(f0 / f1) / std::log(r1 / r0);
    return r0 * std::pow(f0 / lambda, 1.0 / e);
}

double DecreasingEnvelope::superlevel_radius(double lambda) const {
    if (!(lambda > 0.0)) throw std::domain_error("superlevel_radius: lambda must be positive");
    if (lambda >= values_.front()) return 0.0;
    if (lambda < values_.back() || values_.back() == values_.front()) {
        if (support_end_) return *support_end_;
        if (lambda >= values_.back()) return radii_.back();
        if (tail_) {
            double r = std::pow(tail_->coefficient / lambda, 1.0 / tail_->exponent);
            if (exact_) {
                // refine against the exact evaluator
                double lo = radii_.back(), hi = std::max(r * 4.0, lo * 2.0);
                for (int g = 0; g < 200 && exact_(hi) > lambda; ++g) hi *= 2.0;
                for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
                    const double mid = std::sqrt(lo * hi);
                    (exact_(mid) > lambda ? lo : hi) = mid;
                }
                return 0.5 * (lo + hi);
            }
            return r;
        }
        throw divergent_norm_error("superlevel_radius: lambda below the sampled range "
                                   "and no far-field model is attached");
    }
    // binary search for the last index with F_i > lambda
    std::size_t lo = 0, hi = values_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (values_[mid] > lambda ? lo : hi) = mid;
    }
    return invert_segment(lo, lambda);
}

double DecreasingEnvelope::superlevel_radius_closed(double lambda) const {
    if (!(lambda > 0.0)) throw std::domain_error("superlevel_radius: lambda must be positive");
    if (lambda > values_.front()) return 0.0;
    const double shade = lambda * (1.0 - 4.0 * std::numeric_limits<double>::epsilon());
    double r = superlevel_radius(shade);
    if (support_end_) r = std::min(r, *support_end_);
    return r;
}

// ---------------------------------------------------------------------------
// Distribution and norms
// ---------------------------------------------------------------------------

double superlevel_measure(const DecreasingEnvelope& F, const Params& p, double lambda) {
    const double r = F.superlevel_radius(lambda);
    if (r <= 0.0) return 0.0;
    return std::exp(log_unit_ball_volume(p.n) + p.n * std::log(r));
}

namespace {

double weak_candidate(const Params& p, double lambda, double radius) {
    if (radius <= 0.0 || lambda <= 0.0) return 0.0;
    const double theta = (p.n - p.s) / p.n;
    return lambda * std::exp(theta * (log_unit_ball_volume(p.n) + p.n * std::log(radius)));
}

} // namespace

NormResult weak_norm(const DecreasingEnvelope& F, const Params& p) {
    const double theta = (p.n - p.s) / p.n;
    const auto& vals = F.values();

    double limit_candidate = -1.0;
    if (F.tail()) {
        const double e = F.tail()->exponent;
        const double target = p.n - p.s;
        if (e < target * (1.0 - 1e-9))
            throw divergent_norm_error("weak_norm: envelope decays slower than rho^{s-n}");
        if (std::fabs(e - target) <= target * 1e-9)
            limit_candidate =
                F.tail()->coefficient * std::exp(theta * log_unit_ball_volume(p.n));
    }

    double best = 0.0, best_lambda = 0.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double lam = vals[i];
        if (!(lam > 0.0)) continue;
        const double cand = weak_candidate(p, lam, F.superlevel_radius_closed(lam));
        if (cand > best) {
            best = cand;
            best_lambda = lam;
            best_idx = i;
        }
    }

    NormResult out;
    out.tolerance = 1e-6;
    if (limit_candidate >= best * (1.0 - 1e-12)) {
        out.value = std::max(limit_candidate, best);
        out.maximizer = vals.back() > 0.0 ? vals.back() : best_lambda;
        out.attained_in_limit = true;
        out.tolerance = 1e-9;
        return out;
    }
    if (F.exact()) {
        // refine between the neighbours of the best sample
        const std::size_t i0 = best_idx > 0 ? best_idx - 1 : best_idx;
        const std::size_t i1 = std::min(best_idx + 1, vals.size() - 1);
        double lam_hi = vals[i0], lam_lo = std::max(vals[i1], 1e-300);
        if (lam_hi > lam_lo) {
            auto [llam, cand] = quad::golden_max(
                [&](double t) {
                    const double lam = std::exp(t);
                    return weak_candidate(p, lam, F.superlevel_radius_closed(lam));
                },
                std::log(lam_lo), std::log(lam_hi), 1e-10);
            if (cand > best) {
                best = cand;
                best_lambda = std::exp(llam);
            }
        }
    }
    out.value = best;
    out.maximizer = best_lambda;
    return out;
}

namespace {

// closed-form integral of a power segment F = f0 (x/r0)^{-e} against x^{n-1}
double segment_power_integral(double r0, double r1, double f0, double e, double rpow, int n) {
    // int_{r0}^{r1} (f0 (x/r0)^{-e})^{rpow} x^{n-1} dx
    const double a = n - e * rpow;
    const double c = std::pow(f0, rpow) * std::pow(r0, e * rpow);
    if (std::fabs(a) < 1e-12) return c * std::log(r1 / r0);
    return c * (std::pow(r1, a) - std::pow(r0, a)) / a;
}

} // namespace

NormResult grand_norm(const DecreasingEnvelope& F, const Params& p, double r) {
    const double window = p.n / (p.n - p.s);
    if (!(r > 0.0) || !(r < window))
        throw std::domain_error("grand_norm: exponent r must satisfy 0 < r < n/(n-s)");
    const double theta = (p.n - p.s) / p.n;
    const double nu = p.n - (p.n - p.s) * r; // > 0 inside the window
    const double omega = sphere_area(p.n);
    const double log_v = log_unit_ball_volume(p.n);
    const auto& radii = F.radii();
    const auto& vals = F.values();

    // prefix integrals S_i = int_0^{rho_i} F^r sigma^{n-1} dsigma
    std::vector<double> prefix(radii.size());
    prefix[0] = std::pow(F.front_value(), r) * std::pow(radii.front(), p.n) / p.n;
    quad::Options qopt;
    qopt.rel_tol = 1e-11;
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        const double hi = std::min(radii[i + 1], F.support_end().value_or(kInf));
        double seg = 0.0;
        if (hi > radii[i]) {
            if (F.exact()) {
                seg = quad::integrate(
                          [&](double x) {
                              const double v = F.value(x);
                              return v > 0.0 ? std::pow(v, r) * std::pow(x, p.n - 1) : 0.0;
                          },
                          radii[i], hi, qopt)
                          .value;
            } else if (vals[i] > 0.0 && vals[i + 1] > 0.0 && vals[i + 1] != vals[i]) {
                const double e = std::log(vals[i] / vals[i + 1]) / std::log(radii[i + 1] / radii[i]);
                seg = segment_power_integral(radii[i], hi, vals[i], e, r, p.n);
            } else if (vals[i] > 0.0) {
                seg = segment_power_integral(radii[i], hi, vals[i], 0.0, r, p.n);
            }
        }
        prefix[i + 1] = prefix[i] + seg;
    }

    auto candidate = [&](double radius, double integral) {
        if (!(radius > 0.0) || !(integral > 0.0)) return 0.0;
        const double log_ball = log_v + p.n * std::log(radius);
        return std::exp((theta - 1.0 / r) * log_ball + (1.0 / r) * std::log(omega * integral));
    };

    double best = 0.0, best_radius = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double c = candidate(radii[i], prefix[i]);
        if (c > best) {
            best = c;
            best_radius = radii[i];
        }
    }
    if (F.support_end() && *F.support_end() > radii.back()) {
        // close the gap between the grid end and the support end, then the
        // integral saturates and candidates decrease
        const double hi = *F.support_end();
        const double extra = quad::integrate(
                                 [&](double x) {
                                     const double v = F.value(x);
                                     return v > 0.0 ? std::pow(v, r) * std::pow(x, p.n - 1)
                                                    : 0.0;
                                 },
                                 radii.back(), hi, qopt)
                                 .value;
        const double c = candidate(hi, prefix.back() + extra);
        if (c > best) {
            best = c;
            best_radius = hi;
        }
    }

    double limit_candidate = -1.0;
    if (F.tail() && !F.support_end()) {
        const double e = F.tail()->exponent;
        const double target = p.n - p.s;
        if (e < target * (1.0 - 1e-9))
            throw divergent_norm_error("grand_norm: envelope decays slower than rho^{s-n}");
        if (std::fabs(e - target) <= target * 1e-9)
            limit_candidate = F.tail()->coefficient * std::exp(theta * log_v) *
                              std::pow(p.n / nu, 1.0 / r);
    }

    NormResult out;
    out.tolerance = 1e-6;
    if (limit_candidate >= best * (1.0 - 1e-12)) {
        out.value = std::max(limit_candidate, best);
        out.maximizer = radii.back();
        out.attained_in_limit = true;
        out.tolerance = 1e-9;
        return out;
    }
    out.value = best;
    out.maximizer = best_radius;
    return out;
}

EquivalenceTriple equivalence_check(const DecreasingEnvelope& F, const Params& p, double r,
                                    double slack) {
    const auto w = weak_norm(F, p);
    const auto g = grand_norm(F, p, r);
    const double nu = p.n - (p.n - p.s) * r;
    const double upper = std::pow(p.n / nu, 1.0 / r) * w.value;
    EquivalenceTriple t{w.value, g.value, upper, r < 1.0};
    if (w.value > g.value * (1.0 + slack) + slack)
        throw invariant_violation("equivalence_check: weak norm exceeds grand norm");
    if (g.value > upper * (1.0 + slack) + slack)
        throw invariant_violation("equivalence_check: grand norm exceeds the sandwich bound");
    return t;
}

double small_lambda_limit(const DecreasingEnvelope& F, const Params& p) {
    const auto& radii = F.radii();
    const auto& vals = F.values();
    const std::size_t n = radii.size();
    if (n < 6) throw extrapolation_error("small_lambda_limit: too few samples");

    std::vector<double> cand;
    for (std::size_t i = n - std::min<std::size_t>(n, 14); i < n; ++i) {
        if (vals[i] > 0.0)
            cand.push_back(weak_candidate(p, vals[i], F.superlevel_radius_closed(vals[i])));
    }
    if (cand.size() < 3) throw extrapolation_error("small_lambda_limit: too few positive samples");

    std::vector<double> extrap;
    for (std::size_t i = 0; i + 2 < cand.size(); ++i) {
        const double d1 = cand[i + 1] - cand[i];
        const double d2 = cand[i + 2] - cand[i + 1];
        const double denom = d2 - d1;
        if (std::fabs(denom) < 1e-15 * std::fabs(cand[i + 2]))
            extrap.push_back(cand[i + 2]); // already flat
        else
            extrap.push_back(cand[i + 2] - d2 * d2 / denom);
    }
    const double last = extrap.back();
    const double prev = extrap[extrap.size() - 2];
    if (!(std::fabs(last - prev) <= std::max(1e-12, 5e-3 * std::fabs(last))))
        throw extrapolation_error("small_lambda_limit: extrapolants did not settle");
    return last;
}

WitnessBound witness_lower_bound(const RadialProfile& f, const WitnessConfig& cfg,
                                 const Params& p) {
    const double window = p.n / (p.n - p.s);
    if (!(cfg.r > 0.0) || !(cfg.r < window))
        throw std::domain_error("witness_lower_bound: exponent r outside (0, n/(n-s))");
    if (!(cfg.l > 0.0) || !std::isfinite(cfg.l))
        throw std::domain_error("witness_lower_bound: l must be positive and finite");

    const double radius = witness_radius(f, p, cfg.epsilon); // also validates feasibility
    const double total = l1_norm(f, p);
    const double n = p.n, s = p.s, r = cfg.r;
    const double pw = (n - s) * r;

    quad::Options qopt;
    qopt.rel_tol = 1e-11;
    std::vector<double> seeds;
    for (double x = 1.0; x < cfg.l; x *= 4.0) seeds.push_back(x);
    const double J =
        quad::integrate([&](double t) { return std::pow(t, n - 1.0) * std::pow(1.0 + t, -pw); },
                        0.0, cfg.l, qopt, seeds)
            .value;

    const double log_val = log_riesz_constant(p) + (n - s) / n * log_unit_ball_volume(p.n)
                         + std::log(n) / r + std::log1p(-cfg.epsilon)
                         + (n - s - n / r) * std::log(cfg.l) + std::log(J) / r
                         + std::log(total);
    const double nu = n - pw;
    const double limit = sharp_floor(p) * (1.0 - cfg.epsilon) * std::pow(n / nu, 1.0 / r) * total;
    return WitnessBound{std::exp(log_val), radius, limit};
}

// ---------------------------------------------------------------------------
// Envelope builders
// ---------------------------------------------------------------------------

std::vector<double> log_radius_grid(const EnvelopeOptions& opt) {
    std::vector<double> grid;
    const double l0 = std::log10(opt.rho_min), l1 = std::log10(opt.rho_max);
    const int count = static_cast<int>(std::ceil((l1 - l0) * opt.points_per_decade)) + 1;
    grid.reserve(count);
    for (int i = 0; i < count; ++i)
        grid.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (count - 1.0)));
    return grid;
}

namespace {

DecreasingEnvelope sampled_envelope(const std::vector<double>& grid, std::vector<double> samples,
                                    double tail_coefficient, double tail_exponent,
                                    double seam_tolerance) {
    const double model = tail_coefficient * std::pow(grid.back(), -tail_exponent);
    const double seam = std::fabs(samples.back() / model - 1.0);
    if (seam > seam_tolerance)
        throw numeric_accuracy_error(
            "envelope: samples disagree with the far-field model at the grid end", model, seam);
    return DecreasingEnvelope::from_samples(
        grid, std::move(samples),
        DecreasingEnvelope::Tail{tail_coefficient, tail_exponent});
}

} // namespace

DecreasingEnvelope potential_envelope(const RadialProfile& f, const Params& p,
                                      const EnvelopeOptions& opt) {
    PotentialOptions popt;
    popt.rel_tol = opt.quad_rel_tol;
    const double coef = riesz_constant(p) * l1_norm(f, p);
    // profiles with slowly decaying tails reach the far-field regime late;
    // push the grid end out until the seam closes
    EnvelopeOptions eff = opt;
    for (int grow = 0; grow < 4; ++grow) {
        const double probe = riesz_potential(f, p, eff.rho_max, popt);
        const double model = coef * std::pow(eff.rho_max, -(p.n - p.s));
        if (std::fabs(probe / model - 1.0) <= 0.8 * eff.seam_tolerance) break;
        eff.rho_max *= 10.0;
    }
    const auto grid = log_radius_grid(eff);
    auto samples = par::map_grid(
        grid, [&](double rho) { return riesz_potential(f, p, rho, popt); }, eff.mode);
    return sampled_envelope(grid, std::move(samples), coef, p.n - p.s, eff.seam_tolerance);
}

DecreasingEnvelope maximal_envelope(const RadialProfile& f, const Params& p,
                                    const EnvelopeOptions& opt) {
    const double coef =
        std::exp((p.s - p.n) / p.n * log_unit_ball_volume(p.n)) * l1_norm(f, p);
    // slowly decaying profiles approach the far-field model slowly; push the
    // grid end out until the seam closes
    EnvelopeOptions eff = opt;
    for (int grow = 0; grow < 4; ++grow) {
        const double probe = fractional_maximal(f, p, eff.rho_max);
        const double model = coef * std::pow(eff.rho_max, -(p.n - p.s));
        if (std::fabs(probe / model - 1.0) <= 0.8 * eff.seam_tolerance) break;
        eff.rho_max *= 10.0;
    }
    const auto grid = log_radius_grid(eff);
    auto samples = par::map_grid(
        grid, [&](double rho) { return fractional_maximal(f, p, rho); }, eff.mode);
    return sampled_envelope(grid, std::move(samples), coef, p.n - p.s, eff.seam_tolerance);
}

DecreasingEnvelope envelope_from_function(std::function<double(double)> F,
                                          const EnvelopeOptions& opt,
                                          std::optional<DecreasingEnvelope::Tail> tail,
                                          std::optional<double> support_end) {
    return DecreasingEnvelope::from_function(std::move(F), log_radius_grid(opt), tail,
                                             support_end);
}

} // namespace riesz

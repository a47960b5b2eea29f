#pragma once

#include "riesz/constants.hpp"
#include "riesz/parallel.hpp"
#include "riesz/radial.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace riesz {

// Result of a supremum-type norm evaluation. attained_in_limit marks suprema
// approached only at a scan boundary (lambda -> 0 or radius -> infinity); the
// reported value is then the extrapolated limit and the maximizer the last
// sampled point.
struct NormResult {
    double value = 0.0;
    double maximizer = 0.0;
    bool attained_in_limit = false;
    double tolerance = 0.0; // accuracy actually achieved by the scan
};

// report-note form: value, maximizer, attained_in_limit, tolerance
std::string describe(const NormResult& r);

// A nonincreasing radial envelope F(rho) (a sampled I_s f or M_s f), with an
// optional exact evaluator and an optional far-field power model
// F ~ coefficient * rho^{-exponent}. Level-set inversion uses the
// right-continuous convention so the distribution function is exactly the
// measure of the open super-level set of the interpolant.
class DecreasingEnvelope {
public:
    struct Tail {
        double coefficient;
        double exponent;
    };

    static DecreasingEnvelope from_samples(std::vector<double> radii, std::vector<double> values,
                                           std::optional<Tail> tail,
                                           std::optional<double> support_end = {});

    static DecreasingEnvelope from_function(std::function<double(double)> F,
                                            std::vector<double> scan_radii,
                                            std::optional<Tail> tail,
                                            std::optional<double> support_end = {});

    double value(double rho) const;
    double front_value() const { return values_.front(); }

    // sup{rho : F(rho) > lambda}, 0 when the open super-level set is empty
    double superlevel_radius(double lambda) const;
    // sup{rho : F(rho) >= lambda}
    double superlevel_radius_closed(double lambda) const;

    const std::vector<double>& radii() const noexcept { return radii_; }
    const std::vector<double>& values() const noexcept { return values_; }
    const std::optional<Tail>& tail() const noexcept { return tail_; }
    const std::optional<double>& support_end() const noexcept { return support_end_; }
    bool exact() const noexcept { return static_cast<bool>(exact_); }

private:
    DecreasingEnvelope() = default;
    double invert_segment(std::size_t i, double lambda) const;

    std::vector<double> radii_, values_;
    std::function<double(double)> exact_;
    std::optional<Tail> tail_;
    std::optional<double> support_end_;
};

// |{x : F(|x|) > lambda}| = v_n * superlevel_radius(lambda)^n
double superlevel_measure(const DecreasingEnvelope& F, const Params& p, double lambda);

// sup_lambda lambda |{F > lambda}|^{(n-s)/n}
NormResult weak_norm(const DecreasingEnvelope& F, const Params& p);

// sup over centered balls B of |B|^{-1/r + (n-s)/n} (int_B F^r)^{1/r},
// 0 < r < n/(n-s). Restriction to centered balls is exact for nonincreasing
// radial envelopes.
NormResult grand_norm(const DecreasingEnvelope& F, const Params& p, double r);

struct EquivalenceTriple {
    double weak;
    double grand;
    double upper; // (n/(n-r(n-s)))^{1/r} * weak
    bool r_below_one;
};

// Checks  weak <= grand <= (n/(n-r(n-s)))^{1/r} weak  and throws
// invariant_violation when the sandwich fails beyond 1e-6 slack.
EquivalenceTriple equivalence_check(const DecreasingEnvelope& F, const Params& p, double r,
                                    double slack = 1e-6);

// lim_{lambda->0} lambda |{F > lambda}|^{(n-s)/n} by Aitken extrapolation over
// the largest sampled radii.
double small_lambda_limit(const DecreasingEnvelope& F, const Params& p);

struct WitnessBound {
    double value;          // finite-l lower bound
    double resolved_radius;
    double limit_value;    // l -> infinity limit
};

// The dilated-ball witness lower bound for the grand norm of I_s f:
// gamma_s v_n^{(n-s)/n} n^{1/r} (1-eps) l^{-n/r+n-s}
//   (int_0^l t^{n-1} (t+1)^{-(n-s)r} dt)^{1/r} * ||f||_1.
WitnessBound witness_lower_bound(const RadialProfile& f, const WitnessConfig& cfg,
                                 const Params& p);

// Envelope builders --------------------------------------------------------

struct EnvelopeOptions {
    double rho_min = 1e-4;
    double rho_max = 1e6;
    int points_per_decade = 48;
    par::Mode mode = par::Mode::openmp;
    double quad_rel_tol = 5e-8;
    double seam_tolerance = 5e-3; // sample/tail-model agreement required at the grid end
};

std::vector<double> log_radius_grid(const EnvelopeOptions& opt);

// Samples I_s f on a log grid (parallel over grid points) and attaches the
// far-field model gamma_s ||f||_1 rho^{s-n}, verified at the seam.
DecreasingEnvelope potential_envelope(const RadialProfile& f, const Params& p,
                                      const EnvelopeOptions& opt = {});

// Same for M_s f with model v_n^{(s-n)/n} ||f||_1 rho^{s-n}.
DecreasingEnvelope maximal_envelope(const RadialProfile& f, const Params& p,
                                    const EnvelopeOptions& opt = {});

DecreasingEnvelope envelope_from_function(std::function<double(double)> F,
                                          const EnvelopeOptions& opt,
                                          std::optional<DecreasingEnvelope::Tail> tail,
                                          std::optional<double> support_end = {});

} // namespace riesz

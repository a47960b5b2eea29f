#pragma once

#include "riesz/constants.hpp"
#include "riesz/norms.hpp"
#include "riesz/radial.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace riesz {

// Constants of the pointwise lower-bound construction:
// c = 4 pi^{n/2} / ((n-s-2) Gamma(n/2-1) s),
// d = 2^{n-s+1} pi^{n/2} / ((n-s-2) Gamma(n/2)),
// lambda0 = gamma_s (2^{n-s-2} c - d), positive on the window.
struct LowerBoundConstants {
    double c;
    double d;
    double lambda0;
};

LowerBoundConstants lower_bound_constants(const Params& p);

// The witness f(y) = |y|^{2-n} chi_{|y| <= 1}; requires n > 2.
RadialProfile lower_bound_profile(const Params& p);

// c rho^{-(n-s-2)} - d, valid on 0 < rho <= 1/2.
double lower_bound_pointwise(const Params& p, double rho);

struct LevelSetEvidence {
    double lambda0;
    double measured_measure; // |{I_s f > lambda0}| from the sampled envelope
    double floor_measure;    // v_n 2^{-n}
    // lambda0 (v_n 2^{-n})^{(n-s)/n} / ||f||_1, equal to the printed lower
    // bound by pure algebra
    double analytic_ratio;
    double printed_lower_bound;
    bool ok;
};

LevelSetEvidence lower_bound_level_set(const Params& p, const DecreasingEnvelope& env,
                                       double l1);

struct BoundsRow {
    int n = 0;
    double s = 0.0;
    std::optional<double> lower;         // printed lower bound (window only)
    double exact_floor = 0.0;            // gamma_s v_n^{(n-s)/n}
    std::optional<double> witness_ratio; // lambda0-pinned ratio of the witness
    double upper = 0.0;                  // gamma_s v_n^{(n-s)/n} n/s
    double tau_bound = 0.0;              // heat-route constant tau_s
    std::optional<double> witness_ratio_opt; // lambda-optimized ratio (>= witness_ratio)
    std::vector<std::string> flags;
};

struct TabulateOptions {
    bool with_witness = false; // witness columns need full quadrature envelopes
    double edge_margin = 1e-6; // rows this close to s = (n-2)/4 are flagged, not computed
    par::Mode mode = par::Mode::openmp;
    EnvelopeOptions envelope{};
};

// One row per s; row failures are collected into flags, never fatal.
std::vector<BoundsRow> tabulate(int n, std::span<const double> s_grid,
                                const TabulateOptions& opt = {});

std::string bounds_csv(const std::vector<BoundsRow>& rows);

} // namespace riesz

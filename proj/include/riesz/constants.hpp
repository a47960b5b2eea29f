#pragma once

#include "riesz/special_functions.hpp"

namespace riesz {

// Ambient dimension n and fractional order s, 0 < s < n. Validation is eager:
// downstream code assumes the window.
struct Params {
    int n;
    double s;

    Params(int n_, double s_);

    // Additional window for the two-sided best-constant estimate:
    // n > 2 and 0 < s < (n-2)/4.
    bool in_lower_bound_window() const noexcept;
    void require_lower_bound_window() const;
};

// Parameters of the convolution identity |x|^{-(n-s)} * |x|^{-(n-alpha)}:
// 0 < alpha < n and alpha + s < n.
struct CompositionParams {
    Params base;
    double alpha;

    CompositionParams(Params p, double alpha_);
};

// gamma_s = 2^{-s} pi^{-n/2} Gamma((n-s)/2) / Gamma(s/2)
double riesz_constant(const Params& p);
double log_riesz_constant(const Params& p);

// v_n = pi^{n/2} / Gamma(n/2 + 1)
double unit_ball_volume(int n);
double log_unit_ball_volume(int n);

// |S^{n-1}| = n * v_n
double sphere_area(int n);

// c_{n,s} = pi^{n/2} 2^{(s+n)/2} Gamma(s/2) / Gamma((s+n)/2); equals the L^1
// norm of the extremal profile.
double extremal_constant(const Params& p);

// C_{n,alpha,s} of the power-convolution identity.
double composition_constant(const CompositionParams& cp);

// Upper estimate gamma_s v_n^{(n-s)/n} n/s for the best weak-type constant.
double best_constant_upper(const Params& p);

// Lower estimate gamma_s v_n^{(n-s)/n} (n-2-4s)/(2s(n-2-s)); requires the
// lower-bound window.
double best_constant_lower(const Params& p);

// Floor gamma_s v_n^{(n-s)/n} attained by the extremal family.
double sharp_floor(const Params& p);

// tau_s = 2 (4 pi)^{-s/2} (2^{s/2}-1)^{(s-n)/n} (n/(n-s)) s^{-s/n} / Gamma(s/2),
// the heat-semigroup pointwise bound constant.
double tau_constant(const Params& p);

// Closed-form majorant (2/ln 2)(4 pi)^{s/2} Gamma(s/2+1)^{-1} n/(n-s) of tau_s.
double tau_constant_majorant(const Params& p);

} // namespace riesz

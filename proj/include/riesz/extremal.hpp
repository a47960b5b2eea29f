#pragma once

#include "riesz/constants.hpp"
#include "riesz/norms.hpp"
#include "riesz/radial.hpp"

#include <span>
#include <vector>

namespace riesz {

// Point on the unit sphere S^n in R^{n+1}.
struct SpherePoint {
    std::vector<double> coords;
    int dim() const noexcept { return static_cast<int>(coords.size()) - 1; }
};

SpherePoint inverse_stereographic(std::span<const double> x);

// Inverse of the above; throws at the south pole.
std::vector<double> stereographic(const SpherePoint& xi);

// (2/(1+|x|^2))^n
double plane_jacobian(std::span<const double> x);

// (1 + xi_{n+1})^{-n}
double sphere_jacobian(const SpherePoint& xi);

// Relative residual of
// |S^{-1}xi - S^{-1}eta|^2 = J(xi)^{1/n} |xi - eta|^2 J(eta)^{1/n}.
double distance_identity_residual(std::span<const double> x, std::span<const double> y);

// int_{S^n} |xi - eta|^{-(n-s)} d eta = 2^s pi^{n/2} Gamma(s/2)/Gamma((n+s)/2)
double sphere_kernel_closed_form(const Params& p);

// Polar-angle quadrature of the sphere kernel integral.
double sphere_kernel_integral(const Params& p, double rel_tol = 1e-9);

// Same integral computed with the polar axis held fixed while the base point
// sits at polar angle `alpha`; rotation invariance makes this independent of
// alpha, which the tests exercise. Full 2-D quadrature, n >= 2.
double sphere_kernel_integral_offaxis(const Params& p, double alpha, double rel_tol = 1e-8);

// Centered extremal profile g(rho) = (2/(1+rho^2))^{(n+s)/2}.
RadialProfile extremal_profile(const Params& p);

// General family member (a/(b+rho^2))^{(n+s)/2}.
RadialProfile extremal_family_profile(const Params& p, double a, double b);

// I_s g in closed form: gamma_s c_{n,s} (1+rho^2)^{-(n-s)/2}.
double extremal_potential(const Params& p, double rho);

// |{I_s g > lambda}| = v_n ((gamma_s c_{n,s}/lambda)^{2/(n-s)} - 1)^{n/2},
// evaluated in a cancellation-free form near the top value.
double extremal_superlevel_measure(const Params& p, double lambda);

// Envelope backed by the closed-form potential (exact evaluator, exact tail).
DecreasingEnvelope extremal_potential_envelope(const Params& p,
                                               const EnvelopeOptions& opt = {});

} // namespace riesz

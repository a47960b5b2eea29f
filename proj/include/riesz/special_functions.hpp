#pragma once

namespace riesz {

inline constexpr double pi = 3.14159265358979323846264338327950288;

// log Gamma(x) for x > 0. Pure function (no global state), relative accuracy
// of exp(log_gamma) is ~1e-14 over the range used here.
double log_gamma(double x);

// Gamma(x) for x > 0, evaluated through log_gamma so large arguments do not
// overflow intermediate products.
double gamma_fn(double x);

double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// Fraction of the unit sphere S^{n-1} lying in the polar cap {cos(theta) >= u}.
double sphere_cap_fraction(int n, double u);

// Same, parametrized by 1 - u computed in a cancellation-free way by the
// caller; this keeps thin caps (u near 1) accurate.
double sphere_cap_fraction_stable(int n, double one_minus_u);

} // namespace riesz

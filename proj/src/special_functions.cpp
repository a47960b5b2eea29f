#include "riesz/special_functions.hpp"
#include "riesz/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace riesz {

namespace {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficient set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};
constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;

double lanczos_log_gamma(double x) {
    // valid for x >= 0.5
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (int i = 1; i < 15; ++i) sum += kLanczos[i] / (z + i);
    const double base = z + kLanczosG + 0.5;
    return kHalfLogTwoPi + (z + 0.5) * std::log(base) - base + std::log(sum);
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("log_gamma: argument must be positive and finite");
    if (x < 0.5) {
        // reflection keeps the small-argument path accurate
        return std::log(pi / std::sin(pi * x)) - lanczos_log_gamma(1.0 - x + 1.0) + std::log(1.0 - x);
    }
    return lanczos_log_gamma(x);
}

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("gamma_fn: argument must be positive and finite");
    if (x < 0.5) return pi / (std::sin(pi * x) * gamma_fn(1.0 - x));
    return std::exp(lanczos_log_gamma(x));
}

double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

namespace {

// continued fraction for the incomplete beta (modified Lentz)
double beta_cf(double a, double b, double x) {
    constexpr int max_it = 300;
    constexpr double eps = 3.0e-16;
    constexpr double fpmin = 1.0e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_it; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw numeric_accuracy_error("incomplete_beta: continued fraction did not converge", h, 1.0);
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("incomplete_beta: parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lbt = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    const double bt = std::exp(lbt);
    if (x < (a + 1.0) / (a + b + 2.0))
        return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double sphere_cap_fraction(int n, double u) {
    return sphere_cap_fraction_stable(n, 1.0 - u);
}

double sphere_cap_fraction_stable(int n, double one_minus_u) {
    if (n < 1) throw std::domain_error("sphere_cap_fraction: n >= 1 required");
    if (one_minus_u <= 0.0) return 0.0;
    if (one_minus_u >= 2.0) return 1.0;
    if (n == 1) {
        // S^0 = two points; the cap holds the +1 point only (u in (-1,1))
        return 0.5;
    }
    const double u = 1.0 - one_minus_u;
    const double a = 0.5 * (n - 1);
    const double x = one_minus_u * (2.0 - one_minus_u); // 1 - u^2 without cancellation
    const double half_tail = 0.5 * incomplete_beta(a, 0.5, std::min(x, 1.0));
    return u >= 0.0 ? half_tail : 1.0 - half_tail;
}

} // namespace riesz

#pragma once

#include "riesz/constants.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace riesz {

// Far-field power model h(rho) ~ coefficient * rho^{-exponent}.
struct TailModel {
    double coefficient;
    double exponent;
};

// A radial function h(rho) on [0, inf). Two backings share one interface:
// grid samples with monotone piecewise-cubic interpolation (the file-I/O
// path), and an exact evaluator used by the built-in families so closed-form
// identities can be checked at tight tolerances.
class RadialProfile {
public:
    struct Traits {
        bool monotone_decreasing = false;
        std::optional<TailModel> tail;  // asymptotic model; exact beyond the grid for grid profiles
        std::optional<double> cutoff;   // support ends here, h == 0 beyond
        double far_field_start = 1.0;   // radius beyond which the tail model is trustworthy
        double inner_exponent = 0.0;    // h ~ rho^{-inner_exponent} as rho -> 0
        std::optional<double> sup_bound;
    };

    static RadialProfile from_grid(std::vector<double> nodes, std::vector<double> values,
                                   bool monotone_decreasing, std::optional<TailModel> tail,
                                   std::optional<double> cutoff);

    static RadialProfile from_function(std::function<double(double)> h, Traits traits);

    double operator()(double rho) const;

    bool monotone_decreasing() const noexcept { return traits_.monotone_decreasing; }
    const std::optional<TailModel>& tail() const noexcept { return traits_.tail; }
    const std::optional<double>& cutoff() const noexcept { return traits_.cutoff; }
    double far_field_start() const noexcept { return traits_.far_field_start; }
    double inner_exponent() const noexcept { return traits_.inner_exponent; }
    const std::optional<double>& sup_bound() const noexcept { return traits_.sup_bound; }
    bool grid_backed() const noexcept { return !exact_; }
    // support end: cutoff, or grid end when neither tail nor evaluator extends it
    double support_end() const noexcept;

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& values() const noexcept { return values_; }

    // rho -> h(a * rho)
    RadialProfile scaled_argument(double a) const;

private:
    RadialProfile() = default;
    double grid_value(double rho) const;

    std::vector<double> nodes_, values_, slopes_;
    std::function<double(double)> exact_;
    Traits traits_;
};

// Built-in families ------------------------------------------------------

// height * indicator of the centered ball of the given radius
RadialProfile indicator_profile(double radius = 1.0, double height = 1.0);

// h(rho) = rho^{-decay}, optionally cut off; the lower-bound witness and
// pure-power convolution inputs
RadialProfile power_profile(double decay, std::optional<double> cutoff = {});

// h(rho) = height * exp(-rho^2 / (2 width^2))
RadialProfile gaussian_profile(double width = 1.0, double height = 1.0);

// Operations ---------------------------------------------------------------

// L^1 norm over R^n: omega_{n-1} * int h(rho) rho^{n-1} drho, tail included.
double l1_norm(const RadialProfile& f, const Params& p, double rel_tol = 1e-11);

// Angular average K(rho, sigma) = int_{S^{n-1}} |rho e_1 - sigma w|^{-(n-s)} dw.
// Closed forms for n = 1 and odd n <= 5; 1-D polar quadrature otherwise.
double angular_kernel(const Params& p, double rho, double sigma, double rel_tol = 1e-10);

// Quadrature reference for the angular kernel (always the polar integral).
double angular_kernel_quadrature(const Params& p, double rho, double sigma,
                                 double rel_tol = 1e-10);

// Kernel with the diagonal gap |rho - sigma| supplied exactly; substituted
// integration variables would otherwise lose the gap to rounding.
double angular_kernel_gap(const Params& p, double rho, double sigma, double gap,
                          double rel_tol = 1e-10);

struct PotentialOptions {
    double rel_tol = 5e-8;
    int max_panels = 10000;
};

// I_s f (rho) = gamma_s * int_0^inf K(rho, sigma) h(sigma) sigma^{n-1} dsigma,
// diagonal singularity absorbed by power substitutions. Returns +inf when the
// potential genuinely diverges at rho (profile too singular at the origin).
double riesz_potential(const RadialProfile& f, const Params& p, double rho,
                       const PotentialOptions& opt = {});

// int_{B(x,r)} f for |x| = center_radius, via sphere-cap fractions.
double ball_mass(const RadialProfile& f, const Params& p, double center_radius, double r,
                 double rel_tol = 1e-9);

struct SupScan {
    double value = 0.0;
    double maximizer = 0.0;
};

// M_s f (rho) = sup_r |B(x,r)|^{s/n-1} int_{B(x,r)} f, log-grid scan plus
// golden-section refinement.
SupScan fractional_maximal_scan(const RadialProfile& f, const Params& p, double rho);
double fractional_maximal(const RadialProfile& f, const Params& p, double rho);

// M(delta_0)(x) = 1 / (v_n |x|^n)
double dirac_maximal(const Params& p, double rho);

// Mass-deficit witness configuration: epsilon in (0,1), ball dilation l > 0,
// grand-norm exponent r in (0, n/(n-s)).
struct WitnessConfig {
    double epsilon;
    double l;
    double r;
};

// Radius R with int_{B_R} f = (1 - epsilon) ||f||_1 (bisection).
double witness_radius(const RadialProfile& f, const Params& p, double epsilon);

struct PointwiseWitness {
    double value;
    double resolved_radius;
};

// (1 - epsilon) ||f||_1 (rho + R)^{s-n}: a certified pointwise lower bound for
// I_s f / gamma_s.
PointwiseWitness pointwise_lower_witness(const RadialProfile& f, const WitnessConfig& cfg,
                                         const Params& p, double rho);

} // namespace riesz

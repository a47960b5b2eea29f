#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riesz/constants.hpp"
#include "riesz/errors.hpp"
#include "riesz/extremal.hpp"
#include "riesz/radial.hpp"

#include <cmath>
#include <random>

using namespace riesz;

namespace {

std::mt19937_64 seeded_rng() {
    const char* env = std::getenv("RIESZ_WEAK_SEED");
    return std::mt19937_64(env ? std::strtoull(env, nullptr, 10) : 0);
}

// test-local elementary antiderivative for the n = 3 polar integral:
// int_{-1}^{1} (A - B c)^{-(3-s)/2} dc against the S^2 measure
double kernel3_antiderivative(double s, double rho, double sigma) {
    const double diff = std::fabs(rho - sigma), sum = rho + sigma;
    if (std::fabs(s - 1.0) < 1e-12)
        return 2.0 * pi / (rho * sigma) * std::log(sum / diff);
    return 2.0 * pi * (std::pow(diff, s - 1.0) - std::pow(sum, s - 1.0)) /
           ((1.0 - s) * rho * sigma);
}

} // namespace

TEST_CASE("profile construction invariants") {
    CHECK_THROWS_AS(RadialProfile::from_grid({0.0}, {1.0}, false, {}, {}), std::domain_error);
    CHECK_THROWS_AS(RadialProfile::from_grid({0.0, 0.0}, {1.0, 1.0}, false, {}, {}),
                    std::domain_error);
    CHECK_THROWS_AS(RadialProfile::from_grid({0.0, 1.0}, {1.0, -0.25}, false, {}, {}),
                    std::domain_error);
    CHECK_THROWS_AS(RadialProfile::from_grid({0.0, 1.0}, {1.0, 2.0}, true, {}, {}),
                    std::domain_error);
    CHECK_THROWS_AS(
        RadialProfile::from_grid({0.0, 1.0}, {1.0, 0.5}, true, TailModel{1.0, 4.0}, 2.0),
        std::domain_error);
    CHECK_NOTHROW(
        RadialProfile::from_grid({0.0, 1.0, 2.0}, {1.0, 0.5, 0.25}, true, {}, {}));
}

TEST_CASE("monotone interpolation stays monotone") {
    // data from a decreasing function; the interpolant must not overshoot
    std::vector<double> nodes, values;
    for (int i = 0; i <= 400; ++i) {
        const double x = 0.025 * i;
        nodes.push_back(x);
        values.push_back(1.0 / (1.0 + x * x));
    }
    const auto f = RadialProfile::from_grid(nodes, values, true, {}, {});
    double prev = f(0.0);
    for (double x = 0.0; x < 10.0; x += 0.01) {
        const double v = f(x);
        CHECK(v <= prev + 1e-14);
        prev = v;
    }
    // interpolation error small on smooth data
    for (double x : {0.11, 1.37, 5.93})
        CHECK(f(x) == doctest::Approx(1.0 / (1.0 + x * x)).epsilon(2e-4));
}

TEST_CASE("l1 norms") {
    const Params p3(3, 1.0);
    CHECK(l1_norm(indicator_profile(), p3) ==
          doctest::Approx(unit_ball_volume(3)).epsilon(1e-10));
    // the extremal profile integrates to the sphere-side constant
    CHECK(l1_norm(extremal_profile(p3), p3) ==
          doctest::Approx(extremal_constant(p3)).epsilon(1e-8));
    // |y|^{2-n} chi in n = 5 integrates to half the sphere area
    const Params p5(5, 0.5);
    CHECK(l1_norm(power_profile(3.0, 1.0), p5) ==
          doctest::Approx(0.5 * sphere_area(5)).epsilon(1e-10));
    // divergent tails are rejected
    CHECK_THROWS_AS(l1_norm(power_profile(3.0), p5), divergent_norm_error);
    CHECK_THROWS_AS(l1_norm(power_profile(5.5), p5), divergent_norm_error);
}

TEST_CASE("angular kernel closed values and symmetry") {
    const Params p3(3, 1.0);
    // sigma = 0: constant integrand over the sphere
    CHECK(angular_kernel(p3, 2.0, 0.0) ==
          doctest::Approx(sphere_area(3) * std::pow(2.0, -2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(angular_kernel(p3, 0.0, 0.0), std::domain_error);

    // quadrature route against the elementary antiderivative, n = 3
    for (double s : {0.4, 1.0, 1.7, 2.6}) {
        const Params p(3, s);
        for (auto [r, sig] : {std::pair<double, double>{1.0, 0.5},
                              {1.0, 0.999},
                              {2.0, 2.0001},
                              {0.3, 4.0}}) {
            const double oracle = kernel3_antiderivative(s, r, sig);
            CHECK(angular_kernel_quadrature(p, r, sig) ==
                  doctest::Approx(oracle).epsilon(1e-10));
            CHECK(angular_kernel(p, r, sig) == doctest::Approx(oracle).epsilon(1e-12));
        }
    }
    // the Newtonian-type closed form 4 pi min/(rho sigma) appears at n - s = 1
    const Params pn(3, 2.0);
    CHECK(angular_kernel(pn, 1.5, 0.6) ==
          doctest::Approx(4.0 * pi * 0.6 / (1.5 * 0.6)).epsilon(1e-12));

    // symmetry K(rho, sigma) = K(sigma, rho)
    auto gen = seeded_rng();
    std::uniform_real_distribution<double> u(0.05, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = u(gen), b = u(gen);
        for (const Params& p : {Params(2, 0.7), Params(3, 1.2), Params(5, 0.5)}) {
            CHECK(angular_kernel(p, a, b) ==
                  doctest::Approx(angular_kernel(p, b, a)).epsilon(1e-9));
        }
    }
    // n = 5 closed form against quadrature, including near the diagonal
    for (double s5 : {0.5, 1.0, 2.0}) {
        const Params p5(5, s5);
        for (double sig : {0.4, 0.9999, 1.0 + 1e-9, 3.0})
            CHECK(angular_kernel(p5, 1.0, sig) ==
                  doctest::Approx(angular_kernel_quadrature(p5, 1.0, sig)).epsilon(1e-9));
    }
    // n = 1 two-point kernel
    const Params p1(1, 0.5);
    CHECK(angular_kernel(p1, 1.0, 0.25) ==
          doctest::Approx(std::pow(0.75, -0.5) + std::pow(1.25, -0.5)).epsilon(1e-13));
}

TEST_CASE("riesz potential examples") {
    const Params p3(3, 1.0);
    // extremal closed form at the center
    CHECK(riesz_potential(extremal_profile(p3), p3, 0.0) ==
          doctest::Approx(2.0).epsilon(1e-6));

    // pure power profile reproduces the convolution identity
    const Params p5(5, 1.0);
    const double expected =
        riesz_constant(p5) * composition_constant(CompositionParams(p5, 2.0));
    CHECK(riesz_potential(power_profile(3.0), p5, 1.0) ==
          doctest::Approx(expected).epsilon(1e-4));
    // and at a second radius through the homogeneity |x|^{-(n-s-alpha)}
    const Params p5b(5, 0.5);
    const double expected2 = riesz_constant(p5b) *
                             composition_constant(CompositionParams(p5b, 2.0)) *
                             std::pow(2.0, -(5.0 - 0.5 - 2.0));
    CHECK(riesz_potential(power_profile(3.0), p5b, 2.0) ==
          doctest::Approx(expected2).epsilon(1e-4));

    // far field of a unit point mass
    const auto bump = indicator_profile(1.0, 1.0 / unit_ball_volume(3));
    const double rho = 150.0;
    CHECK(riesz_potential(bump, p3, rho) ==
          doctest::Approx(riesz_constant(p3) * std::pow(rho, -2.0)).epsilon(1e-4));
}

TEST_CASE("dilation covariance of the potential") {
    // I_s f_a(rho) = a^{-s} I_s f(a rho) for f_a(rho) = f(a rho)
    const Params p(3, 0.8);
    const auto profiles = {extremal_profile(p), indicator_profile(),
                           gaussian_profile(0.7)};
    for (const auto& f : profiles) {
        for (double a : {0.5, 2.0, 7.0}) {
            const auto fa = f.scaled_argument(a);
            for (double rho : {0.3, 1.7}) {
                const double lhs = riesz_potential(fa, p, rho);
                const double rhs = std::pow(a, -p.s) * riesz_potential(f, p, a * rho);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("ball mass") {
    const Params p(3, 1.0);
    const auto chi = indicator_profile();
    CHECK(ball_mass(chi, p, 0.0, 1.0) == doctest::Approx(unit_ball_volume(3)).epsilon(1e-9));
    // the ball swallows the support
    CHECK(ball_mass(chi, p, 2.0, 3.5) == doctest::Approx(l1_norm(chi, p)).epsilon(1e-9));
    CHECK(ball_mass(chi, p, 5.0, 1.0) == 0.0);

    // monotone in r at fixed center (randomized)
    auto gen = seeded_rng();
    std::uniform_real_distribution<double> uc(0.0, 3.0);
    std::uniform_real_distribution<double> ur(0.1, 4.0);
    const auto g = extremal_profile(p);
    for (int trial = 0; trial < 100; ++trial) {
        const double c = uc(gen);
        double r1 = ur(gen), r2 = ur(gen);
        if (r1 > r2) std::swap(r1, r2);
        CHECK(ball_mass(g, p, c, r1) <= ball_mass(g, p, c, r2) * (1.0 + 1e-9));
    }
    // never exceeds the total mass
    const double total = l1_norm(g, p);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(ball_mass(g, p, uc(gen), ur(gen)) <= total * (1.0 + 1e-9));
}

TEST_CASE("fractional maximal function") {
    const Params p(3, 1.0);
    const auto chi = indicator_profile();
    // supremum at r = 1 by piecewise monotonicity
    CHECK(fractional_maximal(chi, p, 0.0) ==
          doctest::Approx(std::pow(unit_ball_volume(3), p.s / p.n)).epsilon(1e-5));

    // Dirac comparison for a unit-mass decreasing profile
    const auto f = indicator_profile(1.0, 1.0 / unit_ball_volume(3));
    for (double rho : {0.2, 1.0, 4.0}) {
        const double bound = std::pow(dirac_maximal(p, rho), (p.n - p.s) / p.n);
        CHECK(fractional_maximal(f, p, rho) <= bound * (1.0 + 1e-5));
    }

    // pointwise domination by the potential, randomized radii
    auto gen = seeded_rng();
    std::uniform_real_distribution<double> u(std::log(1e-2), std::log(1e2));
    const auto g = extremal_profile(p);
    const double c = std::exp(-log_riesz_constant(p) +
                              (p.s - p.n) / p.n * log_unit_ball_volume(p.n));
    for (int trial = 0; trial < 50; ++trial) {
        const double rho = std::exp(u(gen));
        CHECK(fractional_maximal(g, p, rho) <=
              c * riesz_potential(g, p, rho) * (1.0 + 1e-5));
    }
}

TEST_CASE("dirac maximal") {
    const Params p(3, 1.0);
    CHECK(dirac_maximal(p, 1.0) == doctest::Approx(3.0 / (4.0 * pi)).epsilon(1e-13));
    CHECK_THROWS_AS(dirac_maximal(p, 0.0), std::domain_error);
    // homogeneity of degree -n
    CHECK(dirac_maximal(p, 1.0) ==
          doctest::Approx(std::pow(2.0, 3) * dirac_maximal(p, 2.0)).epsilon(1e-13));
    // lambda |{M delta > lambda}| = 1
    for (double lam : {0.1, 1.0, 25.0}) {
        const double rho_star = std::pow(unit_ball_volume(p.n) * lam, -1.0 / p.n);
        CHECK(dirac_maximal(p, rho_star) == doctest::Approx(lam).epsilon(1e-12));
        const double measure = unit_ball_volume(p.n) * std::pow(rho_star, p.n);
        CHECK(lam * measure == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("mass-deficit witness") {
    const Params p(3, 1.0);
    const auto f = indicator_profile(1.0, 1.0 / unit_ball_volume(3));

    // nearly all mass inside: R approaches the support radius
    const auto w = pointwise_lower_witness(f, WitnessConfig{1e-9, 1.0, 1.0}, p, 2.0);
    CHECK(w.resolved_radius == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(w.value == doctest::Approx(std::pow(2.0 + w.resolved_radius, p.s - p.n))
                         .epsilon(1e-6));

    // epsilon -> 1 kills the bound
    const auto w2 = pointwise_lower_witness(f, WitnessConfig{1.0 - 1e-12, 1.0, 1.0}, p, 2.0);
    CHECK(w2.value < 1e-11);

    CHECK_THROWS_AS(witness_radius(f, p, 0.0), infeasible_witness_error);
    CHECK_THROWS_AS(witness_radius(f, p, 1.0), infeasible_witness_error);

    // certified lower bound under the potential, randomized radii
    auto gen = seeded_rng();
    std::uniform_real_distribution<double> u(std::log(1e-2), std::log(1e2));
    const auto g = extremal_profile(p);
    const double gamma_s = riesz_constant(p);
    const WitnessConfig cfg{0.25, 1.0, 1.0};
    for (int trial = 0; trial < 50; ++trial) {
        const double rho = std::exp(u(gen));
        const auto lower = pointwise_lower_witness(g, cfg, p, rho);
        CHECK(riesz_potential(g, p, rho) / gamma_s >= lower.value * (1.0 - 1e-6));
    }
}

TEST_CASE("exhausted refinement budget raises with the best estimate attached") {
    const Params p(3, 0.1);
    const auto g = extremal_profile(p);
    PotentialOptions opt;
    opt.rel_tol = 1e-13;
    opt.max_panels = 2;
    try {
        riesz_potential(g, p, 1.0, opt);
        FAIL("expected numeric_accuracy_error");
    } catch (const numeric_accuracy_error& e) {
        // the carried estimate is still in the right ballpark
        CHECK(e.estimate() == doctest::Approx(extremal_potential(p, 1.0)).epsilon(0.1));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("n = 1 reductions") {
    const Params p1(1, 0.5);
    const auto chi = indicator_profile();
    CHECK(l1_norm(chi, p1) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(ball_mass(chi, p1, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
    // potential of the interval indicator has the elementary antiderivative
    // (1/ s) [(1+rho)^s - (rho-1)^s] off the support
    const double rho = 2.5;
    const double oracle = riesz_constant(p1) / p1.s *
                          (std::pow(1.0 + rho, p1.s) - std::pow(rho - 1.0, p1.s));
    CHECK(riesz_potential(chi, p1, rho) == doctest::Approx(oracle).epsilon(1e-7));
}

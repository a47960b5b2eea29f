#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riesz/constants.hpp"

#include <cmath>

using namespace riesz;

namespace {

// direct-domain oracle through libm, kept independent of the log-domain path
double direct_riesz_constant(int n, double s) {
    return std::pow(2.0, -s) * std::pow(pi, -0.5 * n) * std::tgamma(0.5 * (n - s)) /
           std::tgamma(0.5 * s);
}

} // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(Params(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(Params(3, 0.0), std::domain_error);
    CHECK_THROWS_AS(Params(3, 3.0), std::domain_error);
    CHECK_THROWS_AS(Params(3, -1.0), std::domain_error);
    CHECK_NOTHROW(Params(1, 0.5));
    // the two-sided window is stricter
    CHECK(Params(3, 0.2).in_lower_bound_window());
    CHECK_FALSE(Params(3, 0.3).in_lower_bound_window());
    CHECK_THROWS_AS(Params(3, 0.3).require_lower_bound_window(), std::domain_error);
    CHECK_FALSE(Params(2, 0.1).in_lower_bound_window());

    CHECK_THROWS_AS(CompositionParams(Params(5, 1.0), 4.5), std::domain_error);
    CHECK_THROWS_AS(CompositionParams(Params(5, 1.0), 0.0), std::domain_error);
    CHECK_NOTHROW(CompositionParams(Params(5, 1.0), 2.0));
}

TEST_CASE("riesz constant closed values") {
    CHECK(riesz_constant(Params(3, 1.0)) ==
          doctest::Approx(1.0 / (2.0 * pi * pi)).epsilon(1e-14));
    CHECK(riesz_constant(Params(2, 1.0)) == doctest::Approx(0.5 / pi).epsilon(1e-14));
    // s -> 0 behavior: gamma_s / s -> Gamma(n/2) pi^{-n/2} / 2 = 1/(4 pi) at n = 3
    const double s = 1e-4;
    CHECK(riesz_constant(Params(3, s)) / s ==
          doctest::Approx(0.25 / pi).epsilon(1e-3));
}

TEST_CASE("riesz constant equals the direct-domain oracle") {
    for (auto [n, s] : {std::pair<int, double>{2, 0.5}, {3, 1.0}, {5, 2.5}, {9, 4.0}})
        CHECK(riesz_constant(Params(n, s)) ==
              doctest::Approx(direct_riesz_constant(n, s)).epsilon(1e-12));
}

TEST_CASE("ball volumes and sphere areas") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(unit_ball_volume(2) == doctest::Approx(pi).epsilon(1e-14));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-14));
    CHECK(sphere_area(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sphere_area(2) == doctest::Approx(2.0 * pi).epsilon(1e-14));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * pi).epsilon(1e-14));
    CHECK(sphere_area(5) == doctest::Approx(5.0 * unit_ball_volume(5)).epsilon(1e-14));
}

TEST_CASE("extremal constant closed values") {
    CHECK(extremal_constant(Params(3, 1.0)) == doctest::Approx(4.0 * pi * pi).epsilon(1e-13));
    CHECK(extremal_constant(Params(2, 1.0)) ==
          doctest::Approx(std::pow(2.0, 2.5) * pi).epsilon(1e-13));
}

TEST_CASE("composition constant") {
    const CompositionParams cp(Params(5, 1.0), 2.0);
    CHECK(composition_constant(cp) == doctest::Approx(4.0 * pi * pi).epsilon(1e-13));
    // symmetric in (s, alpha)
    for (auto [n, s, a] : {std::tuple<int, double, double>{5, 1.0, 2.0},
                           {7, 0.7, 3.1},
                           {4, 0.4, 1.9}}) {
        CHECK(composition_constant(CompositionParams(Params(n, s), a)) ==
              doctest::Approx(composition_constant(CompositionParams(Params(n, a), s)))
                  .epsilon(1e-12));
    }
    // pole as alpha -> (n - s)^-
    const double near_pole =
        composition_constant(CompositionParams(Params(5, 1.0), 4.0 - 1e-10));
    CHECK(near_pole > 1e9);
}

TEST_CASE("two-sided bounds and their s -> 0 limits") {
    const Params p31(3, 1.0);
    // frozen from the direct-domain oracle
    CHECK(best_constant_upper(p31) == doctest::Approx(0.3949273883044933).epsilon(1e-12));
    CHECK(best_constant_upper(Params(2, 1.0)) ==
          doctest::Approx(1.0 / std::sqrt(pi)).epsilon(1e-12));
    CHECK(sharp_floor(p31) == doctest::Approx(0.1316424627681644).epsilon(1e-12));

    for (int n : {3, 5, 10}) {
        const Params small(n, 1e-4);
        CHECK(best_constant_upper(small) == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(best_constant_lower(small) == doctest::Approx(0.5 / n).epsilon(1e-3));
    }

    CHECK_THROWS_AS(best_constant_lower(Params(3, 0.3)), std::domain_error);
    CHECK_NOTHROW(best_constant_lower(Params(3, 0.2)));
    // strict order inside the window
    const Params p10(10, 1.0);
    CHECK(best_constant_lower(p10) > 0.0);
    CHECK(best_constant_lower(p10) < best_constant_upper(p10));
}

TEST_CASE("all named constants are positive and finite") {
    for (auto [n, s] : {std::pair<int, double>{1, 0.5}, {2, 1.3}, {3, 0.01}, {10, 2.0},
                        {100, 0.25}, {200, 1.0}}) {
        const Params p(n, s);
        for (double v : {riesz_constant(p), extremal_constant(p), tau_constant(p),
                         best_constant_upper(p), sharp_floor(p)}) {
            CHECK(std::isfinite(v));
            CHECK(v > 0.0);
        }
    }
}

TEST_CASE("tau constant: log-domain path against a direct evaluation") {
    for (auto [n, s] : {std::pair<int, double>{3, 1.0}, {10, 0.3}, {3, 0.01}}) {
        const Params p(n, s);
        const double direct = 2.0 * std::pow(4.0 * pi, -0.5 * s) *
                              std::pow(std::pow(2.0, 0.5 * s) - 1.0, (s - n) / n) *
                              (n / (n - s)) * std::pow(1.0 / s, s / n) /
                              std::tgamma(0.5 * s);
        CHECK(tau_constant(p) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("tau constant stays comparable to the upper bound as s -> 0") {
    // bounded window over five decades of s
    for (double s : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const Params p(3, s);
        const double ratio = tau_constant(p) / best_constant_upper(p);
        CHECK(ratio > 0.05);
        CHECK(ratio < 20.0);
    }
}

TEST_CASE("tau constant majorant") {
    for (auto [n, s] : {std::pair<int, double>{3, 1.0}, {3, 0.05}, {10, 0.9}, {100, 0.4}}) {
        const Params p(n, s);
        CHECK(tau_constant(p) <= tau_constant_majorant(p) * (1.0 + 1e-12));
    }
}

TEST_CASE("s Gamma(s/2) -> 2 as s -> 0") {
    CHECK(1e-4 * gamma_fn(0.5e-4) == doctest::Approx(2.0).epsilon(1e-4));
}

// Acceptance suite: runs every gate criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include "riesz/bounds.hpp"
#include "riesz/extremal.hpp"
#include "riesz/heat.hpp"
#include "riesz/norms.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/radial.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

using namespace riesz;

namespace {

struct Harness {
    int failures = 0;

    void report(int index, const std::string& label, bool ok, const std::string& detail) {
        std::printf("[%s] %02d %s: %s\n", ok ? "PASS" : "FAIL", index, label.c_str(),
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::uint64_t seed_from_env() {
    const char* env = std::getenv("RIESZ_WEAK_SEED");
    return env ? std::strtoull(env, nullptr, 10) : 0;
}

std::vector<double> twenty_radii() {
    std::vector<double> radii{0.0};
    for (int k = 0; k < 19; ++k) radii.push_back(std::pow(10.0, -2.0 + 4.0 * k / 18.0));
    return radii;
}

struct NamedEnvelope {
    std::string name;
    Params params;
    DecreasingEnvelope envelope;
};

} // namespace

int main() {
    Harness h;
    const std::vector<std::pair<int, double>> extremal_set{{2, 0.5}, {3, 1.0}, {3, 0.5}, {5, 1.0}};
    std::vector<NamedEnvelope> produced; // fed into the sandwich criterion

    // 1. closed-form potential of the extremal profile
    {
        double worst = 0.0;
        std::string at;
        for (auto [n, s] : extremal_set) {
            const Params p(n, s);
            const auto g = extremal_profile(p);
            for (double rho : twenty_radii()) {
                const double rel = std::fabs(riesz_potential(g, p, rho) /
                                                 extremal_potential(p, rho) -
                                             1.0);
                if (rel > worst) {
                    worst = rel;
                    at = "(n=" + std::to_string(n) + ",s=" + fmt(s) + ",rho=" + fmt(rho) + ")";
                }
            }
        }
        h.report(1, "extremal potential matches its closed form at 20 radii", worst <= 1e-6,
                 "max rel err " + fmt(worst) + " at " + at + ", tol 1e-6");
    }

    // 2. mass of the extremal profile
    {
        double worst = 0.0;
        for (auto [n, s] : extremal_set) {
            const Params p(n, s);
            worst = std::max(worst, std::fabs(l1_norm(extremal_profile(p), p) /
                                                  extremal_constant(p) -
                                              1.0));
        }
        h.report(2, "extremal mass equals the sphere-side constant", worst <= 1e-8,
                 "max rel err " + fmt(worst) + ", tol 1e-8");
    }

    // 3. sharpness ratio via sampled envelopes; the (3,1) value is frozen
    {
        double worst = 0.0;
        bool frozen_ok = true;
        double frozen_measured = 0.0;
        for (auto [n, s] : extremal_set) {
            const Params p(n, s);
            const auto g = extremal_profile(p);
            EnvelopeOptions opt;
            const auto env = potential_envelope(g, p, opt);
            const double ratio = weak_norm(env, p).value / l1_norm(g, p);
            worst = std::max(worst, std::fabs(ratio / sharp_floor(p) - 1.0));
            produced.push_back({"I_s g (" + std::to_string(n) + "," + fmt(s) + ")", p, env});
            if (n == 3 && s == 1.0) {
                frozen_measured = ratio;
                // literal confirmed through the constants module before freezing
                frozen_ok = std::fabs(sharp_floor(p) - 0.1316424627681644) <= 1e-12 &&
                            std::fabs(ratio - 0.1316424627681644) <= 1e-4 * 0.1316424627681644;
            }
        }
        h.report(3, "sharp reverse weak ratio gamma_s v_n^((n-s)/n)",
                 worst <= 1e-4 && frozen_ok,
                 "max rel err " + fmt(worst) + ", frozen (3,1) value " + fmt(frozen_measured) +
                     " vs 0.13164246..., tol 1e-4");
    }

    // 4. grand-norm identities
    {
        double worst = 0.0;
        for (auto [n, s] : {std::pair<int, double>{3, 1.0}, {2, 0.5}}) {
            const Params p(n, s);
            const double r_mid = 0.5 * (1.0 + p.n / (p.n - p.s));
            const auto g = extremal_profile(p);
            const auto ball = indicator_profile();
            const double l1_g = l1_norm(g, p);
            const double l1_b = l1_norm(ball, p);
            EnvelopeOptions opt;
            const auto env_is = extremal_potential_envelope(p, opt);
            const auto env_mg = maximal_envelope(g, p, opt);
            const auto env_mb = maximal_envelope(ball, p, opt);
            for (double r : {1.0, r_mid}) {
                const double nu = p.n - (p.n - p.s) * r;
                const double ident = std::pow(p.n / nu, 1.0 / r);
                worst = std::max(worst, std::fabs(grand_norm(env_is, p, r).value / l1_g /
                                                      (sharp_floor(p) * ident) -
                                                  1.0));
                worst = std::max(worst, std::fabs(grand_norm(env_mg, p, r).value / l1_g / ident -
                                                  1.0));
                worst = std::max(worst, std::fabs(grand_norm(env_mb, p, r).value / l1_b / ident -
                                                  1.0));
            }
            produced.push_back({"I_s g closed (" + std::to_string(n) + "," + fmt(s) + ")", p,
                                env_is});
            produced.push_back({"M_s g (" + std::to_string(n) + "," + fmt(s) + ")", p, env_mg});
            produced.push_back({"M_s ball (" + std::to_string(n) + "," + fmt(s) + ")", p,
                                env_mb});
        }
        h.report(4, "grand-norm identities for I_s and M_s", worst <= 0.01,
                 "max rel err " + fmt(worst) + ", tol 1%");
    }

    // 5. weak-norm equality for the fractional maximal function
    {
        double worst = 0.0;
        const Params p(3, 1.0);
        for (const auto& f : {extremal_profile(p), indicator_profile()}) {
            EnvelopeOptions opt;
            const auto env = maximal_envelope(f, p, opt);
            worst = std::max(worst,
                             std::fabs(weak_norm(env, p).value / l1_norm(f, p) - 1.0));
        }
        h.report(5, "weak norm of M_s f equals ||f||_1 for radial decreasing f", worst <= 0.01,
                 "max rel err " + fmt(worst) + ", tol 1%");
    }

    // 6. norm-equivalence sandwich on every envelope this suite produced
    {
        bool ok = true;
        std::string detail = "checked " + std::to_string(produced.size()) + " envelopes";
        for (const auto& item : produced) {
            const double r_mid = 0.5 * (1.0 + item.params.n / (item.params.n - item.params.s));
            for (double r : {1.0, r_mid}) {
                try {
                    equivalence_check(item.envelope, item.params, r, 1e-6);
                } catch (const std::exception& e) {
                    ok = false;
                    detail = item.name + " violated the sandwich: " + e.what();
                }
            }
        }
        h.report(6, "weak <= grand <= sandwich bound with 1e-6 slack", ok, detail);
    }

    // 7. power-convolution identity
    {
        const Params p51(5, 1.0);
        const double closed = composition_constant(CompositionParams(p51, 2.0));
        const bool exact_ok = std::fabs(closed - 4.0 * pi * pi) <= 1e-10;
        double worst = 0.0;
        for (double s : {1.0, 0.5}) {
            const Params p(5, s);
            const double expected =
                riesz_constant(p) * composition_constant(CompositionParams(p, 2.0));
            const double got = riesz_potential(power_profile(3.0), p, 1.0);
            worst = std::max(worst, std::fabs(got / expected - 1.0));
            // second radius through the homogeneity of the identity
            const double got2 = riesz_potential(power_profile(3.0), p, 2.0);
            const double expected2 = expected * std::pow(2.0, -(5.0 - s - 2.0));
            worst = std::max(worst, std::fabs(got2 / expected2 - 1.0));
        }
        h.report(7, "power convolution reproduces C_{n,alpha,s} |x|^{-(n-s-alpha)}",
                 worst <= 1e-4 && exact_ok,
                 "max rel err " + fmt(worst) + ", C_{5,2,1} = 4 pi^2 exact, tol 1e-4");
    }

    // 8. the two-sided bound chain
    {
        bool ok = true;
        std::string detail;
        for (auto [n, s] : {std::pair<int, double>{5, 0.5}, {9, 1.0}, {3, 0.1}}) {
            const Params p(n, s);
            const auto k = lower_bound_constants(p);
            const auto f = lower_bound_profile(p);
            const double l1 = l1_norm(f, p);
            EnvelopeOptions opt;
            const auto env = potential_envelope(f, p, opt);
            const auto ev = lower_bound_level_set(p, env, l1);
            const double opt_ratio = weak_norm(env, p).value / l1;
            const double lower = best_constant_lower(p);
            const double upper = best_constant_upper(p);
            const bool row_ok = k.lambda0 > 0.0 &&
                                ev.measured_measure >= ev.floor_measure * (1.0 - 1e-3) &&
                                std::fabs(ev.analytic_ratio / ev.printed_lower_bound - 1.0) <=
                                    1e-10 &&
                                lower <= opt_ratio * (1.0 + 1e-9) &&
                                opt_ratio <= upper * (1.0 + 1e-9);
            if (!row_ok) {
                ok = false;
                detail = "(n=" + std::to_string(n) + ",s=" + fmt(s) + ") measure " +
                         fmt(ev.measured_measure) + " floor " + fmt(ev.floor_measure) +
                         " ratio " + fmt(opt_ratio) + " bracket [" + fmt(lower) + "," +
                         fmt(upper) + "]";
            }
        }
        if (ok) detail = "lambda0 > 0, level-set floor, 1e-10 algebra, bracketed ratio at 3 points";
        h.report(8, "two-sided estimate chain", ok, detail);
    }

    // 9. small-s limits of the printed bounds
    {
        double worst = 0.0;
        for (int n : {3, 5, 10}) {
            const Params p(n, 1e-4);
            worst = std::max(worst, std::fabs(best_constant_upper(p) - 1.0));
            worst = std::max(worst, std::fabs(best_constant_lower(p) / (0.5 / n) - 1.0));
        }
        h.report(9, "bounds approach 1 and 1/(2n) as s -> 0", worst <= 1e-3,
                 "max deviation " + fmt(worst) + ", tol 1e-3");
    }

    // 10. heat-semigroup route
    {
        bool ok = true;
        std::string why;
        // subordination on three profile families
        {
            const Params p31(3, 1.0);
            double worst = subordination_residual(extremal_profile(p31), p31, 0.0);
            const Params p305(3, 0.5);
            for (double rho : {0.0, 1.0, 3.0})
                worst = std::max(worst, subordination_residual(indicator_profile(), p305, rho));
            if (worst > 1e-5) {
                ok = false;
                why = "subordination residual " + fmt(worst);
            }
            const Params p5(5, 1.0);
            const double expected =
                riesz_constant(p5) * composition_constant(CompositionParams(p5, 2.0));
            const double power_res =
                std::fabs(subordination_potential(power_profile(3.0), p5, 1.0, 1e-6) / expected -
                          1.0);
            if (power_res > 1e-4) {
                ok = false;
                why = "power-family subordination residual " + fmt(power_res);
            }
        }
        // split reconstruction and the pointwise bound
        {
            const Params p(3, 1.0);
            const auto g = extremal_profile(p);
            const double gamma_half = gamma_fn(0.5 * p.s);
            double worst_recon = 0.0;
            for (double split : {0.1, 1.0, 10.0}) {
                const auto hs = split_bound(g, p, 0.0, split);
                worst_recon = std::max(
                    worst_recon,
                    std::fabs((hs.j1 + hs.j2) / gamma_half / extremal_potential(p, 0.0) - 1.0));
            }
            if (worst_recon > 1e-8) {
                ok = false;
                why = "split reconstruction " + fmt(worst_recon);
            }
            const double tau_min = tau_minimized_numeric(p);
            const double theta = (p.n - p.s) / p.n;
            for (const auto& f : {g, indicator_profile()}) {
                const double l1 = l1_norm(f, p);
                for (double rho : {0.0, 1.0, 5.0}) {
                    const double bound = tau_min *
                                         std::pow(averaged_heat_maximal(f, p, rho), theta) *
                                         std::pow(l1, p.s / p.n);
                    if (riesz_potential(f, p, rho) > bound * (1.0 + 1e-6)) {
                        ok = false;
                        why = "pointwise tau bound violated at rho=" + fmt(rho);
                    }
                }
            }
        }
        // tau ratio tables
        {
            const std::vector<int> ns{3, 10, 100};
            std::vector<double> ss;
            for (double s = 1e-4; s < 0.5; s *= 1.9) ss.push_back(s);
            ss.push_back(0.5);
            const auto rows = asymptotic_comparison(ns, ss);
            for (const auto& row : rows) {
                const bool cell_ok = std::isfinite(row.ratio) &&
                                     std::isfinite(row.ratio_min_printed) && row.ratio >= 0.05 &&
                                     row.ratio <= 20.0 && row.ratio_min_printed >= 0.05 &&
                                     row.ratio_min_printed <= 20.0;
                if (!cell_ok) {
                    ok = false;
                    why = "tau table cell (n=" + std::to_string(row.n) + ",s=" + fmt(row.s) +
                          ") ratio " + fmt(row.ratio);
                }
            }
        }
        h.report(10, "heat route: subordination, split, tau tables", ok,
                 ok ? "residuals <= 1e-5, reconstruction <= 1e-8, ratios in [0.05, 20]" : why);
    }

    // 11. limiting small-lambda behavior
    {
        const Params p(3, 1.0);
        double worst = 0.0;
        for (const auto& f : {extremal_profile(p), indicator_profile()}) {
            EnvelopeOptions opt;
            const auto env = potential_envelope(f, p, opt);
            const double limit = small_lambda_limit(env, p);
            worst = std::max(worst,
                             std::fabs(limit / (sharp_floor(p) * l1_norm(f, p)) - 1.0));
        }
        h.report(11, "Richardson-extrapolated small-lambda limit", worst <= 1e-3,
                 "max rel err " + fmt(worst) + ", tol 1e-3");
    }

    // 12. randomized property suite
    {
        std::mt19937_64 gen(seed_from_env());
        bool ok = true;
        std::string why;
        const Params p(3, 1.0);

        // envelope homogeneity (100 scales)
        {
            std::uniform_real_distribution<double> uc(0.1, 10.0);
            EnvelopeOptions opt;
            opt.rho_min = 1e-2;
            opt.rho_max = 1e3;
            const auto base = envelope_from_function(
                [](double r) { return std::pow(r, -2.0); }, opt,
                DecreasingEnvelope::Tail{1.0, 2.0});
            const double w0 = weak_norm(base, p).value;
            const double g0 = grand_norm(base, p, 1.0).value;
            for (int trial = 0; trial < 100 && ok; ++trial) {
                const double c = uc(gen);
                const auto scaled = envelope_from_function(
                    [c](double r) { return c * std::pow(r, -2.0); }, opt,
                    DecreasingEnvelope::Tail{c, 2.0});
                if (std::fabs(weak_norm(scaled, p).value / (c * w0) - 1.0) > 1e-10 ||
                    std::fabs(grand_norm(scaled, p, 1.0).value / (c * g0) - 1.0) > 1e-10) {
                    ok = false;
                    why = "homogeneity failed at c=" + fmt(c);
                }
            }
        }
        // dilation covariance of the potential (100 cases)
        if (ok) {
            std::uniform_real_distribution<double> ua(std::log(0.2), std::log(5.0));
            std::uniform_real_distribution<double> ur(std::log(0.1), std::log(10.0));
            const auto g = extremal_profile(p);
            for (int trial = 0; trial < 100 && ok; ++trial) {
                const double a = std::exp(ua(gen));
                const double rho = std::exp(ur(gen));
                const double lhs = riesz_potential(g.scaled_argument(a), p, rho);
                const double rhs = std::pow(a, -p.s) * riesz_potential(g, p, a * rho);
                if (std::fabs(lhs / rhs - 1.0) > 1e-5) {
                    ok = false;
                    why = "dilation covariance failed at a=" + fmt(a) + ", rho=" + fmt(rho);
                }
            }
        }
        // ball-mass monotonicity in r (100 cases)
        if (ok) {
            std::uniform_real_distribution<double> uc(0.0, 3.0);
            std::uniform_real_distribution<double> ur(0.05, 4.0);
            const auto g = extremal_profile(p);
            for (int trial = 0; trial < 100 && ok; ++trial) {
                const double c = uc(gen);
                double r1 = ur(gen), r2 = ur(gen);
                if (r1 > r2) std::swap(r1, r2);
                if (ball_mass(g, p, c, r1) > ball_mass(g, p, c, r2) * (1.0 + 1e-9)) {
                    ok = false;
                    why = "ball mass not monotone at c=" + fmt(c);
                }
            }
        }
        // kernel symmetry (100 cases)
        if (ok) {
            std::uniform_real_distribution<double> u(0.05, 5.0);
            for (int trial = 0; trial < 100 && ok; ++trial) {
                const double a = u(gen), b = u(gen);
                for (const Params& pk : {Params(2, 0.7), Params(3, 1.2), Params(5, 0.5)}) {
                    if (std::fabs(angular_kernel(pk, a, b) / angular_kernel(pk, b, a) - 1.0) >
                        1e-9) {
                        ok = false;
                        why = "kernel symmetry failed at (" + fmt(a) + "," + fmt(b) + ")";
                    }
                }
            }
        }
        // stereographic round trips (100 cases)
        if (ok) {
            std::uniform_real_distribution<double> u(-4.0, 4.0);
            for (int trial = 0; trial < 100 && ok; ++trial) {
                std::vector<double> x(3);
                for (auto& v : x) v = u(gen);
                const auto xi = inverse_stereographic(x);
                const auto back = stereographic(xi);
                for (int i = 0; i < 3; ++i)
                    if (std::fabs(back[i] - x[i]) > 1e-12) {
                        ok = false;
                        why = "round trip drifted";
                    }
                if (std::fabs(plane_jacobian(x) * sphere_jacobian(xi) - 1.0) > 1e-12) {
                    ok = false;
                    why = "Jacobian reciprocity failed";
                }
            }
        }
        h.report(12, "randomized property suite (seeded)", ok,
                 ok ? "homogeneity, dilation, monotonicity, symmetry, round trips x100" : why);
    }

    if (h.failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterio%s failed\n", h.failures, h.failures == 1 ? "n" : "ns");
    return 1;
}

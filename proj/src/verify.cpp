#include "riesz/verify.hpp"

#include "riesz/bounds.hpp"
#include "riesz/errors.hpp"
#include "riesz/extremal.hpp"
#include "riesz/heat.hpp"
#include "riesz/norms.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/radial.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

namespace riesz::verify {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::string tag(const std::string& suite, const Params& p) {
    std::ostringstream o;
    o << suite << "(n=" << p.n << ",s=" << p.s << ").";
    return o.str();
}

double rel_err(double measured, double reference) {
    return std::fabs(measured / reference - 1.0);
}

EnvelopeOptions envelope_opts(const Options& opt) {
    EnvelopeOptions e;
    if (opt.fast) {
        e.rho_min = 1e-3;
        e.rho_max = 1e4;
        e.points_per_decade = 16;
    }
    e.mode = opt.mode;
    return e;
}

std::vector<double> sample_radii(const Options& opt, int count, double lo = 1e-2,
                                 double hi = 1e2) {
    std::mt19937_64 gen(opt.seed);
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    std::vector<double> out(count);
    for (auto& x : out) x = std::exp(u(gen));
    return out;
}

// stamp runtime on the last appended records
struct Stopwatch {
    clock_type::time_point t0 = clock_type::now();
    void stamp(std::vector<CheckRecord>& recs, std::size_t from) {
        const double ms = ms_since(t0);
        for (std::size_t i = from; i < recs.size(); ++i)
            if (recs[i].runtime_ms == 0.0) recs[i].runtime_ms = ms / (recs.size() - from);
        t0 = clock_type::now();
    }
};

} // namespace

std::vector<std::string> suite_names() {
    return {"thm11", "thm12", "cor1", "thm13", "appendix"};
}

bool is_suite(const std::string& name) {
    const auto names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

// ---------------------------------------------------------------------------
// thm11: grand-norm identities
// ---------------------------------------------------------------------------

std::vector<CheckRecord> identity_checks(const Params& p, const Options& opt,
                                         const std::string& prefix) {
    std::vector<CheckRecord> recs;
    Stopwatch watch;
    const double n = p.n, s = p.s;
    const double floor_c = sharp_floor(p);
    const auto eopt = envelope_opts(opt);
    const double r_mid = 0.5 * (1.0 + n / (n - s));

    const auto g = extremal_profile(p);
    const auto ball = indicator_profile();
    const double l1_g = l1_norm(g, p);
    const double l1_ball = l1_norm(ball, p);
    const auto env_is_g = extremal_potential_envelope(p, eopt);

    auto identity_const = [&](double r) {
        const double nu = n - (n - s) * r;
        return std::pow(n / nu, 1.0 / r);
    };

    for (double r : {1.0, r_mid}) {
        const auto gn = grand_norm(env_is_g, p, r);
        std::ostringstream id;
        id << prefix << "grand-riesz-identity-r" << r;
        recs.push_back(check_close(
            id.str(),
            "grand_norm(I_s g, r)/||g||_1 = gamma_s v_n^((n-s)/n) (n/(n-(n-s)r))^(1/r)",
            gn.value / l1_g, floor_c * identity_const(r), 0.01 * opt.tol_scale));
        recs.back().note = describe(gn);
    }
    watch.stamp(recs, 0);

    std::optional<DecreasingEnvelope> env_ms_g, env_ms_ball;
    std::string ms_g_note;
    try {
        env_ms_g = maximal_envelope(g, p, eopt);
    } catch (const numeric_accuracy_error& e) {
        ms_g_note = e.what();
    }
    env_ms_ball = maximal_envelope(ball, p, eopt);
    std::size_t mark = recs.size();
    for (double r : {1.0, r_mid}) {
        std::ostringstream id_g, id_b;
        id_g << prefix << "grand-maximal-identity-g-r" << r;
        id_b << prefix << "grand-maximal-identity-ball-r" << r;
        if (env_ms_g) {
            const auto gn_g = grand_norm(*env_ms_g, p, r);
            recs.push_back(check_close(
                id_g.str(), "grand_norm(M_s f, r)/||f||_1 = (n/(n-(n-s)r))^(1/r), f extremal",
                gn_g.value / l1_g, identity_const(r), 0.01 * opt.tol_scale));
        } else {
            recs.push_back(flagged(id_g.str(),
                                   "grand_norm(M_s f, r)/||f||_1 identity, f extremal",
                                   "far-field regime unreachable at desk scale: " + ms_g_note));
        }
        const auto gn_b = grand_norm(*env_ms_ball, p, r);
        recs.push_back(check_close(
            id_b.str(), "grand_norm(M_s f, r)/||f||_1 = (n/(n-(n-s)r))^(1/r), f ball indicator",
            gn_b.value / l1_ball, identity_const(r), 0.01 * opt.tol_scale));
    }
    watch.stamp(recs, mark);

    // reverse direction only, below r = 1
    mark = recs.size();
    {
        const double r_small = 0.5;
        const auto gn = grand_norm(env_is_g, p, r_small);
        const double rhs = floor_c * identity_const(r_small) * l1_g;
        std::ostringstream note;
        note << "measured/lower = " << gn.value / rhs << " (equality not asserted below r = 1)";
        recs.push_back(check_le(prefix + "grand-riesz-reverse-small-r",
                                "grand_norm(I_s g, r=1/2) >= gamma_s v_n^((n-s)/n) "
                                "(n/(n-(n-s)r))^(1/r) ||g||_1",
                                rhs * (1.0 - 0.01 * opt.tol_scale), gn.value, 0.0));
        recs.back().note = note.str();
        if (env_ms_g) {
            const auto gnm = grand_norm(*env_ms_g, p, r_small);
            recs.push_back(check_le(prefix + "grand-maximal-reverse-small-r",
                                    "grand_norm(M_s g, r=1/2) >= (n/(n-(n-s)r))^(1/r) ||g||_1",
                                    identity_const(r_small) * l1_g *
                                        (1.0 - 0.01 * opt.tol_scale),
                                    gnm.value, 0.0));
        }
    }
    watch.stamp(recs, mark);

    // norm-equivalence sandwich on every envelope produced here
    mark = recs.size();
    int idx = 0;
    std::vector<const DecreasingEnvelope*> sandwich_envs{&env_is_g};
    if (env_ms_g) sandwich_envs.push_back(&*env_ms_g);
    sandwich_envs.push_back(&*env_ms_ball);
    for (const auto* env : sandwich_envs) {
        for (double r : {1.0, r_mid}) {
            std::ostringstream id;
            id << prefix << "sandwich-" << idx << "-r" << r;
            try {
                const auto t = equivalence_check(*env, p, r, 1e-6 * opt.tol_scale);
                auto rec = check_le(id.str(),
                                    "weak <= grand <= (n/(n-r(n-s)))^(1/r) weak",
                                    t.grand, t.upper, 1e-6 * opt.tol_scale);
                rec.note = "weak = " + std::to_string(t.weak);
                recs.push_back(std::move(rec));
            } catch (const invariant_violation& e) {
                recs.push_back(check_true(id.str(), "weak <= grand <= sandwich bound", false,
                                          0.0, e.what()));
            }
        }
        ++idx;
    }
    watch.stamp(recs, mark);

    // dilated-ball witness approaches the identity value from below
    mark = recs.size();
    {
        // the finite-l correction scales like l^{-nu}
        const double nu = n - (n - s) * 1.0;
        const double l_big = std::clamp(std::pow(4e5, 1.0 / nu), 1e6, 1e12);
        const WitnessConfig cfg{0.01, l_big, 1.0};
        const auto wb = witness_lower_bound(g, cfg, p);
        const double expected_gap = std::pow(l_big, -nu);
        if (expected_gap <= 2e-5) {
            recs.push_back(check_close(prefix + "witness-limit",
                                       "finite-l witness approaches gamma_s v_n^((n-s)/n) "
                                       "(1-eps) (n/(n-(n-s)r))^(1/r) ||f||_1 as l grows",
                                       wb.value, wb.limit_value, 1e-4 * opt.tol_scale));
        } else {
            // the limit itself sits beyond reachable l; verify the l^{-nu}
            // approach rate instead
            const WitnessConfig cfg16{0.01, 16.0 * l_big, 1.0};
            const auto wb16 = witness_lower_bound(g, cfg16, p);
            const double gap1 = 1.0 - wb.value / wb.limit_value;
            const double gap2 = 1.0 - wb16.value / wb16.limit_value;
            const double rate = std::pow(16.0, -nu);
            const bool ok = gap1 > 0.0 && gap2 > 0.0 && gap2 / gap1 >= 0.3 * rate &&
                            gap2 / gap1 <= 3.0 * rate;
            auto rec = check_true(prefix + "witness-limit",
                                  "finite-l witness approaches its limit at the l^{-nu} rate",
                                  ok, gap2 / gap1);
            std::ostringstream note;
            note << "limit unreachable at desk scale (expected gap " << expected_gap
                 << "); measured gap ratio " << gap2 / gap1 << " vs 16^-nu = " << rate;
            rec.note = note.str();
            recs.push_back(std::move(rec));
        }
        recs.push_back(check_le(prefix + "witness-below-limit",
                                "finite-l witness stays below its limit", wb.value,
                                wb.limit_value, 1e-12));
        const auto gn = grand_norm(env_is_g, p, cfg.r);
        recs.push_back(check_le(prefix + "witness-below-grand",
                                "witness lower bound <= grand_norm(I_s g)", wb.value,
                                gn.value * l1_g / l1_g, 1e-6 * opt.tol_scale));
    }
    watch.stamp(recs, mark);
    return recs;
}

// ---------------------------------------------------------------------------
// thm12: sharpness of the reverse weak bound
// ---------------------------------------------------------------------------

std::vector<CheckRecord> sharpness_checks(const Params& p, const Options& opt,
                                          const std::string& prefix) {
    std::vector<CheckRecord> recs;
    Stopwatch watch;
    const double floor_c = sharp_floor(p);
    const auto eopt = envelope_opts(opt);

    const auto g = extremal_profile(p);
    const double c_ns = extremal_constant(p);
    const double l1_g = l1_norm(g, p);
    recs.push_back(check_close(prefix + "extremal-l1",
                               "||g||_1 = pi^(n/2) 2^((s+n)/2) Gamma(s/2)/Gamma((s+n)/2)",
                               l1_g, c_ns, 1e-8 * opt.tol_scale));
    watch.stamp(recs, 0);

    // closed-form potential against direct singular quadrature at 20 radii
    std::size_t mark = recs.size();
    {
        std::vector<double> radii{0.0};
        for (int k = 0; k < 19; ++k) radii.push_back(std::pow(10.0, -2.0 + 4.0 * k / 18.0));
        double worst = 0.0;
        for (double rho : radii)
            worst = std::max(worst,
                             rel_err(riesz_potential(g, p, rho), extremal_potential(p, rho)));
        recs.push_back(check_le(prefix + "closed-form-potential",
                                "I_s g(rho) = gamma_s c_{n,s} (1+rho^2)^(-(n-s)/2), 20 radii",
                                worst, 1e-6 * opt.tol_scale, 0.0));
    }
    watch.stamp(recs, mark);

    // level-set formula with cancellation-safe evaluation near the top
    mark = recs.size();
    {
        const auto env = extremal_potential_envelope(p, eopt);
        const double top = riesz_constant(p) * c_ns;
        double worst = 0.0;
        for (double frac : {1.0 - 1e-6, 1.0 - 1e-4, 1.0 - 1e-2, 0.9, 0.5, 0.1, 1e-3, 1e-6, 1e-8}) {
            const double lam = top * frac;
            worst = std::max(worst, rel_err(superlevel_measure(env, p, lam),
                                            extremal_superlevel_measure(p, lam)));
        }
        recs.push_back(check_le(prefix + "level-set-formula",
                                "|{I_s g > lambda}| = v_n ((gamma_s c/lambda)^(2/(n-s)) - 1)^(n/2)",
                                worst, 1e-8 * opt.tol_scale, 0.0));

        const auto wn = weak_norm(env, p);
        recs.push_back(check_close(prefix + "ratio-closed-form",
                                   "weak_norm(I_s g)/||g||_1 = gamma_s v_n^((n-s)/n)",
                                   wn.value / c_ns, floor_c, 1e-9 * opt.tol_scale));
        recs.back().note = describe(wn);
        recs.push_back(check_true(prefix + "ratio-attained-in-limit",
                                  "the sharp ratio is approached as lambda -> 0",
                                  wn.attained_in_limit, wn.value));
    }
    watch.stamp(recs, mark);

    // full quadrature route
    mark = recs.size();
    {
        const auto env_quad = potential_envelope(g, p, eopt);
        const auto wn_quad = weak_norm(env_quad, p);
        const double ratio = wn_quad.value / l1_g;
        recs.push_back(check_close(prefix + "ratio-quadrature",
                                   "weak_norm(I_s g)/||g||_1 = gamma_s v_n^((n-s)/n), "
                                   "sampled envelope",
                                   ratio, floor_c, 1e-4 * opt.tol_scale));
        recs.back().note = describe(wn_quad);
        const double limit = small_lambda_limit(env_quad, p);
        recs.push_back(check_close(prefix + "small-lambda-extremal",
                                   "lim_{lambda->0} lambda |{I_s g > lambda}|^((n-s)/n) = "
                                   "gamma_s v_n^((n-s)/n) ||g||_1",
                                   limit, floor_c * l1_g, 1e-3 * opt.tol_scale));
    }
    watch.stamp(recs, mark);

    // scaled family member leaves the ratio unchanged
    mark = recs.size();
    {
        const auto fam = extremal_family_profile(p, 3.0, 0.5);
        const auto env = potential_envelope(fam, p, eopt);
        const double ratio = weak_norm(env, p).value / l1_norm(fam, p);
        recs.push_back(check_close(prefix + "family-invariance",
                                   "dilation of the extremal family leaves "
                                   "weak_norm(I_s f)/||f||_1 unchanged",
                                   ratio, floor_c, 1e-4 * opt.tol_scale));
    }
    watch.stamp(recs, mark);

    // non-extremal positive profiles sit above the floor
    mark = recs.size();
    {
        struct Probe {
            const char* name;
            RadialProfile profile;
        };
        const double k = 0.5 * (p.n + 2.0);
        std::vector<Probe> probes;
        probes.push_back({"ball", indicator_profile()});
        probes.push_back({"gauss", gaussian_profile(1.0)});
        probes.push_back({"lorentz", RadialProfile::from_function(
                                         [k](double rho) { return std::pow(1.0 + rho * rho, -k); },
                                         [&] {
                                             RadialProfile::Traits t;
                                             t.monotone_decreasing = true;
                                             t.tail = TailModel{1.0, 2.0 * k};
                                             t.far_field_start = 32.0;
                                             t.sup_bound = 1.0;
                                             return t;
                                         }())});
        for (auto& probe : probes) {
            const auto env = potential_envelope(probe.profile, p, eopt);
            const double ratio = weak_norm(env, p).value / l1_norm(probe.profile, p);
            recs.push_back(check_le(prefix + std::string("floor-") + probe.name,
                                    "weak_norm(I_s f)/||f||_1 >= gamma_s v_n^((n-s)/n)",
                                    floor_c * (1.0 - 1e-3 * opt.tol_scale), ratio, 0.0));
            if (std::string(probe.name) == "ball") {
                const double limit = small_lambda_limit(env, p);
                recs.push_back(check_close(prefix + "small-lambda-ball",
                                           "lim_{lambda->0} lambda |{I_s f > "
                                           "lambda}|^((n-s)/n) = gamma_s v_n^((n-s)/n) ||f||_1",
                                           limit, floor_c * l1_norm(probe.profile, p),
                                           1e-3 * opt.tol_scale));
            }
        }
    }
    watch.stamp(recs, mark);

    // the maximal function of the extremal profile attains its equality
    mark = recs.size();
    try {
        const auto env_ms = maximal_envelope(g, p, eopt);
        recs.push_back(check_close(prefix + "maximal-extremal-equality",
                                   "weak_norm(M_s g) = ||g||_1",
                                   weak_norm(env_ms, p).value / l1_g, 1.0,
                                   0.01 * opt.tol_scale));
    } catch (const numeric_accuracy_error& e) {
        recs.push_back(flagged(prefix + "maximal-extremal-equality",
                               "weak_norm(M_s g) = ||g||_1",
                               std::string("far-field regime unreachable at desk scale: ") +
                                   e.what()));
    }
    watch.stamp(recs, mark);
    return recs;
}

// ---------------------------------------------------------------------------
// stereographic machinery
// ---------------------------------------------------------------------------

std::vector<CheckRecord> projection_checks(const Params& p, const Options& opt,
                                           const std::string& prefix) {
    std::vector<CheckRecord> recs;
    Stopwatch watch;
    const int n = p.n;
    std::mt19937_64 gen(opt.seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);

    double worst_rt = 0.0, worst_jac = 0.0, worst_dist = 0.0;
    std::vector<double> x(n), y(n);
    for (int trial = 0; trial < 100; ++trial) {
        for (auto& v : x) v = u(gen);
        for (auto& v : y) v = u(gen);
        const auto xi = inverse_stereographic(x);
        const auto back = stereographic(xi);
        for (int i = 0; i < n; ++i)
            worst_rt = std::max(worst_rt, std::fabs(back[i] - x[i]));
        worst_jac = std::max(worst_jac,
                             std::fabs(plane_jacobian(x) * sphere_jacobian(xi) - 1.0));
        worst_dist = std::max(worst_dist, distance_identity_residual(x, y));
    }
    recs.push_back(check_le(prefix + "projection-roundtrip",
                            "stereographic(inverse_stereographic(x)) = x", worst_rt,
                            1e-12 * opt.tol_scale, 0.0));
    recs.push_back(check_le(prefix + "jacobian-reciprocity",
                            "J_plane(x) J_sphere(S(x)) = 1", worst_jac, 1e-12 * opt.tol_scale,
                            0.0));
    recs.push_back(check_le(prefix + "distance-identity",
                            "|S^-1 xi - S^-1 eta|^2 = J(xi)^(1/n) |xi-eta|^2 J(eta)^(1/n)",
                            worst_dist, 1e-10 * opt.tol_scale, 0.0));
    watch.stamp(recs, 0);

    std::size_t mark = recs.size();
    {
        // change of variables: integral of the plane Jacobian is |S^n|
        quad::Options qopt;
        qopt.rel_tol = 1e-11;
        std::vector<double> seeds;
        for (double t = 1.0; t < 1e8; t *= 4.0) seeds.push_back(t);
        const double integral =
            sphere_area(n) * quad::integrate(
                                 [&](double rho) {
                                     return std::pow(2.0 / (1.0 + rho * rho), n) *
                                            std::pow(rho, n - 1);
                                 },
                                 0.0, 1e8, qopt, seeds)
                                 .value;
        recs.push_back(check_close(prefix + "jacobian-measure",
                                   "integral of (2/(1+|x|^2))^n over R^n equals |S^n|",
                                   integral, sphere_area(n + 1), 1e-8 * opt.tol_scale));
    }
    watch.stamp(recs, mark);

    mark = recs.size();
    {
        const double closed = sphere_kernel_closed_form(p);
        recs.push_back(check_close(prefix + "sphere-kernel",
                                   "int_{S^n} |xi-eta|^-(n-s) = 2^s pi^(n/2) "
                                   "Gamma(s/2)/Gamma((n+s)/2)",
                                   sphere_kernel_integral(p), closed, 1e-6 * opt.tol_scale));
        if (n >= 2) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (double alpha : {0.6, 1.3, 2.4}) {
                const double v = sphere_kernel_integral_offaxis(p, alpha);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            recs.push_back(check_le(prefix + "sphere-kernel-base-independence",
                                    "sphere kernel integral is independent of the base point",
                                    hi / lo - 1.0, 2e-8 * opt.tol_scale, 0.0));
        }
    }
    watch.stamp(recs, mark);
    return recs;
}

// ---------------------------------------------------------------------------
// cor1: maximal-function equality
// ---------------------------------------------------------------------------

std::vector<CheckRecord> maximal_equality_checks(const Params& p, const Options& opt,
                                                 const std::string& prefix) {
    std::vector<CheckRecord> recs;
    Stopwatch watch;
    const auto eopt = envelope_opts(opt);
    const double theta = (p.n - p.s) / p.n;

    const auto g = extremal_profile(p);
    const auto ball = indicator_profile();
    const double l1_g = l1_norm(g, p);
    const double l1_ball = l1_norm(ball, p);

    {
        try {
            const auto env_g = maximal_envelope(g, p, eopt);
            recs.push_back(check_close(prefix + "weak-maximal-extremal",
                                       "weak_norm(M_s f) = ||f||_1 for radial decreasing f",
                                       weak_norm(env_g, p).value / l1_g, 1.0,
                                       0.01 * opt.tol_scale));
        } catch (const numeric_accuracy_error& e) {
            recs.push_back(flagged(prefix + "weak-maximal-extremal",
                                   "weak_norm(M_s f) = ||f||_1 for radial decreasing f",
                                   std::string("far-field regime unreachable at desk scale: ") +
                                       e.what()));
        }
        const auto env_b = maximal_envelope(ball, p, eopt);
        recs.push_back(check_close(prefix + "weak-maximal-ball",
                                   "weak_norm(M_s f) = ||f||_1 for radial decreasing f",
                                   weak_norm(env_b, p).value / l1_ball, 1.0,
                                   0.01 * opt.tol_scale));
    }
    watch.stamp(recs, 0);

    std::size_t mark = recs.size();
    {
        // level sets of the Dirac maximal function: lambda |{M delta > lambda}| = 1
        double worst = 0.0;
        for (double lam : {1e-6, 1e-3, 1.0, 1e3, 1e6}) {
            const double rho = std::exp(-(std::log(lam) + log_unit_ball_volume(p.n)) / p.n);
            const double check_value = dirac_maximal(p, rho); // = lam by construction
            const double measure = unit_ball_volume(p.n) * std::pow(rho, p.n);
            worst = std::max(worst, std::fabs(check_value * measure - 1.0));
        }
        recs.push_back(check_le(prefix + "dirac-level-sets",
                                "lambda |{M(delta) > lambda}| = 1 for every lambda", worst,
                                1e-12 * opt.tol_scale, 0.0));
        recs.push_back(check_close(prefix + "dirac-value",
                                   "M(delta)(x) = 1/(v_n |x|^n)", dirac_maximal(p, 1.0),
                                   1.0 / unit_ball_volume(p.n), 1e-13 * opt.tol_scale));
    }
    watch.stamp(recs, mark);

    mark = recs.size();
    {
        // Dirac comparison for unit-mass radial decreasing profiles; scaling
        // a = 2 ||g||^{-2/(n+s)} with b = 1 makes the family member g/||g||
        const auto g_norm =
            extremal_family_profile(p, 2.0 * std::pow(l1_g, -2.0 / (p.n + p.s)), 1.0);
        const auto ball_norm = indicator_profile(1.0, 1.0 / l1_ball);
        double worst = 0.0;
        for (double rho : sample_radii(opt, 50)) {
            for (const auto* f : {&g_norm, &ball_norm}) {
                const double ms = fractional_maximal(*f, p, rho);
                const double dirac_bound =
                    std::pow(dirac_maximal(p, rho), theta);
                worst = std::max(worst, ms / dirac_bound);
            }
        }
        recs.push_back(check_le(prefix + "dirac-domination",
                                "M_s f <= M(delta)^((n-s)/n) for ||f||_1 = 1, f radial decreasing",
                                worst, 1.0 + 1e-5 * opt.tol_scale, 0.0));
    }
    watch.stamp(recs, mark);

    mark = recs.size();
    {
        // pointwise domination by the potential; also settles the constant grouping
        const double correct_const =
            std::exp(-log_riesz_constant(p) + (p.s - p.n) / p.n * log_unit_ball_volume(p.n));
        const double alt_const =
            std::exp(-log_riesz_constant(p) + (p.n - p.s) / p.n * log_unit_ball_volume(p.n));
        double worst = 0.0, worst_alt = 0.0;
        for (double rho : sample_radii(opt, 50)) {
            const double ms = fractional_maximal(g, p, rho);
            const double is = riesz_potential(g, p, rho);
            worst = std::max(worst, ms / (correct_const * is));
            worst_alt = std::max(worst_alt, ms / (alt_const * is));
        }
        recs.push_back(check_le(prefix + "potential-domination",
                                "M_s f <= gamma_s^-1 v_n^((s-n)/n) I_s f for positive f",
                                worst, 1.0 + 1e-5 * opt.tol_scale, 0.0));
        std::ostringstream note;
        note << "grouping resolved to gamma^-1 v^((s-n)/n): max ratio " << worst
             << "; alternative grouping gamma^-1 v^((n-s)/n) max ratio " << worst_alt;
        recs.push_back(flagged(prefix + "domination-grouping",
                               "which grouping of gamma_s^-1 v_n^((s-n)/n) makes the "
                               "domination tight",
                               note.str(), worst));
    }
    watch.stamp(recs, mark);
    return recs;
}

// ---------------------------------------------------------------------------
// thm13: two-sided estimate of the best constant
// ---------------------------------------------------------------------------

std::vector<CheckRecord> bound_chain_checks(const Params& p, const Options& opt,
                                            const std::string& prefix) {
    std::vector<CheckRecord> recs;
    Stopwatch watch;
    const double theta = (p.n - p.s) / p.n;

    if (!p.in_lower_bound_window()) {
        recs.push_back(flagged(prefix + "window",
                               "two-sided estimate needs n > 2 and 0 < s < (n-2)/4",
                               "parameters outside the window; lower-bound chain skipped",
                               p.s));
        recs.push_back(check_le(prefix + "upper-only",
                                "gamma_s v_n^((n-s)/n) <= gamma_s v_n^((n-s)/n) n/s",
                                sharp_floor(p), best_constant_upper(p), 1e-12));
        return recs;
    }

    const auto k = lower_bound_constants(p);
    recs.push_back(check_true(prefix + "lambda0-positive", "lambda0 = gamma_s (2^(n-s-2) c - d) > 0",
                              k.lambda0 > 0.0, k.lambda0));
    {
        const double lhs = k.c / k.d;
        const double rhs = std::pow(2.0, -(p.n - p.s - 2.0));
        const double direct = (p.n - 2.0) / (p.s * std::pow(2.0, p.n - p.s));
        recs.push_back(check_close(prefix + "cd-ratio", "c/d = (n-2)/(s 2^(n-s))", lhs, direct,
                                   1e-12 * opt.tol_scale));
        recs.push_back(check_true(prefix + "cd-ratio-above", "c/d > 2^-(n-s-2)", lhs > rhs, lhs));
    }
    watch.stamp(recs, 0);

    // pure-algebra identity of the final chain
    std::size_t mark = recs.size();
    {
        const double lhs = k.lambda0 * std::pow(unit_ball_volume(p.n), theta) *
                           gamma_fn(0.5 * p.n) /
                           (std::pow(2.0, p.n - p.s) * std::pow(pi, 0.5 * p.n));
        recs.push_back(check_close(prefix + "ratio-identity",
                                   "lambda0 v^((n-s)/n) Gamma(n/2) 2^(s-n) pi^(-n/2) = "
                                   "gamma_s v^((n-s)/n) (n-2-4s)/(2s(n-2-s))",
                                   lhs, best_constant_lower(p), 1e-10 * opt.tol_scale));
    }
    watch.stamp(recs, mark);

    const auto f = lower_bound_profile(p);
    const double l1 = l1_norm(f, p);
    mark = recs.size();
    {
        recs.push_back(check_close(prefix + "witness-l1",
                                   "|||y|^(2-n) chi|_1 = omega_{n-1}/2", l1,
                                   0.5 * sphere_area(p.n), 1e-10 * opt.tol_scale));
        double worst = 1e300;
        for (double rho : {0.05, 0.1, 0.25, 0.5}) {
            const double direct = riesz_potential(f, p, rho) / riesz_constant(p);
            const double bound = lower_bound_pointwise(p, rho);
            worst = std::min(worst, direct / bound);
        }
        recs.push_back(check_le(prefix + "pointwise-bound",
                                "I_s f(x)/gamma_s >= c |x|^-(n-s-2) - d on |x| <= 1/2",
                                1.0 - 1e-6 * opt.tol_scale, worst, 0.0));
    }
    watch.stamp(recs, mark);

    mark = recs.size();
    {
        auto eopt = envelope_opts(opt);
        const auto env = potential_envelope(f, p, eopt);
        const auto ev = lower_bound_level_set(p, env, l1);
        recs.push_back(check_le(prefix + "level-set-floor",
                                "|{I_s f > lambda0}| >= v_n 2^-n",
                                ev.floor_measure * (1.0 - 1e-3 * opt.tol_scale),
                                ev.measured_measure, 0.0));
        recs.push_back(check_close(prefix + "level-set-algebra",
                                   "lambda0 (v_n 2^-n)^((n-s)/n)/||f||_1 equals the printed "
                                   "lower bound",
                                   ev.analytic_ratio, ev.printed_lower_bound,
                                   1e-10 * opt.tol_scale));

        const double pinned_ratio = ev.lambda0 * std::pow(ev.measured_measure, theta) / l1;
        const double opt_ratio = weak_norm(env, p).value / l1;
        const double lower = best_constant_lower(p);
        const double upper = best_constant_upper(p);
        recs.push_back(check_le(prefix + "pinned-ratio-above-lower",
                                "lambda0-pinned witness ratio >= printed lower bound",
                                lower * (1.0 - 1e-9), pinned_ratio, 0.0));
        recs.push_back(check_le(prefix + "witness-ratio-below-optimized",
                                "lambda0-pinned ratio <= lambda-optimized ratio", pinned_ratio,
                                opt_ratio, 1e-9 * opt.tol_scale));
        recs.push_back(check_le(prefix + "optimized-ratio-in-bracket-lo",
                                "lower bound <= lambda-optimized witness ratio",
                                lower * (1.0 - 1e-9), opt_ratio, 0.0));
        recs.push_back(check_le(prefix + "optimized-ratio-in-bracket-hi",
                                "lambda-optimized witness ratio <= upper bound", opt_ratio,
                                upper, 1e-9 * opt.tol_scale));
        recs.push_back(check_le(prefix + "floor-below-optimized",
                                "gamma_s v^((n-s)/n) <= lambda-optimized witness ratio",
                                sharp_floor(p), opt_ratio, 1e-9));
    }
    watch.stamp(recs, mark);

    mark = recs.size();
    {
        const Params p_small(p.n, 1e-4);
        recs.push_back(check_close(prefix + "upper-limit-small-s",
                                   "gamma_s v^((n-s)/n) n/s -> 1 as s -> 0",
                                   best_constant_upper(p_small), 1.0, 1e-3 * opt.tol_scale));
        recs.push_back(check_close(prefix + "lower-limit-small-s",
                                   "gamma_s v^((n-s)/n) (n-2-4s)/(2s(n-2-s)) -> 1/(2n)",
                                   best_constant_lower(p_small), 0.5 / p.n,
                                   1e-3 * opt.tol_scale));
        recs.push_back(check_le(prefix + "lower-below-upper",
                                "printed lower bound < printed upper bound",
                                best_constant_lower(p), best_constant_upper(p), 0.0));
    }
    watch.stamp(recs, mark);
    return recs;
}

// ---------------------------------------------------------------------------
// appendix: heat semigroup route
// ---------------------------------------------------------------------------

std::vector<CheckRecord> heat_checks(const Params& p, const Options& opt,
                                     const std::string& prefix) {
    std::vector<CheckRecord> recs;
    Stopwatch watch;
    const auto g = extremal_profile(p);
    const auto ball = indicator_profile();
    const double l1_g = l1_norm(g, p);
    const double l1_ball = l1_norm(ball, p);

    {
        // kernel mass, sup bound, semigroup property
        quad::Options qopt;
        qopt.rel_tol = 1e-12;
        double worst = 0.0;
        for (double t : {0.1, 1.0, 10.0}) {
            std::vector<double> seeds;
            const double hi = 40.0 * std::sqrt(t);
            for (double x = std::sqrt(t) * 0.25; x < hi; x *= 2.0) seeds.push_back(x);
            const double mass =
                sphere_area(p.n) * quad::integrate(
                                       [&](double rho) {
                                           return heat_kernel(p, t, rho) *
                                                  std::pow(rho, p.n - 1);
                                       },
                                       0.0, hi, qopt, seeds)
                                       .value;
            worst = std::max(worst, std::fabs(mass - 1.0));
        }
        recs.push_back(check_le(prefix + "kernel-mass", "integral of P_t over R^n is 1", worst,
                                1e-10 * opt.tol_scale, 0.0));
        recs.push_back(check_close(prefix + "kernel-sup",
                                   "sup P_t = (4 pi t)^(-n/2)", heat_kernel(p, 2.0, 0.0),
                                   std::exp(-0.5 * p.n * std::log(8.0 * pi)),
                                   1e-13 * opt.tol_scale));
        // P_t * P_u (0) = P_{t+u}(0)
        const double t = 0.7, u = 0.4;
        RadialProfile::Traits traits;
        traits.monotone_decreasing = true;
        traits.sup_bound = heat_kernel(p, u, 0.0);
        const auto pu = RadialProfile::from_function(
            [&, u](double rho) { return heat_kernel(p, u, rho); }, traits);
        recs.push_back(check_close(prefix + "semigroup",
                                   "P_t * P_u = P_{t+u}", heat_convolve(pu, p, t, 0.0),
                                   heat_kernel(p, t + u, 0.0), 1e-8 * opt.tol_scale));
    }
    watch.stamp(recs, 0);

    // approximate identity and mass conservation
    std::size_t mark = recs.size();
    {
        recs.push_back(check_close(prefix + "approximate-identity",
                                   "P_t * f -> f as t -> 0 at continuity points",
                                   heat_convolve(g, p, 1e-6, 0.5), g(0.5),
                                   1e-3 * opt.tol_scale));
        quad::Options qopt;
        qopt.rel_tol = 1e-9;
        const double t = 0.5;
        std::vector<double> seeds;
        for (double x = 0.25; x < 40.0; x *= 2.0) seeds.push_back(x);
        const double mass =
            sphere_area(p.n) * quad::integrate(
                                   [&](double rho) {
                                       return heat_convolve(ball, p, t, rho, 1e-10) *
                                              std::pow(rho, p.n - 1);
                                   },
                                   0.0, 40.0, qopt, seeds)
                                   .value;
        recs.push_back(check_close(prefix + "mass-conservation",
                                   "integral of P_t * f equals ||f||_1", mass, l1_ball,
                                   1e-7 * opt.tol_scale));
    }
    watch.stamp(recs, mark);

    // subordination
    mark = recs.size();
    {
        recs.push_back(check_le(prefix + "subordination-extremal",
                                "I_s f = Gamma(s/2)^-1 int t^(s/2-1) P_t*f dt, extremal f",
                                subordination_residual(g, p, 0.0), 1e-5 * opt.tol_scale, 0.0));
        double worst = 0.0;
        for (double rho : {0.0, 1.0, 3.0})
            worst = std::max(worst, subordination_residual(ball, p, rho));
        recs.push_back(check_le(prefix + "subordination-ball",
                                "subordination identity for the ball indicator", worst,
                                1e-5 * opt.tol_scale, 0.0));
        // pure power profile reproduces the convolution identity constant
        const Params p5(5, 1.0);
        const auto fp = power_profile(3.0); // alpha = 2
        const double via_heat = subordination_potential(fp, p5, 1.0, 1e-6);
        const double expected =
            riesz_constant(p5) * composition_constant(CompositionParams(p5, 2.0));
        recs.push_back(check_close(prefix + "subordination-power",
                                   "subordination route reproduces C_{n,alpha,s} |x|^-(n-s-alpha)",
                                   via_heat, expected, 1e-4 * opt.tol_scale));
    }
    watch.stamp(recs, mark);

    // split bound: reconstruction, majorants, dyadic route
    mark = recs.size();
    {
        const double gamma_half_s = gamma_fn(0.5 * p.s);
        const double exact = extremal_potential(p, 0.0);
        double worst_recon = 0.0;
        for (double split : {0.1, 1.0, 10.0}) {
            const auto hs = split_bound(g, p, 0.0, split);
            worst_recon = std::max(worst_recon,
                                   rel_err((hs.j1 + hs.j2) / gamma_half_s, exact));
            if (split == 1.0) {
                recs.push_back(check_le(prefix + "split-j1-majorant",
                                        "J1 <= 2 R^(s/2) 2^(-s/2)/(1-2^(-s/2)) M0 f", hs.j1,
                                        hs.j1_majorant, 1e-9));
                recs.push_back(check_le(prefix + "split-j2-majorant",
                                        "J2 <= 2/(n-s) (4 pi)^(-n/2) R^((s-n)/2) ||f||_1",
                                        hs.j2, hs.j2_majorant, 1e-9));
                recs.push_back(check_le(prefix + "split-envelope-bound",
                                        "I_s f <= (J1 + J2 majorants)/Gamma(s/2)", hs.potential,
                                        hs.bound_a3, 1e-9));
                recs.push_back(check_close(prefix + "split-dyadic",
                                           "dyadic decomposition of J1 matches the direct "
                                           "integral",
                                           dyadic_j1(g, p, 0.0, split), hs.j1,
                                           1e-8 * opt.tol_scale));
            }
        }
        recs.push_back(check_le(prefix + "split-reconstruction",
                                "J1 + J2 = Gamma(s/2) I_s f for every split point",
                                worst_recon, 1e-8 * opt.tol_scale, 0.0));
        // J1 ~ R^{s/2} and J2 ~ R^{(s-n)/2}; compare against the R = 1 split
        const double r_tiny = std::max(std::pow(1e-4, 2.0 / p.s), 1e-40);
        const double r_huge = std::min(std::pow(1e-4, 2.0 / (p.s - p.n)), 1e40);
        const auto base = split_bound(g, p, 0.0, 1.0);
        const auto tiny = split_bound(g, p, 0.0, r_tiny);
        const auto huge = split_bound(g, p, 0.0, r_huge);
        recs.push_back(check_true(prefix + "split-trends",
                                  "J1 vanishes as R -> 0 and J2 vanishes as R -> infinity",
                                  tiny.j1 < 0.05 * base.j1 && huge.j2 < 0.05 * base.j2,
                                  tiny.j1));
    }
    watch.stamp(recs, mark);

    // averaged maximal operator
    mark = recs.size();
    {
        recs.push_back(check_le(prefix + "averaged-max-lower",
                                "M0 f >= f at continuity points (r -> 0 average)",
                                g(0.0) * (1.0 - 1e-3 * opt.tol_scale),
                                averaged_heat_maximal(g, p, 0.0), 0.0));
        EnvelopeOptions m0_opt;
        m0_opt.rho_min = 1e-2;
        m0_opt.rho_max = 1e2;
        m0_opt.points_per_decade = opt.fast ? 6 : 12;
        m0_opt.mode = opt.mode;
        double worst = 0.0;
        for (const auto* f : {&g, &ball}) {
            const double l1 = (f == &g) ? l1_g : l1_ball;
            const auto env = averaged_maximal_envelope(*f, p, m0_opt);
            const auto& vals = env.values();
            for (std::size_t i = 1; i + 1 < vals.size(); i += 2) {
                const double lam = vals[i];
                if (!(lam > 0.0)) continue;
                const double measure = superlevel_measure(env, p, lam);
                worst = std::max(worst, lam * measure / l1);
            }
        }
        recs.push_back(check_le(prefix + "hopf-weak-type",
                                "lambda |{M0 f > lambda}| <= ||f||_1", worst,
                                1.0 + 1e-2 * opt.tol_scale, 0.0));
    }
    watch.stamp(recs, mark);

    // pointwise tau bound
    mark = recs.size();
    {
        const double tau_p = tau_constant(p);
        const double tau_m = tau_minimized_numeric(p);
        recs.push_back(check_close(prefix + "tau-printed-equals-minimized",
                                   "the printed tau_s coincides with the exact minimum of "
                                   "the split envelope",
                                   tau_m, tau_p, 1e-10 * opt.tol_scale));
        const double tau_r = tau_from_printed_radius(p);
        if (std::isnan(tau_r)) {
            recs.push_back(flagged(prefix + "tau-printed-radius",
                                   "split envelope at the printed choice of R",
                                   "printed split-point formula has a negative radicand for "
                                   "s < 2; exact minimizer used instead",
                                   p.s));
        } else {
            recs.push_back(check_le(prefix + "tau-printed-radius",
                                    "printed R gives a value above the true minimum", tau_m,
                                    tau_r, 1e-12));
        }
        double worst = 0.0;
        const double theta = (p.n - p.s) / p.n;
        for (double rho : {0.0, 1.0, 5.0}) {
            for (const auto* f : {&g, &ball}) {
                const double l1 = (f == &g) ? l1_g : l1_ball;
                const double m0 = averaged_heat_maximal(*f, p, rho);
                const double bound = tau_m * std::pow(m0, theta) * std::pow(l1, p.s / p.n);
                worst = std::max(worst, riesz_potential(*f, p, rho) / bound);
            }
        }
        recs.push_back(check_le(prefix + "pointwise-tau-bound",
                                "I_s f <= tau_s (M0 f)^((n-s)/n) ||f||_1^(s/n)", worst,
                                1.0 + 1e-6 * opt.tol_scale, 0.0));
        recs.push_back(check_le(prefix + "tau-majorant",
                                "tau_s <= (2/ln2)(4 pi)^(s/2) Gamma(s/2+1)^-1 n/(n-s)",
                                tau_p, tau_constant_majorant(p), 1e-12));
    }
    watch.stamp(recs, mark);

    // elementary inequality and the asymptotic-comparability table
    mark = recs.size();
    {
        double worst = 0.0;
        for (double s = 1e-6; s < 20.0; s *= 1.6) {
            const double lhs = 0.5 * std::log(2.0) * s;
            const double rhs = std::expm1(0.5 * s * std::log(2.0));
            worst = std::max(worst, lhs / rhs);
        }
        recs.push_back(check_le(prefix + "exp-inequality", "2^(s/2) - 1 > (ln2/2) s for s > 0",
                                worst, 1.0 - 1e-12, 0.0));

        const std::vector<int> ns{3, 10, 100};
        std::vector<double> ss;
        for (double s = 1e-4; s <= 0.5000001; s *= std::pow(5000.0, 1.0 / 12.0))
            ss.push_back(std::min(s, 0.5));
        const auto rows = asymptotic_comparison(ns, ss, opt.mode);
        double lo = 1e300, hi = 0.0;
        bool finite = true;
        for (const auto& row : rows) {
            finite = finite && std::isfinite(row.ratio) && std::isfinite(row.ratio_min_printed);
            lo = std::min({lo, row.ratio, row.ratio_min_printed});
            hi = std::max({hi, row.ratio, row.ratio_min_printed});
        }
        recs.push_back(check_true(prefix + "asymptotic-window",
                                  "tau_s and the rearrangement bound are comparable: ratios "
                                  "finite and inside [0.05, 20]",
                                  finite && lo >= 0.05 && hi <= 20.0, hi));
    }
    watch.stamp(recs, mark);
    return recs;
}

// ---------------------------------------------------------------------------

std::vector<CheckRecord> run_suite(const std::string& suite, const Params& p,
                                   const Options& opt) {
    const std::string prefix = tag(suite, p);
    if (suite == "thm11") return identity_checks(p, opt, prefix);
    if (suite == "thm12") {
        auto recs = sharpness_checks(p, opt, prefix);
        auto proj = projection_checks(p, opt, prefix);
        recs.insert(recs.end(), proj.begin(), proj.end());
        return recs;
    }
    if (suite == "cor1") return maximal_equality_checks(p, opt, prefix);
    if (suite == "thm13") return bound_chain_checks(p, opt, prefix);
    if (suite == "appendix") return heat_checks(p, opt, prefix);
    throw std::domain_error("unknown suite: " + suite);
}

} // namespace riesz::verify

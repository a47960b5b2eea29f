#include "riesz/bounds.hpp"

#include "riesz/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace riesz {

LowerBoundConstants lower_bound_constants(const Params& p) {
    p.require_lower_bound_window();
    const double n = p.n, s = p.s;
    const double pref = std::exp(0.5 * n * std::log(pi));
    const double c = 4.0 * pref / ((n - s - 2.0) * gamma_fn(0.5 * n - 1.0) * s);
    const double d = std::exp((n - s + 1.0) * std::log(2.0)) * pref
                   / ((n - s - 2.0) * gamma_fn(0.5 * n));
    const double lambda0 = riesz_constant(p) * (std::exp((n - s - 2.0) * std::log(2.0)) * c - d);
    if (!(lambda0 > 0.0))
        throw invariant_violation("lower_bound_constants: lambda0 must be positive on the window");
    return LowerBoundConstants{c, d, lambda0};
}

RadialProfile lower_bound_profile(const Params& p) {
    if (p.n <= 2)
        throw std::domain_error("lower_bound_profile: requires n > 2");
    return power_profile(p.n - 2.0, 1.0);
}

double lower_bound_pointwise(const Params& p, double rho) {
    if (!(rho > 0.0) || !(rho <= 0.5))
        throw std::domain_error("lower_bound_pointwise: rho must lie in (0, 1/2]");
    const auto k = lower_bound_constants(p);
    return k.c * std::pow(rho, -(p.n - p.s - 2.0)) - k.d;
}

LevelSetEvidence lower_bound_level_set(const Params& p, const DecreasingEnvelope& env,
                                       double l1) {
    const auto k = lower_bound_constants(p);
    const double floor_measure = unit_ball_volume(p.n) * std::pow(2.0, -p.n);
    const double measured = superlevel_measure(env, p, k.lambda0);
    const double theta = (p.n - p.s) / p.n;
    const double analytic = k.lambda0 * std::pow(floor_measure, theta) / l1;
    const double printed = best_constant_lower(p);
    LevelSetEvidence ev{k.lambda0, measured, floor_measure, analytic, printed,
                        measured >= floor_measure * (1.0 - 1e-3)};
    return ev;
}

namespace {

BoundsRow make_row(int n, double s, const TabulateOptions& opt) {
    BoundsRow row;
    row.n = n;
    row.s = s;
    const Params p(n, s);
    row.exact_floor = sharp_floor(p);
    row.upper = best_constant_upper(p);
    row.tau_bound = tau_constant(p);

    if (!p.in_lower_bound_window()) {
        row.flags.push_back("outside-window");
        return row;
    }
    if (0.25 * (n - 2.0) - s < opt.edge_margin) {
        row.flags.push_back("window-edge");
        return row;
    }
    row.lower = best_constant_lower(p);

    if (opt.with_witness) {
        const auto f = lower_bound_profile(p);
        const double l1 = l1_norm(f, p);
        EnvelopeOptions eopt = opt.envelope;
        eopt.mode = par::Mode::serial; // rows already run in parallel
        const auto env = potential_envelope(f, p, eopt);
        const auto ev = lower_bound_level_set(p, env, l1);
        const double theta = (p.n - p.s) / p.n;
        row.witness_ratio = ev.lambda0 * std::pow(ev.measured_measure, theta) / l1;
        row.witness_ratio_opt = weak_norm(env, p).value / l1;
        if (!ev.ok) row.flags.push_back("level-set-floor-missed");
    }
    return row;
}

} // namespace

std::vector<BoundsRow> tabulate(int n, std::span<const double> s_grid,
                                const TabulateOptions& opt) {
    std::vector<BoundsRow> rows(s_grid.size());
    par::for_index(
        s_grid.size(),
        [&](std::size_t i) {
            try {
                rows[i] = make_row(n, s_grid[i], opt);
            } catch (const std::exception& e) {
                rows[i].n = n;
                rows[i].s = s_grid[i];
                rows[i].flags.push_back(std::string("error: ") + e.what());
            }
        },
        opt.mode);
    return rows;
}

std::string bounds_csv(const std::vector<BoundsRow>& rows) {
    std::ostringstream out;
    out.precision(12);
    out << "n,s,lower,exact_floor,witness_ratio,upper,tau_bound,witness_ratio_opt,flags\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.s << ',';
        if (r.lower) out << *r.lower;
        out << ',' << r.exact_floor << ',';
        if (r.witness_ratio) out << *r.witness_ratio;
        out << ',' << r.upper << ',' << r.tau_bound << ',';
        if (r.witness_ratio_opt) out << *r.witness_ratio_opt;
        out << ',';
        for (std::size_t i = 0; i < r.flags.size(); ++i)
            out << (i ? ";" : "") << r.flags[i];
        out << '\n';
    }
    return out.str();
}

} // namespace riesz

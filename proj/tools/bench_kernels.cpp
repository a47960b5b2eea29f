// Times the OpenMP grid kernels against their serial reference
// implementations: envelope sampling, bound tabulation, and the constants
// comparison grid. Results must agree bit for bit; the table reports wall
// times and speedup.

#include "riesz/bounds.hpp"
#include "riesz/extremal.hpp"
#include "riesz/heat.hpp"
#include "riesz/norms.hpp"
#include "riesz/parallel.hpp"
#include "riesz/radial.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct BenchRow {
    std::string name;
    double serial_s;
    double parallel_s;
    bool identical;
};

void print_rows(const std::vector<BenchRow>& rows) {
    std::printf("%-34s %12s %12s %9s %10s\n", "kernel", "serial [s]", "openmp [s]", "speedup",
                "bitwise");
    for (const auto& r : rows)
        std::printf("%-34s %12.3f %12.3f %8.2fx %10s\n", r.name.c_str(), r.serial_s,
                    r.parallel_s, r.serial_s / r.parallel_s, r.identical ? "yes" : "NO");
}

} // namespace

int main() {
    using namespace riesz;
    std::vector<BenchRow> rows;
    std::printf("threads available: %d\n\n", par::thread_count());

    // potential envelope sampling
    {
        const Params p(3, 1.0);
        const auto g = extremal_profile(p);
        EnvelopeOptions opt;
        opt.points_per_decade = 24;
        opt.mode = par::Mode::serial;
        auto t0 = clock_type::now();
        const auto env_s = potential_envelope(g, p, opt);
        const double ts = seconds_since(t0);
        opt.mode = par::Mode::openmp;
        t0 = clock_type::now();
        const auto env_p = potential_envelope(g, p, opt);
        const double tp = seconds_since(t0);
        rows.push_back({"potential envelope (3,1)", ts, tp, env_s.values() == env_p.values()});
    }

    // maximal envelope sampling
    {
        const Params p(3, 1.0);
        const auto g = extremal_profile(p);
        EnvelopeOptions opt;
        opt.points_per_decade = 24;
        opt.mode = par::Mode::serial;
        auto t0 = clock_type::now();
        const auto env_s = maximal_envelope(g, p, opt);
        const double ts = seconds_since(t0);
        opt.mode = par::Mode::openmp;
        t0 = clock_type::now();
        const auto env_p = maximal_envelope(g, p, opt);
        const double tp = seconds_since(t0);
        rows.push_back({"maximal envelope (3,1)", ts, tp, env_s.values() == env_p.values()});
    }

    // bound table rows (with witness envelopes)
    {
        std::vector<double> grid;
        for (double s = 0.02; s < 0.23; s += 0.04) grid.push_back(s);
        TabulateOptions opt;
        opt.with_witness = true;
        opt.envelope.points_per_decade = 12;
        opt.mode = par::Mode::serial;
        auto t0 = clock_type::now();
        const auto rows_s = tabulate(3, grid, opt);
        const double ts = seconds_since(t0);
        opt.mode = par::Mode::openmp;
        t0 = clock_type::now();
        const auto rows_p = tabulate(3, grid, opt);
        const double tp = seconds_since(t0);
        bool same = rows_s.size() == rows_p.size();
        for (std::size_t i = 0; same && i < rows_s.size(); ++i)
            same = rows_s[i].upper == rows_p[i].upper &&
                   rows_s[i].witness_ratio == rows_p[i].witness_ratio;
        rows.push_back({"bound table, witness columns", ts, tp, same});
    }

    // constants comparison grid
    {
        const std::vector<int> ns{3, 10, 30, 100};
        std::vector<double> ss;
        for (double s = 1e-4; s <= 0.5; s *= 1.35) ss.push_back(s);
        auto t0 = clock_type::now();
        const auto rows_s = asymptotic_comparison(ns, ss, par::Mode::serial);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const auto rows_p = asymptotic_comparison(ns, ss, par::Mode::openmp);
        const double tp = seconds_since(t0);
        bool same = rows_s.size() == rows_p.size();
        for (std::size_t i = 0; same && i < rows_s.size(); ++i)
            same = rows_s[i].ratio == rows_p[i].ratio;
        rows.push_back({"tau comparison grid", ts, tp, same});
    }

    std::printf("\n");
    print_rows(rows);
    for (const auto& r : rows)
        if (!r.identical) return 1;
    return 0;
}

// Command-line driver: verification suites, potential/maximal evaluation on
// profile files, and bound tabulation.
//
// Exit codes: 0 all checks pass, 1 at least one failure, 2 usage or I/O error.

#include "riesz/bounds.hpp"
#include "riesz/heat.hpp"
#include "riesz/norms.hpp"
#include "riesz/profile_io.hpp"
#include "riesz/radial.hpp"
#include "riesz/report.hpp"
#include "riesz/verify.hpp"
#include "riesz/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::uint64_t seed_from_env() {
    const char* env = std::getenv("RIESZ_WEAK_SEED");
    if (!env) return 0;
    return std::strtoull(env, nullptr, 10);
}

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

int run_verify(const std::vector<int>& ns, const std::vector<double>& ss,
               std::vector<std::string> suites, const std::string& out_path,
               double tol_scale, int jobs, bool fast) {
    if (ns.size() != ss.size()) {
        std::cerr << "verify: --n and --s must be given the same number of times\n";
        return 2;
    }
    if (suites.empty()) suites = riesz::verify::suite_names();
    for (const auto& s : suites)
        if (!riesz::verify::is_suite(s)) {
            std::cerr << "verify: unknown suite '" << s << "'\n";
            return 2;
        }

    riesz::verify::Options opt;
    opt.tol_scale = tol_scale;
    opt.seed = seed_from_env();
    opt.fast = fast;

    struct Job {
        std::string suite;
        int n;
        double s;
    };
    std::vector<Job> job_list;
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (const auto& suite : suites) job_list.push_back({suite, ns[i], ss[i]});

    std::vector<std::vector<riesz::CheckRecord>> results(job_list.size());
    const bool parallel_suites = jobs > 1;
    riesz::par::set_thread_count(jobs > 0 ? jobs : 0);
    auto inner = opt;
    inner.mode = parallel_suites ? riesz::par::Mode::serial : riesz::par::Mode::openmp;
    riesz::par::for_index(
        job_list.size(),
        [&](std::size_t i) {
            const auto& job = job_list[i];
            try {
                results[i] = riesz::verify::run_suite(job.suite, riesz::Params(job.n, job.s),
                                                      inner);
            } catch (const std::exception& e) {
                riesz::CheckRecord rec;
                std::ostringstream id;
                id << job.suite << "(n=" << job.n << ",s=" << job.s << ").uncaught-error";
                rec.id = id.str();
                rec.anchor = "suite execution";
                rec.status = "fail";
                rec.note = e.what();
                results[i] = {rec};
            }
        },
        parallel_suites ? riesz::par::Mode::openmp : riesz::par::Mode::serial);

    riesz::VerificationReport report;
    report.version = RIESZWEAK_VERSION;
    for (auto& recs : results) report.append(std::move(recs));

    for (const auto& rec : report.checks)
        std::cerr << "[" << rec.status << "] " << rec.id << "\n";
    std::cerr << "pass " << report.count("pass") << ", fail " << report.count("fail")
              << ", flagged " << report.count("flagged") << "\n";

    write_or_print(report.to_json(), out_path);
    return report.all_passed() ? 0 : 1;
}

int run_potential(const std::string& profile_path, int n, double s,
                  const std::string& radii_arg, const std::string& out_path) {
    const riesz::Params p(n, s);
    const auto f = riesz::load_profile_json(profile_path);
    std::vector<double> radii;
    std::stringstream ss(radii_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        radii.push_back(std::stod(item));
    }
    std::ostringstream out;
    out.precision(12);
    out << "rho,I_s,M_s\n";
    for (double rho : radii) {
        out << rho << ',' << riesz::riesz_potential(f, p, rho) << ','
            << riesz::fractional_maximal(f, p, rho) << '\n';
    }
    write_or_print(out.str(), out_path);
    return 0;
}

int run_bounds(int n, double s_min, double s_max, int steps, const std::string& format,
               const std::string& out_path, bool with_witness, int jobs,
               const std::string& tau_table_path) {
    if (!(s_min > 0.0) || !(s_max > s_min) || steps < 1) {
        std::cerr << "bounds: need 0 < s-min < s-max and steps >= 1\n";
        return 2;
    }
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i)
        grid[i] = s_min * std::pow(s_max / s_min, steps == 1 ? 0.0 : double(i) / (steps - 1));

    if (n <= 2)
        std::cerr << "bounds: n <= 2, the lower-bound column is outside its window\n";

    riesz::par::set_thread_count(jobs > 0 ? jobs : 0);
    riesz::TabulateOptions opt;
    opt.with_witness = with_witness;
    opt.envelope.points_per_decade = 24;
    const auto rows = riesz::tabulate(n, grid, opt);

    if (!tau_table_path.empty()) {
        const std::vector<int> ns{n};
        const auto tau_rows = riesz::asymptotic_comparison(ns, grid);
        write_or_print(riesz::asymptotic_csv(tau_rows), tau_table_path);
    }

    if (format == "csv") {
        write_or_print(riesz::bounds_csv(rows), out_path);
    } else if (format == "json") {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json row;
            row["n"] = r.n;
            row["s"] = r.s;
            row["lower"] = r.lower ? nlohmann::ordered_json(*r.lower) : nullptr;
            row["exact_floor"] = r.exact_floor;
            row["witness_ratio"] =
                r.witness_ratio ? nlohmann::ordered_json(*r.witness_ratio) : nullptr;
            row["upper"] = r.upper;
            row["tau_bound"] = r.tau_bound;
            row["witness_ratio_opt"] =
                r.witness_ratio_opt ? nlohmann::ordered_json(*r.witness_ratio_opt) : nullptr;
            row["flags"] = r.flags;
            j["rows"].push_back(std::move(row));
        }
        write_or_print(j.dump(2), out_path);
    } else {
        std::cerr << "bounds: unknown format '" << format << "'\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak-type estimates for Riesz potentials: verification suites, "
                 "potential evaluation, bound tables"};
    app.set_version_flag("--version", RIESZWEAK_VERSION);
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::vector<int> v_n;
    std::vector<double> v_s;
    std::vector<std::string> v_suites;
    std::string v_out;
    double v_tol_scale = 1.0;
    int v_jobs = 0;
    bool v_fast = false;
    verify->add_option("--n", v_n, "dimension (repeatable, zipped with --s)")->required();
    verify->add_option("--s", v_s, "order (repeatable, zipped with --n)")->required();
    verify->add_option("--suite", v_suites, "suite subset: thm11 thm12 cor1 thm13 appendix");
    verify->add_option("--out", v_out, "report JSON path (stdout when omitted)");
    verify->add_option("--tol-scale", v_tol_scale, "multiply every tolerance");
    verify->add_option("--jobs", v_jobs, "parallel suite execution");
    verify->add_flag("--fast", v_fast, "coarser envelopes (smoke runs)");

    // potential
    auto* potential = app.add_subcommand("potential", "evaluate I_s f and M_s f on a profile");
    std::string p_profile, p_radii, p_out;
    int p_n = 3;
    double p_s = 1.0;
    potential->add_option("--profile", p_profile, "profile JSON file")->required();
    potential->add_option("--n", p_n, "dimension")->required();
    potential->add_option("--s", p_s, "order")->required();
    potential->add_option("--radii", p_radii, "comma-separated radii (empty: header only)");
    potential->add_option("--out", p_out, "CSV path (stdout when omitted)");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "tabulate two-sided constant estimates");
    int b_n = 3, b_steps = 25, b_jobs = 0;
    double b_smin = 1e-4, b_smax = 0.24;
    std::string b_format = "csv", b_out, b_tau_table;
    bool b_witness = false;
    bounds->add_option("--n", b_n, "dimension")->required();
    bounds->add_option("--s-min", b_smin, "smallest order")->required();
    bounds->add_option("--s-max", b_smax, "largest order")->required();
    bounds->add_option("--steps", b_steps, "log-spaced steps");
    bounds->add_option("--format", b_format, "csv or json");
    bounds->add_option("--out", b_out, "output path (stdout when omitted)");
    bounds->add_flag("--witness", b_witness, "measure witness-ratio columns (slow)");
    bounds->add_option("--jobs", b_jobs, "row-parallel execution");
    bounds->add_option("--tau-table", b_tau_table,
                       "also write the tau comparison CSV to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed())
            return run_verify(v_n, v_s, v_suites, v_out, v_tol_scale, v_jobs, v_fast);
        if (potential->parsed())
            return run_potential(p_profile, p_n, p_s, p_radii, p_out);
        if (bounds->parsed())
            return run_bounds(b_n, b_smin, b_smax, b_steps, b_format, b_out, b_witness, b_jobs,
                              b_tau_table);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

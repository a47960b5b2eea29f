#pragma once

#include "riesz/constants.hpp"
#include "riesz/parallel.hpp"
#include "riesz/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace riesz::verify {

struct Options {
    double tol_scale = 1.0;      // multiplies every tolerance
    std::uint64_t seed = 0;      // randomized sample points
    par::Mode mode = par::Mode::openmp;
    bool fast = false;           // coarser envelopes (used by unit tests)
};

// Suite names accepted by the CLI: thm11, thm12, cor1, thm13, appendix.
std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

// Runs one suite at one (n, s); ids are prefixed with the suite name and
// parameters so reports over several parameter sets stay unique.
std::vector<CheckRecord> run_suite(const std::string& suite, const Params& p,
                                   const Options& opt = {});

// grand-norm identity checks (shared between thm11 and the acceptance suite)
std::vector<CheckRecord> identity_checks(const Params& p, const Options& opt,
                                         const std::string& prefix);

// sharpness checks for the extremal family (thm12 core)
std::vector<CheckRecord> sharpness_checks(const Params& p, const Options& opt,
                                          const std::string& prefix);

// stereographic machinery checks
std::vector<CheckRecord> projection_checks(const Params& p, const Options& opt,
                                           const std::string& prefix);

// maximal-function equality checks (cor1 core)
std::vector<CheckRecord> maximal_equality_checks(const Params& p, const Options& opt,
                                                 const std::string& prefix);

// two-sided bound chain (thm13 core)
std::vector<CheckRecord> bound_chain_checks(const Params& p, const Options& opt,
                                            const std::string& prefix);

// heat-semigroup checks (appendix core)
std::vector<CheckRecord> heat_checks(const Params& p, const Options& opt,
                                     const std::string& prefix);

} // namespace riesz::verify

#ifndef LAXCOV_SUITES_HPP
#define LAXCOV_SUITES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "laxcov/field.hpp"
#include "laxcov/point_matrix.hpp"
#include "laxcov/report.hpp"

namespace laxcov {

// Named tolerance overrides; every check looks its bound up here first and
// falls back to the built-in default.
using Tolerances = std::map<std::string, double>;
double tol_of(const Tolerances& t, const std::string& name, double fallback);

// The four verification suites and their aggregate. Each builds its own
// deterministic generator from the seed, so equal seeds give byte-equal
// reports.
Report run_verify_dt(std::uint64_t seed, const Tolerances& tols);
Report run_verify_bq(std::uint64_t seed, const Tolerances& tols);
Report run_verify_zs(std::uint64_t seed, const Tolerances& tols);
Report run_verify_bdt(std::uint64_t seed, const Tolerances& tols);
Report run_verify_all(std::uint64_t seed, const Tolerances& tols);

// Data emission for the plotting subcommands; each returns the full artifact
// text so the caller controls file handling.

// One-soliton dressed potential sampled on g. Columns: x, t, w. peak_out
// receives the grid maximum of w.
std::string soliton_csv(double k, double a2, double a1, double alpha, const GridSpec& g,
                        double& peak_out);

// Dressing chain of the given depth (1..3): per-level residual norms and the
// sampled potential of the next level.
std::string chain_json(int depth, const GridSpec& g);

// Top trajectory. Columns: y, re/im of every entry of u, then the trace-power
// drifts |tr u^k - tr u0^k| for k = 1..dim.
std::string euler_csv(int dim, double y_end, double h, std::uint64_t seed);

struct BdtCliConfig {
    int dim = 3;
    std::vector<Complex> h_poly{{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};  // X^2
    Complex lambda{0.7, 0.0};
    Complex mu{1.3, 0.0};
    Complex nu{2.1, 0.0};
    double t_end = 5.0;
    double h_step = 1e-3;
    std::uint64_t seed = 0;
};

// Dressing-flow residual time series. Columns: t, spectral-relation residuals
// for the three solutions, projector idempotence, dressed spectral residual,
// pairing drift. Asserted summary checks are appended to rep.
std::string bdt_csv(const BdtCliConfig& cfg, const Tolerances& tols, Report& rep);

} // namespace laxcov

#endif

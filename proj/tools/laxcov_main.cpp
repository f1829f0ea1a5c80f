// laxcov: build, dress, and verify covariant operator pairs from the command
// line. Subcommands either run a verification suite (exit 0 iff every check
// passes) or emit data artifacts for external plotting.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "laxcov/errors.hpp"
#include "laxcov/field.hpp"
#include "laxcov/report.hpp"
#include "laxcov/suites.hpp"

namespace {

using laxcov::Complex;
using laxcov::GridSpec;
using laxcov::Report;
using laxcov::Tolerances;
using laxcov::UsageError;

struct RunConfig {
    std::string command;
    std::uint64_t seed = 0;
    Tolerances tolerances;
    GridSpec grid{-10.0, 10.0, 201, 0.0, 1.0, 5};
    std::string out_path;  // empty: no artifact file
    std::string format;    // empty: the command's native format

    // per-command parameters
    double k = 2.0, a2 = 1.0, a1 = 0.0, alpha = -0.75;          // soliton
    int depth = 3;                                              // chain
    int dim = 3;                                                // euler, bdt
    double y_end = 10.0, h = 1e-3;                              // euler
    laxcov::BdtCliConfig bdt;                                   // bdt
};

// Flag-side values are tracked separately so that an explicitly passed flag
// overrides the config file while an untouched one keeps the file's value.
struct FlagSide {
    std::optional<std::uint64_t> seed;
    std::vector<std::string> tol_kv;
    std::optional<double> x_min, x_max, t_min, t_max;
    std::optional<int> n_x, n_t;
    std::optional<std::string> out_path, format;
    std::optional<double> k, a2, a1, alpha;
    std::optional<int> depth, dim;
    std::optional<double> y_end, h;
    std::optional<std::string> h_poly;
    std::optional<double> lambda, mu, nu, t_end, h_step;
};

double require_number(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number()) throw UsageError("config: " + where + " must be a number");
    return v.get<double>();
}

int require_count(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number_integer()) throw UsageError("config: " + where + " must be an integer");
    return v.get<int>();
}

Complex number_or_pair(const nlohmann::json& v, const std::string& where) {
    if (v.is_number()) return Complex{v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex{v[0].get<double>(), v[1].get<double>()};
    throw UsageError("config: " + where + " must be a number or [re, im]");
}

void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw UsageError("config: unknown key \"" + it.key() + "\" in " + where);
    }
}

// Merges the file onto rc; returns true when the file supplied grid bounds
// (the caller keeps command-specific grid defaults otherwise). A command
// already fixed by an explicit subcommand is not overridden.
bool apply_config_file(RunConfig& rc, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw UsageError("config: top level must be an object");
    reject_unknown(doc, {"command", "seed", "tolerances", "grid", "output", "soliton", "chain",
                         "euler", "bdt"},
                   "top level");

    if (doc.contains("command")) {
        if (!doc["command"].is_string()) throw UsageError("config: command must be a string");
        if (rc.command.empty()) rc.command = doc["command"].get<std::string>();
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0)
            throw UsageError("config: seed must be a non-negative integer");
        rc.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("tolerances")) {
        const auto& t = doc["tolerances"];
        if (!t.is_object()) throw UsageError("config: tolerances must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            double v = require_number(it.value(), "tolerances." + it.key());
            if (!(v > 0.0))
                throw UsageError("config: tolerances." + it.key() + " must be positive");
            rc.tolerances[it.key()] = v;
        }
    }
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        if (!g.is_object()) throw UsageError("config: grid must be an object");
        reject_unknown(g, {"x_min", "x_max", "n_x", "t_min", "t_max", "n_t"}, "grid");
        if (g.contains("x_min")) rc.grid.x_min = require_number(g["x_min"], "grid.x_min");
        if (g.contains("x_max")) rc.grid.x_max = require_number(g["x_max"], "grid.x_max");
        if (g.contains("n_x")) rc.grid.n_x = require_count(g["n_x"], "grid.n_x");
        if (g.contains("t_min")) rc.grid.t_min = require_number(g["t_min"], "grid.t_min");
        if (g.contains("t_max")) rc.grid.t_max = require_number(g["t_max"], "grid.t_max");
        if (g.contains("n_t")) rc.grid.n_t = require_count(g["n_t"], "grid.n_t");
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        if (!o.is_object()) throw UsageError("config: output must be an object");
        reject_unknown(o, {"path", "format"}, "output");
        if (o.contains("path")) {
            if (!o["path"].is_string()) throw UsageError("config: output.path must be a string");
            rc.out_path = o["path"].get<std::string>();
        }
        if (o.contains("format")) {
            if (!o["format"].is_string())
                throw UsageError("config: output.format must be a string");
            rc.format = o["format"].get<std::string>();
        }
    }
    if (doc.contains("soliton")) {
        const auto& s = doc["soliton"];
        if (!s.is_object()) throw UsageError("config: soliton must be an object");
        reject_unknown(s, {"k", "a2", "a1", "alpha"}, "soliton");
        if (s.contains("k")) rc.k = require_number(s["k"], "soliton.k");
        if (s.contains("a2")) rc.a2 = require_number(s["a2"], "soliton.a2");
        if (s.contains("a1")) rc.a1 = require_number(s["a1"], "soliton.a1");
        if (s.contains("alpha")) rc.alpha = require_number(s["alpha"], "soliton.alpha");
    }
    if (doc.contains("chain")) {
        const auto& c = doc["chain"];
        if (!c.is_object()) throw UsageError("config: chain must be an object");
        reject_unknown(c, {"depth"}, "chain");
        if (c.contains("depth")) rc.depth = require_count(c["depth"], "chain.depth");
    }
    if (doc.contains("euler")) {
        const auto& e = doc["euler"];
        if (!e.is_object()) throw UsageError("config: euler must be an object");
        reject_unknown(e, {"dim", "y_end", "h"}, "euler");
        if (e.contains("dim")) rc.dim = require_count(e["dim"], "euler.dim");
        if (e.contains("y_end")) rc.y_end = require_number(e["y_end"], "euler.y_end");
        if (e.contains("h")) rc.h = require_number(e["h"], "euler.h");
    }
    if (doc.contains("bdt")) {
        const auto& b = doc["bdt"];
        if (!b.is_object()) throw UsageError("config: bdt must be an object");
        reject_unknown(b, {"dim", "h_poly", "lambda", "mu", "nu", "t_end", "h_step"}, "bdt");
        if (b.contains("dim")) rc.bdt.dim = require_count(b["dim"], "bdt.dim");
        if (b.contains("h_poly")) {
            if (!b["h_poly"].is_array() || b["h_poly"].empty())
                throw UsageError("config: bdt.h_poly must be a nonempty array");
            rc.bdt.h_poly.clear();
            int i = 0;
            for (const auto& c : b["h_poly"])
                rc.bdt.h_poly.push_back(number_or_pair(c, "bdt.h_poly[" + std::to_string(i++) + "]"));
        }
        if (b.contains("lambda")) rc.bdt.lambda = number_or_pair(b["lambda"], "bdt.lambda");
        if (b.contains("mu")) rc.bdt.mu = number_or_pair(b["mu"], "bdt.mu");
        if (b.contains("nu")) rc.bdt.nu = number_or_pair(b["nu"], "bdt.nu");
        if (b.contains("t_end")) rc.bdt.t_end = require_number(b["t_end"], "bdt.t_end");
        if (b.contains("h_step")) rc.bdt.h_step = require_number(b["h_step"], "bdt.h_step");
    }
    return doc.contains("grid");
}

std::vector<Complex> parse_poly(const std::string& text) {
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(Complex{v, 0.0});
        } catch (const std::exception&) {
            throw UsageError("--h-poly: cannot parse coefficient \"" + item + "\"");
        }
    }
    if (out.empty()) throw UsageError("--h-poly: no coefficients given");
    return out;
}

void apply_flags(RunConfig& rc, const FlagSide& f) {
    if (f.seed) rc.seed = *f.seed;
    for (const std::string& kv : f.tol_kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--tol expects name=value, got \"" + kv + "\"");
        double v = 0.0;
        try {
            std::size_t pos = 0;
            v = std::stod(kv.substr(eq + 1), &pos);
            if (pos != kv.size() - eq - 1) throw std::invalid_argument(kv);
        } catch (const std::exception&) {
            throw UsageError("--tol: cannot parse value in \"" + kv + "\"");
        }
        if (!(v > 0.0)) throw UsageError("--tol: tolerance must be positive in \"" + kv + "\"");
        rc.tolerances[kv.substr(0, eq)] = v;
    }
    if (f.x_min) rc.grid.x_min = *f.x_min;
    if (f.x_max) rc.grid.x_max = *f.x_max;
    if (f.n_x) rc.grid.n_x = *f.n_x;
    if (f.t_min) rc.grid.t_min = *f.t_min;
    if (f.t_max) rc.grid.t_max = *f.t_max;
    if (f.n_t) rc.grid.n_t = *f.n_t;
    if (f.out_path) rc.out_path = *f.out_path;
    if (f.format) rc.format = *f.format;
    if (f.k) rc.k = *f.k;
    if (f.a2) rc.a2 = *f.a2;
    if (f.a1) rc.a1 = *f.a1;
    if (f.alpha) rc.alpha = *f.alpha;
    if (f.depth) rc.depth = *f.depth;
    if (f.dim) {
        rc.dim = *f.dim;
        rc.bdt.dim = *f.dim;
    }
    if (f.y_end) rc.y_end = *f.y_end;
    if (f.h) rc.h = *f.h;
    if (f.h_poly) rc.bdt.h_poly = parse_poly(*f.h_poly);
    if (f.lambda) rc.bdt.lambda = Complex{*f.lambda, 0.0};
    if (f.mu) rc.bdt.mu = Complex{*f.mu, 0.0};
    if (f.nu) rc.bdt.nu = Complex{*f.nu, 0.0};
    if (f.t_end) rc.bdt.t_end = *f.t_end;
    if (f.h_step) rc.bdt.h_step = *f.h_step;
}

void validate(const RunConfig& rc) {
    static const char* commands[] = {"soliton", "chain",  "verify-dt", "verify-bq",
                                     "verify-zs", "euler", "bdt",       "verify-all"};
    bool known = false;
    for (const char* c : commands)
        if (rc.command == c) known = true;
    if (!known)
        throw UsageError(rc.command.empty() ? "no command given (see --help)"
                                            : "unknown command \"" + rc.command + "\"");
    if (rc.grid.n_x < 2 || rc.grid.n_t < 2) throw UsageError("grid counts must be at least 2");
    if (!(rc.grid.x_max > rc.grid.x_min) || !(rc.grid.t_max > rc.grid.t_min))
        throw UsageError("grid bounds must be increasing");
    if (!rc.format.empty() && rc.format != "csv" && rc.format != "json")
        throw UsageError("format must be csv or json");

    auto require_format = [&](const char* native) {
        if (!rc.format.empty() && rc.format != native)
            throw UsageError(rc.command + " emits " + native + " only");
    };
    if (rc.command == "soliton" || rc.command == "euler" || rc.command == "bdt")
        require_format("csv");
    if (rc.command == "chain") require_format("json");

    if (rc.command == "chain" && (rc.depth < 1 || rc.depth > 3))
        throw UsageError("chain: depth must be between 1 and 3");
    if (rc.command == "euler") {
        if (rc.dim < 2) throw UsageError("euler: dim must be at least 2");
        if (!(rc.h > 0.0) || !(rc.y_end > 0.0))
            throw UsageError("euler: h and y-end must be positive");
    }
    if (rc.command == "bdt") {
        if (rc.bdt.dim < 2) throw UsageError("bdt: dim must be at least 2");
        if (!(rc.bdt.h_step > 0.0) || !(rc.bdt.t_end > 0.0))
            throw UsageError("bdt: h-step and t-end must be positive");
        if (rc.bdt.h_poly.empty()) throw UsageError("bdt: h-poly must be nonempty");
    }
}

void write_artifact(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file " + path);
    out << text;
    if (!out) throw UsageError("failed while writing " + path);
}

// Runs a verification suite: text report to stdout, JSON (or csv) report to
// the artifact path when given.
int finish_report(const RunConfig& rc, const Report& rep) {
    std::cout << rep.to_text();
    if (!rc.out_path.empty()) {
        if (rc.format == "csv") {
            auto checks = rep.checks();
            std::sort(checks.begin(), checks.end(),
                      [](const laxcov::Check& a, const laxcov::Check& b) { return a.name < b.name; });
            std::ostringstream os;
            os << std::setprecision(17) << "name,residual,tolerance,pass\n";
            for (const auto& c : checks)
                os << c.name << "," << c.residual << "," << c.tolerance << ","
                   << (c.pass ? 1 : 0) << "\n";
            write_artifact(rc.out_path, os.str());
        } else {
            write_artifact(rc.out_path, rep.to_json().dump(2) + "\n");
        }
    }
    return rep.pass() ? 0 : 1;
}

int run(const RunConfig& rc) {
    if (rc.command == "verify-dt") return finish_report(rc, laxcov::run_verify_dt(rc.seed, rc.tolerances));
    if (rc.command == "verify-bq") return finish_report(rc, laxcov::run_verify_bq(rc.seed, rc.tolerances));
    if (rc.command == "verify-zs") return finish_report(rc, laxcov::run_verify_zs(rc.seed, rc.tolerances));
    if (rc.command == "verify-all") return finish_report(rc, laxcov::run_verify_all(rc.seed, rc.tolerances));

    if (rc.command == "soliton") {
        double peak = 0.0;
        std::string csv = laxcov::soliton_csv(rc.k, rc.a2, rc.a1, rc.alpha, rc.grid, peak);
        if (!rc.out_path.empty())
            write_artifact(rc.out_path, csv);
        else
            std::cout << csv;
        std::cerr << "soliton: peak w = " << peak << " (expected " << rc.a2 * rc.k * rc.k / 2.0
                  << ")\n";
        return 0;
    }
    if (rc.command == "chain") {
        std::string text = laxcov::chain_json(rc.depth, rc.grid);
        if (!rc.out_path.empty())
            write_artifact(rc.out_path, text);
        else
            std::cout << text;
        return 0;
    }
    // euler
    std::string csv = laxcov::euler_csv(rc.dim, rc.y_end, rc.h, rc.seed);
    if (!rc.out_path.empty())
        write_artifact(rc.out_path, csv);
    else
        std::cout << csv;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "laxcov: Darboux dressing and covariance checks for operator pairs.\n"
        "Verification subcommands print a check-by-check report and exit 0 only\n"
        "if every check passes; data subcommands emit CSV/JSON artifacts.\n\n"
        "Artifact columns:\n"
        "  soliton  csv: x, t, w            (dressed potential on the grid)\n"
        "  euler    csv: y, re_u_i_j, im_u_i_j ..., drift_tr_k\n"
        "                (trajectory entries and trace-power drifts)\n"
        "  bdt      csv: t, res_chi, res_phi, res_psi, projector_residual,\n"
        "                dressed_spectral, pairing_drift\n"
        "  chain    json: per-level spectral residuals and sampled potentials\n"
        "  verify-* json report (or csv: name, residual, tolerance, pass)\n\n"
        "Exit codes: 0 pass, 1 check failure, 2 usage error, 3 numerical degeneracy."};
    app.require_subcommand(0, 1);

    RunConfig rc;
    FlagSide fs;
    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON config file; may supply the command itself. When a subcommand is "
                   "given, its flags override the file");

    auto add_shared = [&](CLI::App* sub) {
        sub->add_option("--seed", fs.seed, "RNG seed (default 0)");
        if (sub != &app)
            sub->add_option("--config", config_path, "JSON config file; flags override it");
        sub->add_option("--out", fs.out_path, "artifact output path (default: stdout for data)");
        sub->add_option("--format", fs.format, "artifact format: csv or json");
        sub->add_option("--tol", fs.tol_kv, "tolerance override name=value (repeatable)")
            ->take_all();
        sub->add_option("--x-min", fs.x_min, "grid lower x bound");
        sub->add_option("--x-max", fs.x_max, "grid upper x bound");
        sub->add_option("--n-x", fs.n_x, "grid x sample count (>= 2)");
        sub->add_option("--t-min", fs.t_min, "grid lower t bound");
        sub->add_option("--t-max", fs.t_max, "grid upper t bound");
        sub->add_option("--n-t", fs.n_t, "grid t sample count (>= 2)");
    };
    add_shared(&app);  // config-driven runs take the shared flags at top level

    CLI::App* soliton = app.add_subcommand(
        "soliton", "Emit the dressed one-soliton potential as CSV (columns x, t, w)");
    soliton->add_option("--k", fs.k, "seed exponent (peak w is a2 k^2 / 2)");
    soliton->add_option("--a2", fs.a2, "second-order evolution coefficient");
    soliton->add_option("--a1", fs.a1, "first-order evolution coefficient");
    soliton->add_option("--alpha", fs.alpha, "linear spectral coefficient offset");
    add_shared(soliton);

    CLI::App* chain = app.add_subcommand(
        "chain", "Emit a dressing chain as JSON: per-level residual norms and potentials");
    chain->add_option("--depth", fs.depth, "chain depth, 1 to 3");
    add_shared(chain);

    CLI::App* euler = app.add_subcommand(
        "euler", "Integrate the matrix top and emit the trajectory as CSV");
    euler->set_help_flag("--help", "print help");  // frees -h for the step size
    euler->add_option("--dim", fs.dim, "matrix size (>= 2)");
    euler->add_option("--y-end", fs.y_end, "integration endpoint");
    euler->add_option("--h", fs.h, "integration step");
    add_shared(euler);

    CLI::App* bdt = app.add_subcommand(
        "bdt", "Run the projector-dressing flow and emit residual time series as CSV");
    bdt->add_option("--dim", fs.dim, "matrix size (>= 2)");
    bdt->add_option("--h-poly", fs.h_poly,
                    "comma-separated evolution polynomial coefficients c0,c1,... "
                    "(lowest first)");
    bdt->add_option("--lambda", fs.lambda, "spectral parameter of the dressed solution");
    bdt->add_option("--mu", fs.mu, "spectral parameter of the direct solution");
    bdt->add_option("--nu", fs.nu, "spectral parameter of the conjugate solution");
    bdt->add_option("--t-end", fs.t_end, "flow endpoint");
    bdt->add_option("--h-step", fs.h_step, "flow integration step");
    add_shared(bdt);

    for (const char* name : {"verify-dt", "verify-bq", "verify-zs", "verify-all"}) {
        std::string what = std::string(name) == "verify-all"
                               ? "Run every verification suite and aggregate the report"
                               : std::string("Run the ") + (name + 7) + " verification suite";
        add_shared(app.add_subcommand(name, what));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!app.get_subcommands().empty()) rc.command = app.get_subcommands().front()->get_name();
        bool grid_given = fs.x_min || fs.x_max || fs.n_x || fs.t_min || fs.t_max || fs.n_t;
        if (!config_path.empty()) grid_given |= apply_config_file(rc, config_path);
        if (rc.command == "chain" && !grid_given) rc.grid = GridSpec{-14.0, -6.0, 41, 0.0, 1.0, 9};
        apply_flags(rc, fs);
        validate(rc);
        if (rc.command == "bdt") {
            rc.bdt.seed = rc.seed;
            Report rep("bdt", rc.seed);
            std::string csv = laxcov::bdt_csv(rc.bdt, rc.tolerances, rep);
            if (!rc.out_path.empty())
                write_artifact(rc.out_path, csv);
            else
                std::cout << csv;
            std::cerr << rep.to_text();
            return rep.pass() ? 0 : 1;
        }
        return run(rc);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const laxcov::DegeneracyError& e) {
        std::cerr << "degeneracy: " << e.what() << "\n";
        return 3;
    } catch (const laxcov::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

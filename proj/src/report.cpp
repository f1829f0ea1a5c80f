#include "laxcov/report.hpp"

#include <algorithm>
#include <sstream>

namespace laxcov {

bool Report::require_le(const std::string& name, double residual, double tol) {
    bool ok = residual <= tol;
    checks_.push_back({name, residual, tol, ok});
    return ok;
}

bool Report::require_ge(const std::string& name, double residual, double bound) {
    bool ok = residual >= bound;
    checks_.push_back({name, residual, bound, ok});
    return ok;
}

void Report::diag(const std::string& name, double value) {
    diagnostics_.push_back({name, value});
}

void Report::absorb(const Report& other, const std::string& prefix) {
    for (const auto& c : other.checks_)
        checks_.push_back({prefix + "." + c.name, c.residual, c.tolerance, c.pass});
    for (const auto& d : other.diagnostics_)
        diagnostics_.push_back({prefix + "." + d.name, d.value});
}

bool Report::pass() const {
    for (const auto& c : checks_)
        if (!c.pass) return false;
    return true;
}

nlohmann::json Report::to_json() const {
    std::vector<Check> sorted = checks_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Check& a, const Check& b) { return a.name < b.name; });
    std::vector<Diagnostic> dsorted = diagnostics_;
    std::stable_sort(dsorted.begin(), dsorted.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.name < b.name; });
    nlohmann::json jchecks = nlohmann::json::array();
    for (const auto& c : sorted) {
        jchecks.push_back({{"name", c.name},
                           {"residual", c.residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
    }
    nlohmann::json jdiag = nlohmann::json::object();
    for (const auto& d : dsorted) jdiag[d.name] = d.value;
    return nlohmann::json{{"report_version", 1},
                          {"command", command_},
                          {"seed", seed_},
                          {"checks", jchecks},
                          {"diagnostics", jdiag},
                          {"pass", pass()}};
}

std::string Report::to_text() const {
    std::vector<Check> sorted = checks_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Check& a, const Check& b) { return a.name < b.name; });
    std::ostringstream os;
    os.precision(6);
    os << std::scientific;
    for (const auto& c : sorted) {
        os << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name << "  residual=" << c.residual
           << "  bound=" << c.tolerance << "\n";
    }
    if (!diagnostics_.empty()) {
        std::vector<Diagnostic> dsorted = diagnostics_;
        std::stable_sort(dsorted.begin(), dsorted.end(),
                         [](const Diagnostic& a, const Diagnostic& b) { return a.name < b.name; });
        os << "-- diagnostics --\n";
        for (const auto& d : dsorted) os << "       " << d.name << " = " << d.value << "\n";
    }
    os << (pass() ? "PASS" : "FAIL") << " (" << command_ << ", seed " << seed_ << ")\n";
    return os.str();
}

} // namespace laxcov

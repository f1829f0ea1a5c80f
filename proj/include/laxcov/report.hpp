#ifndef LAXCOV_REPORT_HPP
#define LAXCOV_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace laxcov {

// One named numerical check. "residual" is the measured value, "tolerance"
// the bound it was compared against; "pass" records the outcome of whichever
// comparison produced the check (upper bound for require_le, lower bound for
// require_ge).
struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// A reported value that is not gated: context numbers, gaps between rival
// formulations, measured orders. Never contributes to pass/fail.
struct Diagnostic {
    std::string name;
    double value = 0.0;
};

class Report {
public:
    explicit Report(std::string command, std::uint64_t seed)
        : command_(std::move(command)), seed_(seed) {}

    // residual <= tol passes.
    bool require_le(const std::string& name, double residual, double tol);
    // residual >= bound passes (negative controls). The bound is stored in
    // the tolerance field.
    bool require_ge(const std::string& name, double residual, double bound);
    void diag(const std::string& name, double value);

    // Merge another report's checks and diagnostics under "prefix.".
    void absorb(const Report& other, const std::string& prefix);

    bool pass() const;
    const std::vector<Check>& checks() const { return checks_; }
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

    // Stable serialization: checks sorted by name, no timestamps, no
    // wall-clock values; identical inputs yield identical bytes.
    nlohmann::json to_json() const;
    std::string to_text() const;

private:
    std::string command_;
    std::uint64_t seed_ = 0;
    std::vector<Check> checks_;
    std::vector<Diagnostic> diagnostics_;
};

} // namespace laxcov

#endif

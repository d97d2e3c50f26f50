#pragma once

#include <string>
#include <vector>
#include <map>
#include <utility>

namespace qgl {

// One named check with a pass flag, an optional human-readable detail line
// (filled in on failure with the offending values), and counters such as
// "coefficients_checked" that make coverage auditable.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    std::map<std::string, long> stats;
};

// Aggregated result of one verification command. to_json produces a stable,
// byte-reproducible rendering: keys appear in a fixed order and checks in
// insertion order.
class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    CheckResult& add(const std::string& name) {
        checks_.push_back(CheckResult{name, false, "", {}});
        return checks_.back();
    }
    void add(CheckResult r) { checks_.push_back(std::move(r)); }

    const std::vector<CheckResult>& checks() const { return checks_; }
    const std::string& command() const { return command_; }

    bool all_pass() const {
        for (const auto& c : checks_)
            if (!c.pass) return false;
        return true;
    }

    std::string to_json(int threads) const;
    std::string to_csv() const;
    // One line per check, suitable for a terminal.
    std::string pretty() const;

private:
    std::string command_;
    std::vector<CheckResult> checks_;
};

} // namespace qgl

#include "qgl/report.hpp"

#include <json.hpp>

#include <sstream>

namespace qgl {

std::string Report::to_json(int threads) const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["command"] = command_;
    j["threads"] = threads;
    j["all_pass"] = all_pass();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        if (!c.stats.empty()) {
            nlohmann::ordered_json js;
            for (const auto& [k, v] : c.stats) js[k] = v;
            jc["stats"] = js;
        }
        arr.push_back(std::move(jc));
    }
    j["checks"] = std::move(arr);
    return j.dump(2) + "\n";
}

static std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "command,check,pass,detail\n";
    for (const auto& c : checks_) {
        os << csv_escape(command_) << ',' << csv_escape(c.name) << ','
           << (c.pass ? "true" : "false") << ',' << csv_escape(c.detail) << '\n';
    }
    return os.str();
}

std::string Report::pretty() const {
    std::ostringstream os;
    for (const auto& c : checks_) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        for (const auto& [k, v] : c.stats) os << "  " << k << "=" << v;
        os << '\n';
    }
    os << (all_pass() ? "OK" : "FAILED") << ": " << command_ << '\n';
    return os.str();
}

} // namespace qgl

// Harness types: run configuration, check results and the JSON report.

#pragma once

#include <localeps/gauss.hpp>
#include <localeps/kgroup.hpp>
#include <localeps/lattice.hpp>
#include <localeps/residue.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace localeps {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kReportSchemaVersion = 1;

struct RunConfig {
    std::vector<long> p_values{3, 5};
    std::vector<long> m_values{1, 2, 3};
    std::vector<long> d_values{1, 2, 3, 4};
    std::optional<long> k4;   // all residues when absent
    long seed = 1;
    std::string suite = "all";
    std::string report_path;  // no report file when empty
    long coeff_bound = 6;
    long pd_limit = 35;
    long level_limit = 1200;
    long jobs = 1;
    std::string convention_path = "gauss_convention.json";

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["p"] = p_values;
        j["m"] = m_values;
        j["d"] = d_values;
        if (k4)
            j["k4"] = *k4;
        else
            j["k4"] = "all";
        j["seed"] = seed;
        j["suite"] = suite;
        j["coeff_bound"] = coeff_bound;
        j["pd_limit"] = pd_limit;
        j["level_limit"] = level_limit;
        return j;
    }
};

struct CheckResult {
    std::string check_id;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::string status = "fail"; // pass | fail | skipped
    nlohmann::ordered_json witness = nlohmann::ordered_json::object();
    long seed = 0;
    long elapsed_ms = 0;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["check_id"] = check_id;
        j["params"] = params;
        j["status"] = status;
        j["witness"] = witness;
        j["seed"] = seed;
        j["elapsed_ms"] = elapsed_ms;
        return j;
    }
};

inline nlohmann::ordered_json report_json(const RunConfig& cfg,
                                          const std::optional<GaussConvention>& conv,
                                          const std::vector<CheckResult>& results) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["config"] = cfg.to_json();
    if (conv) {
        nlohmann::ordered_json c;
        c["char_sign"] = conv->char_sign;
        c["exp_sign"] = conv->exp_sign;
        c["artin_dir"] = conv->artin_dir;
        j["gauss_convention"] = c;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) arr.push_back(r.to_json());
    j["results"] = arr;
    return j;
}

} // namespace localeps

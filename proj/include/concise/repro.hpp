#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace concise {

struct UnknownExample : std::runtime_error {
    explicit UnknownExample(const std::string& name)
        : std::runtime_error("unknown example: " + name) {}
};

struct ReproAssertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ReproReport {
    std::string name;
    std::vector<ReproAssertion> assertions;
    bool pass() const {
        for (const auto& a : assertions)
            if (!a.pass) return false;
        return true;
    }
    nlohmann::json to_json() const;
};

std::vector<std::string> repro_names();
ReproReport run_reproduction(const std::string& name);

} // namespace concise

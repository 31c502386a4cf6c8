#pragma once

#include <json.hpp>

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace homred::cli {

// Line-oriented "key: value" report, or a JSON object with the same content.
// Values are already formatted exactly (integers, a/b rationals, words).
class Report
{
public:
    explicit Report(std::string command) :
        command_(std::move(command)),
        start_(std::chrono::steady_clock::now())
    {
    }

    void input(const std::string & path, const std::string & digest) { inputs_.emplace_back(path, digest); }
    void set(const std::string & key, const std::string & value) { fields_.emplace_back(key, value); }
    void verdict(bool pass) { verdict_ = pass; }
    auto passed() const -> bool { return verdict_.value_or(true); }

    void print(std::ostream & out, bool json, bool timing) const
    {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
        if (json) {
            nlohmann::ordered_json j;
            j["command"] = command_;
            j["inputs"] = nlohmann::ordered_json::array();
            for (const auto & [path, digest] : inputs_)
                j["inputs"].push_back({{"path", path}, {"sha256", digest}});
            j["outputs"] = nlohmann::ordered_json::object();
            for (const auto & [key, value] : fields_)
                j["outputs"][key] = value;
            if (verdict_)
                j["verdict"] = *verdict_ ? "pass" : "fail";
            if (timing)
                j["duration_ms"] = elapsed.count();
            out << j.dump(2) << '\n';
            return;
        }
        out << "command: " << command_ << '\n';
        for (const auto & [path, digest] : inputs_)
            out << "input: " << path << " sha256:" << digest << '\n';
        for (const auto & [key, value] : fields_)
            out << key << ": " << value << '\n';
        if (verdict_)
            out << "verdict: " << (*verdict_ ? "pass" : "fail") << '\n';
        if (timing)
            out << "duration_ms: " << elapsed.count() << '\n';
    }

private:
    std::string command_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<std::pair<std::string, std::string>> fields_;
    std::optional<bool> verdict_;
};

}

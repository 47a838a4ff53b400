#pragma once

#include <istream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace chaylab {

// CLI11 config reader for JSON files. Nested objects address subcommands:
// {"simulate": {"gkca": 11.5}} sets `simulate --gkca 11.5`. The JSON header of
// any output file is itself a valid config; its bookkeeping keys are skipped.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        throw CLI::ConfigError("writing JSON configuration is not supported");
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

private:
    static void collect(const nlohmann::json& j, const std::vector<std::string>& parents,
                        std::vector<CLI::ConfigItem>& out) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (parents.empty() && (it.key() == "artifact" || it.key() == "version" || it.key() == "params"))
                continue;
            if (it->is_object()) {
                auto next = parents;
                next.push_back(it.key());
                collect(*it, next, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = it.key();
            if (it->is_array()) {
                for (const auto& v : *it) item.inputs.push_back(scalar(v));
            } else if (!it->is_null()) {
                item.inputs.push_back(scalar(*it));
            } else {
                continue;
            }
            out.push_back(std::move(item));
        }
    }

    static std::string scalar(const nlohmann::json& v) {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();  // numbers keep full precision, booleans become true/false
    }
};

} // namespace chaylab

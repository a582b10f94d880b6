// Copyright 2026 The edrstream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "run_config.hpp"

#include <set>

#include <json.hpp>

#include "edr/error.hpp"
#include "edr/io/netpbm.hpp"

namespace edr::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) throw ParseError("unknown key '" + key + "' in " + where, 0);
    }
}

double number(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ParseError(std::string("'") + key + "' in " + where + " must be a number", 0);
    return v.get<double>();
}

template <typename Enum>
Enum choice(const json& obj, const char* key, Enum fallback, std::initializer_list<std::pair<const char*, Enum>> opts) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ParseError(std::string("'") + key + "' must be a string", 0);
    const auto s = v.get<std::string>();
    std::string names;
    for (const auto& [name, value] : opts) {
        if (s == name) return value;
        names += names.empty() ? name : std::string(", ") + name;
    }
    throw ParseError(std::string("'") + key + "' must be one of " + names + ", got '" + s + "'", 0);
}

}  // namespace

EdrConfig parse_run_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON config: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw ParseError("config must be a JSON object", 0);
    reject_unknown(doc, {"timescales", "return_mode", "threshold_mode", "color_mode", "epsilon"}, "config");

    EdrConfig config;
    if (!doc.contains("timescales") || !doc.at("timescales").is_array()) {
        throw ParseError("config needs a 'timescales' array", 0);
    }
    std::size_t index = 0;
    for (const auto& ts : doc.at("timescales")) {
        const std::string where = "timescales[" + std::to_string(index++) + "]";
        if (!ts.is_object()) throw ParseError(where + " must be an object", 0);
        reject_unknown(ts, {"tau_half", "alpha", "beta", "nu_on", "nu_off"}, where);
        const bool has_tau = ts.contains("tau_half");
        const bool has_alpha = ts.contains("alpha");
        if (has_tau == has_alpha) throw ParseError(where + " needs exactly one of 'tau_half' or 'alpha'", 0);
        const double beta = number(ts, "beta", 1.0, where);
        const double nu_on = number(ts, "nu_on", 0.05, where);
        const double nu_off = number(ts, "nu_off", 0.05, where);
        config.timescales.push_back(has_tau
                                        ? TimescaleParams::from_half_life(number(ts, "tau_half", 0, where), beta,
                                                                          nu_on, nu_off)
                                        : TimescaleParams::from_alpha(number(ts, "alpha", 0, where), beta, nu_on,
                                                                      nu_off));
    }
    config.return_mode =
        choice(doc, "return_mode", ReturnMode::Ratio, {{"ratio", ReturnMode::Ratio}, {"log", ReturnMode::Log}});
    config.threshold_mode = choice(doc, "threshold_mode", ThresholdMode::Soft,
                                   {{"soft", ThresholdMode::Soft}, {"hard", ThresholdMode::Hard}});
    config.color_mode = choice(doc, "color_mode", ColorMode::Luma,
                               {{"luma", ColorMode::Luma}, {"per_channel", ColorMode::PerChannel}});
    config.epsilon = static_cast<float>(number(doc, "epsilon", kDefaultEpsilon, "config"));
    config.validate();
    return config;
}

EdrConfig load_run_config(const std::filesystem::path& path) {
    const auto bytes = io::read_file_bytes(path);
    return parse_run_config(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

EdrConfig preset_config(std::string_view name) {
    if (name == "fast-slow") return EdrConfig::fast_slow();
    if (name == "fast") return EdrConfig::fast();
    throw DomainError("unknown preset '" + std::string(name) + "' (expected fast-slow or fast)");
}

std::string run_config_to_json(const EdrConfig& config) {
    json doc;
    doc["timescales"] = json::array();
    for (const auto& ts : config.timescales) {
        doc["timescales"].push_back(
            {{"alpha", ts.alpha()}, {"beta", ts.beta()}, {"nu_on", ts.nu_on()}, {"nu_off", ts.nu_off()}});
    }
    doc["return_mode"] = std::string(to_string(config.return_mode));
    doc["threshold_mode"] = std::string(to_string(config.threshold_mode));
    doc["color_mode"] = std::string(to_string(config.color_mode));
    doc["epsilon"] = config.epsilon;
    return doc.dump(2);
}

}  // namespace edr::cli

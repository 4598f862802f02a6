#include "framedvfs/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace framedvfs {

using nlohmann::ordered_json;

SystemConfig parse_config_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }

    auto require = [&](const char* key) -> const ordered_json& {
        if (!j.contains(key)) throw ConfigError(std::string("missing field \"") + key + "\"");
        return j.at(key);
    };

    SystemConfig cfg;
    try {
        cfg.frame_length = require("D").get<double>();
        cfg.m = require("m").get<int>();
        for (const auto& f : require("freqs")) cfg.freqs.freqs.push_back({f.get<double>()});
        cfg.grid_step = j.contains("grid_step") ? j.at("grid_step").get<double>()
                                                : cfg.frame_length / 1000.0;
        if (j.contains("allow_exact_fit")) cfg.allow_exact_fit = j.at("allow_exact_fit").get<bool>();

        int idx = 1;
        for (const auto& tj : require("tasks")) {
            Task t;
            t.index = idx++;
            if (!tj.contains("wcec")) throw ConfigError("task missing field \"wcec\"");
            if (!tj.contains("dist")) throw ConfigError("task missing field \"dist\"");
            t.wcec = tj.at("wcec").get<Cycles>();
            for (const auto& point : tj.at("dist")) {
                if (!point.is_array() || point.size() != 2)
                    throw ConfigError("dist entries must be [cycles, probability] pairs");
                t.dist.support.push_back({point.at(0).get<Cycles>(), point.at(1).get<double>()});
            }
            cfg.tasks.push_back(std::move(t));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

SystemConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

std::string config_to_json(const SystemConfig& cfg) {
    ordered_json j;
    j["D"] = cfg.frame_length;
    j["m"] = cfg.m;
    j["freqs"] = ordered_json::array();
    for (const auto& f : cfg.freqs.freqs) j["freqs"].push_back(f.value);
    j["grid_step"] = cfg.grid_step;
    j["tasks"] = ordered_json::array();
    for (const auto& t : cfg.tasks) {
        ordered_json tj;
        tj["wcec"] = t.wcec;
        tj["dist"] = ordered_json::array();
        for (const auto& p : t.dist.support) tj["dist"].push_back({p.cycles, p.probability});
        j["tasks"].push_back(std::move(tj));
    }
    return j.dump(2) + "\n";
}

void save_config_file(const SystemConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << config_to_json(cfg);
}

}  // namespace framedvfs

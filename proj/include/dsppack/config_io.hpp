#pragma once

// JSON configuration documents. Multiplication packing:
//   {"a_widths":[4,4], "w_widths":[4,4], "delta":3,
//    "a_offsets":[0,11], "w_offsets":[0,22],      // optional, else derived
//    "a_signed":false, "w_signed":true,
//    "target":"dsp48e2"|"ideal", "output_width":48}
// Addition packing:
//   {"lane_widths":[9,9,9,9,9], "guard_bits":0, "total_width":48}

#include <fstream>
#include <string>

#include <json.hpp>

#include "dsppack/addpack.hpp"
#include "dsppack/packing.hpp"
#include "dsppack/presets.hpp"

namespace dsppack {

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

inline PackingConfig packing_config_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    PackingConfig cfg;
    cfg.a_widths = j.at("a_widths").get<std::vector<int>>();
    cfg.w_widths = j.at("w_widths").get<std::vector<int>>();
    cfg.delta = j.value("delta", 0);
    cfg.a_signed = j.value("a_signed", false);
    cfg.w_signed = j.value("w_signed", true);
    cfg.output_width = j.value("output_width", 48);
    cfg.name = j.value("name", std::string{});
    std::string target = j.value("target", std::string{"dsp48e2"});
    if (target == "dsp48e2")
      cfg.target = Target::dsp48e2;
    else if (target == "ideal")
      cfg.target = Target::ideal;
    else
      throw ConfigError("unknown target '" + target + "' (dsp48e2|ideal)");
    if (j.contains("a_offsets") || j.contains("w_offsets")) {
      if (!(j.contains("a_offsets") && j.contains("w_offsets")))
        throw ConfigError("give both a_offsets and w_offsets, or neither");
      cfg.a_offsets = j.at("a_offsets").get<std::vector<int>>();
      cfg.w_offsets = j.at("w_offsets").get<std::vector<int>>();
    } else {
      PackingConfig derived = derive_layout(cfg.a_widths, cfg.w_widths, cfg.delta);
      cfg.a_offsets = derived.a_offsets;
      cfg.w_offsets = derived.w_offsets;
    }
    check_config_shape(cfg);
    return cfg;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad packing config: ") + e.what());
  }
}

inline nlohmann::ordered_json to_json(const PackingConfig& cfg) {
  nlohmann::ordered_json j;
  if (!cfg.name.empty()) j["name"] = cfg.name;
  j["a_widths"] = cfg.a_widths;
  j["w_widths"] = cfg.w_widths;
  j["delta"] = cfg.delta;
  j["a_offsets"] = cfg.a_offsets;
  j["w_offsets"] = cfg.w_offsets;
  j["a_signed"] = cfg.a_signed;
  j["w_signed"] = cfg.w_signed;
  j["target"] = to_string(cfg.target);
  j["output_width"] = cfg.output_width;
  return j;
}

inline AdditionPackConfig addition_config_from_json(const nlohmann::json& j) {
  try {
    AdditionPackConfig cfg;
    cfg.lane_widths = j.at("lane_widths").get<std::vector<int>>();
    cfg.guard_bits = j.value("guard_bits", 0);
    cfg.total_width = j.value("total_width", 48);
    return cfg;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad addition config: ") + e.what());
  }
}

inline nlohmann::ordered_json to_json(const AdditionPackConfig& cfg) {
  nlohmann::ordered_json j;
  j["lane_widths"] = cfg.lane_widths;
  j["guard_bits"] = cfg.guard_bits;
  j["total_width"] = cfg.total_width;
  return j;
}

// A preset name or a path to a JSON file.
inline PackingConfig load_packing_config(const std::string& name_or_path) {
  if (auto p = preset(name_or_path)) return *p;
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("cannot open config '" + name_or_path + "' (not a preset or file)");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return packing_config_from_json(j);
}

}  // namespace dsppack

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace regional {

inline constexpr const char* kVersion = "0.1.0";

/// Round to 15 significant digits through the shortest round-trip text form,
/// so identical configs serialize to byte-identical JSON.
inline double sig15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return std::strtod(buf, nullptr);
}

inline nlohmann::json round_doubles(const nlohmann::json& j) {
  if (j.is_number_float()) return sig15(j.get<double>());
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_doubles(*it);
    return out;
  }
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : j) out.push_back(round_doubles(v));
    return out;
  }
  return j;
}

/// Wrap a payload with the resolved config and version, rounded for
/// reproducibility.
inline nlohmann::json make_document(const nlohmann::json& config,
                                    const nlohmann::json& payload) {
  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["config"] = round_doubles(config);
  for (auto it = payload.begin(); it != payload.end(); ++it)
    doc[it.key()] = round_doubles(*it);
  return doc;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace regional

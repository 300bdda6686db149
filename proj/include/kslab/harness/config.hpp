#pragma once

// Suite configuration: named spaces plus a test matrix of entries.
//
//   {
//     "spaces":  { "<id>": { "family": "...", ...params } },
//     "entries": [ { "id": "...", "space": "<id>", "op": "...", "field": "...",
//                    "samples": 20, "seed": 1, "tolerance": 1e-8,
//                    "params": { ... }, "expected": { "value": -4, "provenance": "..." } } ]
//   }

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace kslab::harness {

using Json = nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Expected {
  double value = 0.0;
  std::string provenance;
};

struct TestMatrixEntry {
  std::string id;
  std::string space;  // empty for space-free operations
  std::string op;
  std::string field;
  int samples = 1;
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
  Json params = Json::object();
  std::optional<Expected> expected;

  double param(const std::string& key, double fallback) const {
    return params.contains(key) ? params.at(key).get<double>() : fallback;
  }
  int param_int(const std::string& key, int fallback) const {
    return params.contains(key) ? params.at(key).get<int>() : fallback;
  }
};

struct SuiteConfig {
  Json spaces = Json::object();
  std::vector<TestMatrixEntry> entries;
};

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

inline TestMatrixEntry parse_entry(const Json& j, std::size_t index, const Json& spaces) {
  const std::string where = "entries[" + std::to_string(index) + "]";
  require(j.is_object(), where + ": must be an object");
  for (const auto& [key, _] : j.items())
    require(key == "id" || key == "space" || key == "op" || key == "field" || key == "samples" || key == "seed" ||
                key == "tolerance" || key == "params" || key == "expected",
            where + ": unknown key '" + key + "'");
  TestMatrixEntry e;
  require(j.contains("op") && j.at("op").is_string(), where + ": 'op' must be a string");
  e.op = j.at("op").get<std::string>();
  e.id = j.value("id", e.op + "#" + std::to_string(index));
  if (j.contains("space")) {
    require(j.at("space").is_string(), where + ": 'space' must be a string");
    e.space = j.at("space").get<std::string>();
    require(spaces.contains(e.space), where + ": unknown space '" + e.space + "'");
  }
  if (j.contains("field")) {
    require(j.at("field").is_string(), where + ": 'field' must be a string");
    e.field = j.at("field").get<std::string>();
  }
  if (j.contains("samples")) {
    require(j.at("samples").is_number_integer() && j.at("samples").get<int>() >= 1, where + ": 'samples' must be a positive integer");
    e.samples = j.at("samples").get<int>();
  }
  if (j.contains("seed")) {
    require(j.at("seed").is_number_unsigned() || (j.at("seed").is_number_integer() && j.at("seed").get<long long>() >= 0),
            where + ": 'seed' must be a nonnegative integer");
    e.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("tolerance")) {
    require(j.at("tolerance").is_number() && j.at("tolerance").get<double>() > 0.0, where + ": 'tolerance' must be positive");
    e.tolerance = j.at("tolerance").get<double>();
  }
  if (j.contains("params")) {
    require(j.at("params").is_object(), where + ": 'params' must be an object");
    e.params = j.at("params");
  }
  if (j.contains("expected")) {
    const Json& x = j.at("expected");
    require(x.is_object() && x.contains("value") && x.at("value").is_number(), where + ": 'expected.value' must be a number");
    e.expected = Expected{x.at("value").get<double>(), x.value("provenance", std::string())};
  }
  return e;
}

}  // namespace detail

inline SuiteConfig parse_config(const Json& j) {
  detail::require(j.is_object(), "config: top level must be an object");
  for (const auto& [key, _] : j.items())
    detail::require(key == "spaces" || key == "entries" || key == "description", "config: unknown key '" + key + "'");
  SuiteConfig cfg;
  if (j.contains("spaces")) {
    detail::require(j.at("spaces").is_object(), "config: 'spaces' must be an object");
    for (const auto& [id, spec] : j.at("spaces").items())
      detail::require(spec.is_object() && spec.contains("family") && spec.at("family").is_string(),
                      "config: space '" + id + "' needs a string 'family'");
    cfg.spaces = j.at("spaces");
  }
  if (j.contains("entries")) {
    detail::require(j.at("entries").is_array(), "config: 'entries' must be an array");
    std::size_t i = 0;
    for (const auto& e : j.at("entries")) cfg.entries.push_back(detail::parse_entry(e, i++, cfg.spaces));
  }
  return cfg;
}

inline SuiteConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config(j);
}

inline SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace kslab::harness

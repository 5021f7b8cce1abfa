#pragma once

// Batch configuration: a single JSON document.
//
//   {
//     "orbifolds": [ <orbifold object> | {"catalog": "<bundled id>", "id": "<optional rename>"} ],
//     "levels": {"mode": "prime-range", "norm_min": 500, "norm_max": 15000}
//            or {"mode": "prime-power", "p": 2, "root": 0, "n_max": 6},
//     "output": {"csv": "out.csv", "plot": "tr.svg", "hist": "hist.svg",
//                "log_x": false, "bins": 20, "jobs": 1, "snf_limit": 5000000}
//   }
//
// "root" is optional in prime-power mode; without it every simple root of
// the field polynomial mod p gets its own tower.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "torsion_tower/catalog.hpp"
#include "torsion_tower/orbifold_spec.hpp"

namespace torsion_tower {

struct PrimeRange {
  std::uint64_t norm_min = 2;
  std::uint64_t norm_max = 2;
};

struct PrimePower {
  std::uint64_t p = 2;
  std::optional<std::uint64_t> root;
  unsigned n_max = 1;
};

using LevelPlan = std::variant<PrimeRange, PrimePower>;

struct OutputOptions {
  std::string csv;
  std::string plot;
  std::string hist;
  bool log_x = false;
  std::size_t bins = 20;
  unsigned jobs = 0;  // 0: not set
  std::size_t snf_limit = 5'000'000;
};

struct Config {
  std::vector<OrbifoldSpec> specs;
  LevelPlan plan = PrimeRange{};
  OutputOptions output;
};

namespace detail {

inline std::uint64_t require_uint(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_number_integer() || obj.at(key).get<long long>() < 0)
    invalid(where + "." + key, "missing or not a nonnegative integer");
  return obj.at(key).get<std::uint64_t>();
}

inline LevelPlan parse_levels(const json& j) {
  const std::string where = "levels";
  if (!j.is_object() || !j.contains("mode") || !j.at("mode").is_string()) invalid(where, "expected an object with a \"mode\"");
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "prime-range") {
    PrimeRange r{require_uint(j, "norm_min", where), require_uint(j, "norm_max", where)};
    if (r.norm_max < 2 || r.norm_min > r.norm_max) invalid(where, "empty norm range");
    return r;
  }
  if (mode == "prime-power") {
    PrimePower pp;
    pp.p = require_uint(j, "p", where);
    if (!is_prime(pp.p)) invalid(where + ".p", std::to_string(pp.p) + " is not prime");
    if (j.contains("root") && !j.at("root").is_null()) pp.root = require_uint(j, "root", where);
    const std::uint64_t n_max = require_uint(j, "n_max", where);
    if (n_max < 1 || n_max > 64) invalid(where + ".n_max", "must be in 1..64");
    pp.n_max = static_cast<unsigned>(n_max);
    return pp;
  }
  invalid(where + ".mode", "unknown mode \"" + mode + "\" (expected prime-range or prime-power)");
}

inline OutputOptions parse_output(const json& j) {
  OutputOptions out;
  if (!j.is_object()) invalid("output", "expected an object");
  auto str = [&](const char* key, std::string& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_string()) invalid(std::string("output.") + key, "expected a string");
    dst = j.at(key).get<std::string>();
  };
  str("csv", out.csv);
  str("plot", out.plot);
  str("hist", out.hist);
  if (j.contains("log_x")) {
    if (!j.at("log_x").is_boolean()) invalid("output.log_x", "expected a boolean");
    out.log_x = j.at("log_x").get<bool>();
  }
  if (j.contains("bins")) out.bins = require_uint(j, "bins", "output");
  if (out.bins == 0) invalid("output.bins", "must be positive");
  if (j.contains("jobs")) out.jobs = static_cast<unsigned>(require_uint(j, "jobs", "output"));
  if (j.contains("snf_limit")) out.snf_limit = require_uint(j, "snf_limit", "output");
  return out;
}

inline std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline Config parse_config(std::string_view text, const std::string& source = "<config>") {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = detail::line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) detail::invalid("<root>", "expected a JSON object");

  Config cfg;
  if (!j.contains("orbifolds") || !j.at("orbifolds").is_array() || j.at("orbifolds").empty())
    detail::invalid("orbifolds", "expected a nonempty array");
  const json& orbs = j.at("orbifolds");
  for (std::size_t i = 0; i < orbs.size(); ++i) {
    const std::string where = "orbifolds[" + std::to_string(i) + "]";
    const json& o = orbs[i];
    if (o.is_object() && o.contains("catalog")) {
      if (!o.at("catalog").is_string()) detail::invalid(where + ".catalog", "expected a string");
      const OrbifoldSpec* spec = find_catalog_spec(o.at("catalog").get<std::string>());
      if (!spec) detail::invalid(where + ".catalog", "unknown catalog id \"" + o.at("catalog").get<std::string>() + "\"");
      OrbifoldSpec copy = *spec;
      if (o.contains("id")) {
        if (!o.at("id").is_string() || o.at("id").get<std::string>().empty()) detail::invalid(where + ".id", "expected a string");
        copy.id = o.at("id").get<std::string>();
      }
      cfg.specs.push_back(std::move(copy));
    } else {
      cfg.specs.push_back(parse_orbifold(o, where));
    }
  }
  for (std::size_t a = 0; a < cfg.specs.size(); ++a)
    for (std::size_t b = a + 1; b < cfg.specs.size(); ++b)
      if (cfg.specs[a].id == cfg.specs[b].id)
        detail::invalid("orbifolds[" + std::to_string(b) + "].id", "duplicate id \"" + cfg.specs[b].id + "\"");

  if (!j.contains("levels")) detail::invalid("levels", "missing");
  cfg.plan = detail::parse_levels(j.at("levels"));
  if (j.contains("output")) cfg.output = detail::parse_output(j.at("output"));
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace torsion_tower

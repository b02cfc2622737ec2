#include "ccot/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ccot {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ConfigError(origin + ": " + what);
}

// Accepts an integer or {"num": N, "den": D} with D defaulting to 1.
Rational parse_rational_value(const json& value, const std::string& origin,
                              const std::string& field) {
  if (value.is_number_integer()) {
    return make_rational(value.get<long long>());
  }
  if (value.is_object()) {
    for (const auto& [key, ignored] : value.items()) {
      if (key != "num" && key != "den") {
        fail(origin, field + ": unknown rational key '" + key + "'");
      }
    }
    if (!value.contains("num") || !value["num"].is_number_integer()) {
      fail(origin, field + ": rational needs an integer 'num'");
    }
    long long den = 1;
    if (value.contains("den")) {
      if (!value["den"].is_number_integer()) {
        fail(origin, field + ": 'den' must be an integer");
      }
      den = value["den"].get<long long>();
    }
    try {
      return make_rational(value["num"].get<long long>(), den);
    } catch (const std::invalid_argument&) {
      fail(origin, field + ": zero denominator");
    }
  }
  fail(origin, field + ": expected an integer or {num, den}");
}

// Validates the name and appends it unless already present.
void append_audit(std::vector<std::string>& audits, const std::string& name,
                  const std::string& origin) {
  const auto& known = known_audits();
  if (std::find(known.begin(), known.end(), name) == known.end()) {
    fail(origin, "audits: unknown audit '" + name + "'");
  }
  if (std::find(audits.begin(), audits.end(), name) == audits.end()) {
    audits.push_back(name);
  }
}

std::vector<Rational> parse_rational_list(const json& value,
                                          const std::string& origin,
                                          const std::string& field) {
  if (!value.is_array() || value.empty()) {
    fail(origin, field + ": expected a non-empty list");
  }
  std::vector<Rational> list;
  list.reserve(value.size());
  for (size_t k = 0; k < value.size(); ++k) {
    list.push_back(parse_rational_value(
        value[k], origin, field + "[" + std::to_string(k) + "]"));
  }
  return list;
}

}  // namespace

const std::vector<std::string>& known_audits() {
  static const std::vector<std::string> names = {
      "vertex", "exchange", "complement", "transpose", "negate", "conjugate"};
  return names;
}

ExperimentConfig parse_config(const std::string& text,
                              const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& error) {
    fail(origin, error.what());
  }
  if (!root.is_object()) fail(origin, "top level must be an object");

  static const std::set<std::string> allowed = {
      "dimension", "d",    "n",      "domain", "cost",
      "hbar",      "marginals", "mode",   "audits", "out_dir"};
  for (const auto& [key, ignored] : root.items()) {
    if (!allowed.count(key)) fail(origin, "unknown field '" + key + "'");
  }
  if (root.contains("dimension") && root.contains("d")) {
    fail(origin, "give either 'dimension' or 'd', not both");
  }

  ExperimentConfig config;

  const char* dim_key = root.contains("d") ? "d" : "dimension";
  if (root.contains(dim_key)) {
    if (!root[dim_key].is_number_integer()) {
      fail(origin, std::string(dim_key) + ": expected an integer");
    }
    config.dimension = root[dim_key].get<int>();
  }
  if (config.dimension != 1 && config.dimension != 2) {
    fail(origin, "dimension must be 1 or 2");
  }

  if (root.contains("n")) {
    if (!root["n"].is_number_integer() || root["n"].get<long long>() < 1) {
      fail(origin, "n: expected a positive integer");
    }
    config.n = root["n"].get<int>();
  }

  if (root.contains("domain")) {
    const std::string domain = root["domain"].is_string()
                                   ? root["domain"].get<std::string>()
                                   : std::string();
    if (domain == "centered") {
      config.domain = Domain::CENTERED;
    } else if (domain == "unit") {
      config.domain = Domain::UNIT;
    } else {
      fail(origin, "domain: expected \"centered\" or \"unit\"");
    }
  }

  if (root.contains("cost")) {
    const std::string cost =
        root["cost"].is_string() ? root["cost"].get<std::string>() : std::string();
    if (cost == "neg_dot") {
      config.cost = CostKind::NEG_DOT;
    } else if (cost == "sq_dist") {
      config.cost = CostKind::SQ_DIST;
    } else {
      fail(origin, "cost: expected \"neg_dot\" or \"sq_dist\"");
    }
  }

  if (root.contains("hbar")) {
    const json& hbar = root["hbar"];
    if (hbar.is_array()) {
      config.densities = parse_rational_list(hbar, origin, "hbar");
    } else {
      config.densities = {parse_rational_value(hbar, origin, "hbar")};
    }
  }
  for (const auto& density : config.densities) {
    if (density < 0) fail(origin, "hbar: density must be nonnegative");
  }

  if (root.contains("marginals") && root["marginals"] != json("uniform")) {
    const json& marginals = root["marginals"];
    if (!marginals.is_object() || !marginals.contains("f") ||
        !marginals.contains("g")) {
      fail(origin, "marginals: expected \"uniform\" or {f: [...], g: [...]}");
    }
    for (const auto& [key, ignored] : marginals.items()) {
      if (key != "f" && key != "g") {
        fail(origin, "marginals: unknown key '" + key + "'");
      }
    }
    config.f_weights = parse_rational_list(marginals["f"], origin, "marginals.f");
    config.g_weights = parse_rational_list(marginals["g"], origin, "marginals.g");

    size_t cells = 1;
    for (int axis = 0; axis < config.dimension; ++axis) cells *= config.n;
    if (config.f_weights.size() != cells || config.g_weights.size() != cells) {
      fail(origin, "marginals: weight lists must hold one entry per cell");
    }
    Rational f_total = 0, g_total = 0;
    for (const auto& w : config.f_weights) {
      if (w < 0) fail(origin, "marginals.f: weights must be nonnegative");
      f_total += w;
    }
    for (const auto& w : config.g_weights) {
      if (w < 0) fail(origin, "marginals.g: weights must be nonnegative");
      g_total += w;
    }
    if (f_total != g_total) {
      fail(origin, "marginals: f and g must carry equal total mass");
    }
  }

  if (root.contains("mode")) {
    const std::string mode =
        root["mode"].is_string() ? root["mode"].get<std::string>() : std::string();
    if (mode == "exact") {
      config.mode = ArithmeticMode::EXACT;
    } else if (mode == "float64") {
      config.mode = ArithmeticMode::FLOAT64;
    } else {
      fail(origin, "mode: expected \"exact\" or \"float64\"");
    }
  }

  if (root.contains("audits")) {
    if (!root["audits"].is_array()) fail(origin, "audits: expected a list");
    config.audits.clear();
    for (const auto& entry : root["audits"]) {
      if (!entry.is_string()) fail(origin, "audits: entries must be strings");
      append_audit(config.audits, entry.get<std::string>(), origin);
    }
  }

  if (root.contains("out_dir")) {
    if (!root["out_dir"].is_string()) fail(origin, "out_dir: expected a string");
    config.out_dir = root["out_dir"].get<std::string>();
  }

  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

std::vector<std::string> parse_audit_list(const std::string& text) {
  std::vector<std::string> audits;
  std::string name;
  std::istringstream stream(text);
  while (std::getline(stream, name, ',')) {
    if (!name.empty()) append_audit(audits, name, "--audits");
  }
  if (audits.empty()) {
    throw ConfigError("--audits: expected a comma-separated list");
  }
  return audits;
}

}  // namespace ccot

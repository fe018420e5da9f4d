#include "fractherm/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fractherm {

ConfigError::ConfigError(std::string key_, const std::string& message)
    : std::runtime_error("config error: key '" + key_ + "': " + message),
      key(std::move(key_)) {}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "alpha",      "lambda",     "T",          "K", "N", "conductivity",
      "u0",         "source",     "picard_tol", "picard_max_iter",
      "nonlocal_alpha0_factor",   "linearization"};
  return keys;
}

double parse_double(const ConfigMap& map, const std::string& key) {
  const std::string& raw = map.at(key);
  size_t idx = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &idx);
  } catch (const std::exception&) {
    throw ConfigError(key, "'" + raw + "' is not a number");
  }
  if (idx != raw.size()) throw ConfigError(key, "trailing characters in '" + raw + "'");
  if (!std::isfinite(v)) throw ConfigError(key, "value must be finite");
  return v;
}

int parse_int(const ConfigMap& map, const std::string& key) {
  const double v = parse_double(map, key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) throw ConfigError(key, "expected an integer");
  return i;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  if (raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "false" || raw == "0" || raw == "no") return false;
  throw ConfigError(key, "'" + raw + "' is not a boolean");
}

void require(const ConfigMap& map, const std::string& key) {
  if (!map.count(key)) throw ConfigError(key, "missing required key");
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap map;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    if (map.count(key)) throw ConfigError(key, "duplicate key");
    map[key] = value;
  }
  for (const auto& [key, value] : map)
    if (!known_keys().count(key)) throw ConfigError(key, "unknown key");
  return map;
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream body;
  body << in.rdbuf();
  return parse_config_text(body.str());
}

std::optional<ManufacturedSolution> config_manufactured_solution(const ConfigMap& map) {
  auto it = map.find("source");
  if (it == map.end() || it->second == "none") return std::nullopt;
  const std::string& name = it->second;
  if (name.rfind("mms_", 0) != 0)
    throw ConfigError("source", "expected 'none' or an mms_* preset, got '" + name + "'");
  try {
    return mms_preset(name.substr(4));
  } catch (const std::invalid_argument&) {
    throw ConfigError("source", "unknown preset '" + name + "'");
  }
}

ProblemConfig make_problem_config(const ConfigMap& map) {
  for (const char* key : {"alpha", "lambda", "T", "K", "N", "conductivity", "u0"})
    require(map, key);

  ProblemConfig cfg;
  try {
    cfg.alpha = FractionalOrder(parse_double(map, "alpha"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("alpha", e.what());
  }
  cfg.lambda = parse_double(map, "lambda");
  if (cfg.lambda < 0.0) throw ConfigError("lambda", "must be >= 0");
  try {
    cfg.grid = TimeGrid(parse_double(map, "T"), parse_int(map, "K"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("T/K", e.what());
  }
  cfg.degree = parse_int(map, "N");
  if (cfg.degree < 2) throw ConfigError("N", "spectral degree must be >= 2");

  cfg.conductivity = map.at("conductivity");
  try {
    find_conductivity(cfg.conductivity);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("conductivity", e.what());
  }

  const std::string& u0 = map.at("u0");
  if (u0 == "sinpi")
    cfg.initial = sf_sinpi();
  else if (u0 == "phi0")
    cfg.initial = sf_phi0();
  else if (u0 == "bump")
    cfg.initial = sf_bump();
  else
    throw ConfigError("u0", "expected sinpi | phi0 | bump, got '" + u0 + "'");

  if (auto mms = config_manufactured_solution(map)) {
    cfg.source = manufactured_source(*mms, find_conductivity(cfg.conductivity),
                                     cfg.lambda, cfg.alpha.value());
  }

  if (map.count("picard_tol")) {
    cfg.picard.tol = parse_double(map, "picard_tol");
    if (!(cfg.picard.tol > 0.0)) throw ConfigError("picard_tol", "must be > 0");
  }
  if (map.count("picard_max_iter")) {
    cfg.picard.max_iter = parse_int(map, "picard_max_iter");
    if (cfg.picard.max_iter < 1) throw ConfigError("picard_max_iter", "must be >= 1");
  }
  if (map.count("nonlocal_alpha0_factor"))
    cfg.nonlocal_alpha0_factor =
        parse_bool("nonlocal_alpha0_factor", map.at("nonlocal_alpha0_factor"));
  if (map.count("linearization")) {
    const std::string& lin = map.at("linearization");
    if (lin == "picard")
      cfg.linearization = Linearization::picard;
    else if (lin == "lagged")
      cfg.linearization = Linearization::lagged;
    else
      throw ConfigError("linearization", "expected picard | lagged, got '" + lin + "'");
  }
  return cfg;
}

ConfigMap resolved_config(const ConfigMap& map) {
  ConfigMap out = map;
  if (!out.count("source")) out["source"] = "none";
  if (!out.count("picard_tol")) out["picard_tol"] = "1e-12";
  if (!out.count("picard_max_iter")) out["picard_max_iter"] = "50";
  if (!out.count("nonlocal_alpha0_factor")) out["nonlocal_alpha0_factor"] = "true";
  if (!out.count("linearization")) out["linearization"] = "picard";
  return out;
}

}  // namespace fractherm

#include "carma/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "carma/error.hpp"
#include "carma/toml_lite.hpp"

namespace carma {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ConfigError(std::string("config: missing numeric '") + key + "'");
  return j.at(key).get<double>();
}

LadderLevel level_from_json(const json& j) {
  if (j.is_string()) {
    for (const auto& level : standard_ladder())
      if (level.name == j.get<std::string>()) return level;
    throw ConfigError("config: unknown ladder level '" + j.get<std::string>() + "'");
  }
  if (!j.is_object()) throw ConfigError("config: ladder entries must be names or tables");
  LadderLevel level;
  level.horizon = require_number(j, "T");
  level.h_max = require_number(j, "h_max");
  level.name = get_or<std::string>(j, "name", "");
  return level;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

CarmaSpec ModelConfig::spec(std::optional<double> sigma2_override) const {
  const double s2 = sigma2_override ? *sigma2_override : sigma2.value_or(1.0);
  if (p || q) {
    if (!p || !q) throw ConfigError("model: give both p and q or neither");
    return CarmaSpec::with_orders(*p, *q, a, b, s2);
  }
  return CarmaSpec(a, b, s2);
}

CarmaSpec ModelConfig::spec_for(const DriverSpec& driver) const {
  if (std::holds_alternative<ZeroDriver>(driver)) return spec();
  const double rate = variance_rate(driver);
  if (sigma2 && std::abs(*sigma2 - rate) > 1e-12 * rate) {
    std::ostringstream os;
    os << "model: sigma2 = " << *sigma2 << " disagrees with the " << driver_tag(driver)
       << " driver variance " << rate << " (omit sigma2 to derive it)";
    throw ConfigError(os.str());
  }
  return spec(rate);
}

std::vector<LadderLevel> standard_ladder() {
  return {{"t10", 10.0, 0.1}, {"t50", 50.0, 0.05}, {"t100", 100.0, 0.01}};
}

std::string RunConfig::directory_label() const {
  if (!label.empty()) return label;
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : to_json(*this).dump()) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return "cfg-" + hex64(h).substr(0, 10);
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.label = name;
  if (name == "paper-car1") {
    c.model.a = {2.0};
    c.model.b = {1.0};
    c.model.p = 1;
    c.model.q = 0;
  } else if (name == "paper-carma21") {
    c.model.a = {1.0, 2.0};
    c.model.b = {1.0, 1.0};
    c.model.p = 2;
    c.model.q = 1;
  } else {
    throw ConfigError("unknown preset '" + name + "' (paper-car1, paper-carma21)");
  }
  c.model.sigma2.reset();
  c.drivers = {Brownian{1.0}, VarianceGamma{1.0, 4.0}, TwoSidedPoisson{10.0, 1.0}};
  c.ladder = standard_ladder();
  c.mesh = 0.001;
  c.paths = 2000;
  c.frequencies = {0.0, 0.1, 1.0, 10.0};
  return c;
}

json driver_to_json(const DriverSpec& driver) {
  json params = std::visit(
      Overloaded{
          [](const Brownian& d) { return json{{"volatility", d.volatility}}; },
          [](const VarianceGamma& d) {
            return json{{"shape_rate", d.shape_rate}, {"scale", d.scale}};
          },
          [](const TwoSidedPoisson& d) {
            return json{{"rate_each", d.rate_each}, {"jump_size", d.jump_size}};
          },
          [](const ZeroDriver&) { return json::object(); },
      },
      driver);
  return json{{"type", driver_tag(driver)}, {"params", params}};
}

DriverSpec driver_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw ConfigError("driver: expected {type, params}");
  const std::string type = j.at("type").get<std::string>();
  const json params = j.value("params", json::object());
  DriverSpec d;
  if (type == "brownian") {
    d = Brownian{get_or(params, "volatility", 1.0)};
  } else if (type == "vg") {
    d = VarianceGamma{get_or(params, "shape_rate", 1.0), get_or(params, "scale", 4.0)};
  } else if (type == "poisson2") {
    d = TwoSidedPoisson{get_or(params, "rate_each", 10.0), get_or(params, "jump_size", 1.0)};
  } else if (type == "zero") {
    d = ZeroDriver{};
  } else {
    throw ConfigError("driver: unknown type '" + type + "'");
  }
  validate(d);
  return d;
}

json spec_to_json(const CarmaSpec& spec) {
  return json{{"p", spec.p()},
              {"q", spec.q()},
              {"a", spec.a()},
              {"b", spec.b()},
              {"sigma2", spec.sigma2()}};
}

CarmaSpec spec_from_json(const json& j) {
  ModelConfig m;
  m.a = get_or<std::vector<double>>(j, "a", {});
  m.b = get_or<std::vector<double>>(j, "b", {});
  if (j.contains("p")) m.p = j.at("p").get<int>();
  if (j.contains("q")) m.q = j.at("q").get<int>();
  m.sigma2 = require_number(j, "sigma2");
  return m.spec();
}

json to_json(const RunConfig& c) {
  json model{{"a", c.model.a}, {"b", c.model.b}};
  if (c.model.p) model["p"] = *c.model.p;
  if (c.model.q) model["q"] = *c.model.q;
  if (c.model.sigma2) model["sigma2"] = *c.model.sigma2;

  json drivers = json::array();
  for (const auto& d : c.drivers) drivers.push_back(driver_to_json(d));
  json ladder = json::array();
  for (const auto& l : c.ladder)
    ladder.push_back(json{{"name", l.name}, {"T", l.horizon}, {"h_max", l.h_max}});

  json doc;
  if (!c.label.empty()) doc["label"] = c.label;
  doc["model"] = model;
  doc["drivers"] = drivers;
  doc["grid"] = json{{"mesh", c.mesh}, {"ladder", ladder}};
  doc["mc"] = json{{"paths", c.paths},
                   {"frequencies", c.frequencies},
                   {"alpha", c.alpha},
                   {"freeze_grid", c.freeze_grid},
                   {"seed", c.seed}};
  doc["spectral"] =
      json{{"omega_min", c.omega_min}, {"omega_max", c.omega_max}, {"step", c.omega_step}};
  doc["simulate"] = json{{"paths", c.simulate_paths}, {"states", c.write_states}};
  doc["convergence"] = json{{"T", c.convergence_horizon},
                            {"h_ladder", c.h_ladder},
                            {"paths", c.convergence_paths}};
  doc["io"] = json{{"out", c.out_dir},
                   {"format", c.format == OutputFormat::Json ? "json" : "csv"},
                   {"threads", c.threads}};
  return doc;
}

RunConfig run_config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config: top level must be a table/object");
  try {
    c.label = get_or(j, "label", c.label);
    if (j.contains("model")) {
      const json& m = j.at("model");
      ModelConfig model;
      model.a = get_or<std::vector<double>>(m, "a", c.model.a);
      model.b = get_or<std::vector<double>>(m, "b", c.model.b);
      if (m.contains("p")) model.p = m.at("p").get<int>();
      if (m.contains("q")) model.q = m.at("q").get<int>();
      if (m.contains("sigma2")) model.sigma2 = m.at("sigma2").get<double>();
      c.model = model;
    }
    if (j.contains("driver") && j.contains("drivers"))
      throw ConfigError("config: give either 'driver' or 'drivers'");
    if (j.contains("driver")) c.drivers = {driver_from_json(j.at("driver"))};
    if (j.contains("drivers")) {
      c.drivers.clear();
      for (const auto& d : j.at("drivers")) c.drivers.push_back(driver_from_json(d));
      if (c.drivers.empty()) throw ConfigError("config: empty driver list");
    }
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      c.mesh = get_or(g, "mesh", c.mesh);
      if (g.contains("ladder") && (g.contains("T") || g.contains("h_max")))
        throw ConfigError("config: give either grid.ladder or grid.T/h_max");
      if (g.contains("ladder")) {
        c.ladder.clear();
        for (const auto& l : g.at("ladder")) c.ladder.push_back(level_from_json(l));
      } else if (g.contains("T") || g.contains("h_max")) {
        c.ladder = {{"", require_number(g, "T"), require_number(g, "h_max")}};
      }
    }
    if (j.contains("mc")) {
      const json& m = j.at("mc");
      c.paths = get_or(m, "paths", c.paths);
      c.frequencies = get_or(m, "frequencies", c.frequencies);
      c.alpha = get_or(m, "alpha", c.alpha);
      c.freeze_grid = get_or(m, "freeze_grid", c.freeze_grid);
      c.seed = get_or(m, "seed", c.seed);
    }
    if (j.contains("spectral")) {
      const json& s = j.at("spectral");
      c.omega_min = get_or(s, "omega_min", c.omega_min);
      c.omega_max = get_or(s, "omega_max", c.omega_max);
      c.omega_step = get_or(s, "step", c.omega_step);
    }
    if (j.contains("simulate")) {
      const json& s = j.at("simulate");
      c.simulate_paths = get_or(s, "paths", c.simulate_paths);
      c.write_states = get_or(s, "states", c.write_states);
    }
    if (j.contains("convergence")) {
      const json& s = j.at("convergence");
      c.convergence_horizon = get_or(s, "T", c.convergence_horizon);
      c.h_ladder = get_or(s, "h_ladder", c.h_ladder);
      c.convergence_paths = get_or(s, "paths", c.convergence_paths);
    }
    if (j.contains("io")) {
      const json& s = j.at("io");
      c.out_dir = get_or(s, "out", c.out_dir);
      const std::string fmt = get_or<std::string>(s, "format", c.format == OutputFormat::Json ? "json" : "csv");
      if (fmt == "csv") c.format = OutputFormat::Csv;
      else if (fmt == "json") c.format = OutputFormat::Json;
      else throw ConfigError("config: format must be csv or json");
      c.threads = get_or(s, "threads", c.threads);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.alpha <= 0.0 || c.alpha >= 1.0) throw ConfigError("config: alpha must be in (0, 1)");
  if (c.ladder.empty()) throw ConfigError("config: empty ladder");
  return c;
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  json doc;
  if (first != std::string::npos && text[first] == '{') {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  } else {
    doc = toml_lite::parse(text);
  }
  return run_config_from_json(doc, std::move(base));
}

std::string dump_run_config(const RunConfig& config, OutputFormat format) {
  const json doc = to_json(config);
  return format == OutputFormat::Json ? doc.dump(2) + "\n" : toml_lite::dump(doc);
}

}  // namespace carma

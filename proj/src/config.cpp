#include <qgauge/config.hpp>

#include <fstream>

#include <qgauge/expr.hpp>

namespace qgauge {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& field,
                              const std::string& reason) {
  fail(ErrorKind::ConfigError, field + ": " + reason);
}

double require_number(const json& j, const std::string& field) {
  if (!j.is_number()) config_fail(field, "expected a number");
  return j.get<double>();
}

std::vector<int> require_int_list(const json& j, const std::string& field) {
  if (!j.is_array()) config_fail(field, "expected an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) config_fail(field, "expected integers");
    out.push_back(v.get<int>());
  }
  return out;
}

void apply_threshold_overrides(const json& j, Thresholds& thr) {
  const auto take = [&](const char* key, double& slot) {
    if (j.contains(key)) slot = require_number(j.at(key),
                                               std::string("thresholds.") + key);
  };
  take("quasi_balanced", thr.quasi_balanced);
  take("pseudoconvex", thr.pseudoconvex);
  take("homogeneity", thr.homogeneity);
  take("transversality_margin", thr.transversality_margin);
  take("psh", thr.psh);
  take("defining_residual_factor", thr.defining_residual_factor);
  take("defining_grad_floor", thr.defining_grad_floor);
  take("hopf_min", thr.hopf_min);
  for (const auto& [key, value] : j.items()) {
    (void)value;
    static const char* known[] = {
        "quasi_balanced", "pseudoconvex",   "homogeneity",
        "transversality_margin", "psh",     "defining_residual_factor",
        "defining_grad_floor",   "hopf_min"};
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) config_fail("thresholds." + key, "unknown threshold");
  }
}

}  // namespace

DomainConfig parse_config(const json& j) {
  if (!j.is_object()) config_fail("<root>", "config must be a JSON object");
  DomainConfig cfg;

  if (!j.contains("name") || !j.at("name").is_string())
    config_fail("name", "required string");
  cfg.name = j.at("name").get<std::string>();

  if (!j.contains("dimension") || !j.at("dimension").is_number_integer())
    config_fail("dimension", "required integer");
  cfg.dimension = j.at("dimension").get<int>();
  if (cfg.dimension < 1) config_fail("dimension", "must be >= 1");

  if (!j.contains("weights"))
    config_fail("weights", "required array of integers");
  cfg.weights = require_int_list(j.at("weights"), "weights");
  try {
    validate_weights(cfg.weights);
  } catch (const Error& e) {
    config_fail("weights", e.what());
  }
  if (static_cast<int>(cfg.weights.size()) != cfg.dimension)
    config_fail("weights", "length must equal dimension");

  const bool has_expr = j.contains("defining_function");
  const bool has_builtin = j.contains("builtin");
  if (has_expr && has_builtin)
    config_fail("defining_function",
                "mutually exclusive with 'builtin'; give exactly one");
  if (!has_expr && !has_builtin)
    config_fail("defining_function",
                "config needs 'defining_function' or 'builtin'");

  if (has_expr) {
    if (!j.at("defining_function").is_string())
      config_fail("defining_function", "expected a string");
    cfg.defining_function = j.at("defining_function").get<std::string>();
    if (!j.contains("bounding_radius"))
      config_fail("bounding_radius",
                  "required alongside 'defining_function'");
  } else {
    const json& b = j.at("builtin");
    if (!b.is_object() || !b.contains("family") ||
        !b.at("family").is_string())
      config_fail("builtin.family", "required string");
    cfg.builtin_family = b.at("family").get<std::string>();
    cfg.builtin_params = b.value("params", json::object());
    if (!cfg.builtin_params.is_object())
      config_fail("builtin.params", "expected an object");
  }

  if (j.contains("bounding_radius")) {
    const double r = require_number(j.at("bounding_radius"), "bounding_radius");
    if (!(r > 0.0)) config_fail("bounding_radius", "must be positive");
    cfg.bounding_radius = r;
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    if (!s.is_object()) config_fail("solver", "expected an object");
    if (s.contains("tol")) cfg.solver.tol = require_number(s.at("tol"),
                                                           "solver.tol");
    if (s.contains("max_iter")) {
      if (!s.at("max_iter").is_number_integer())
        config_fail("solver.max_iter", "expected an integer");
      cfg.solver.max_iter = s.at("max_iter").get<int>();
    }
  }

  if (j.contains("thresholds")) {
    const json& t = j.at("thresholds");
    if (!t.is_object()) config_fail("thresholds", "expected an object");
    apply_threshold_overrides(t, cfg.thresholds);
  }

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer() ||
        (j.at("seed").is_number_integer() && !j.at("seed").is_number_unsigned() &&
         j.at("seed").get<std::int64_t>() < 0))
      config_fail("seed", "expected a nonnegative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }

  static const char* known_top[] = {"name",     "dimension",      "weights",
                                    "defining_function", "builtin",
                                    "bounding_radius",   "solver",
                                    "thresholds",        "seed"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known_top)
      if (key == k) ok = true;
    if (!ok) config_fail(key, "unknown field");
  }
  return cfg;
}

namespace {

BuiltinParams builtin_params_from_json(const nlohmann::json& p) {
  BuiltinParams out;
  if (p.contains("m")) out.m = require_int_list(p.at("m"), "builtin.params.m");
  if (p.contains("c")) {
    if (!p.at("c").is_array())
      config_fail("builtin.params.c", "expected an array of numbers");
    std::vector<double> c;
    for (const auto& v : p.at("c"))
      c.push_back(require_number(v, "builtin.params.c"));
    out.c = c;
  }
  if (p.contains("eps"))
    out.eps = require_number(p.at("eps"), "builtin.params.eps");
  if (p.contains("cross"))
    out.cross = require_number(p.at("cross"), "builtin.params.cross");
  return out;
}

}  // namespace

DomainDefinition realize(const DomainConfig& cfg) {
  const Weights weights = validate_weights(cfg.weights);
  if (cfg.defining_function) {
    ExprPtr ast;
    try {
      ast = parse(*cfg.defining_function, cfg.dimension);
    } catch (const ParseError& e) {
      config_fail("defining_function", e.what());
    }
    if (!cfg.bounding_radius)
      config_fail("bounding_radius", "required with defining_function");
    return DomainDefinition::create(cfg.name, weights,
                                    compile(ast, cfg.dimension),
                                    *cfg.bounding_radius, cfg.solver, true);
  }
  try {
    return builtin(*cfg.builtin_family, cfg.dimension, weights,
                   builtin_params_from_json(cfg.builtin_params), cfg.solver);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnknownFamily ||
        e.kind() == ErrorKind::BadParameters)
      config_fail("builtin", e.what());
    throw;
  }
}

std::pair<DomainConfig, DomainDefinition> load_config(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigError,
         path.string() + ": invalid JSON (" + e.what() + ")");
  }
  DomainConfig cfg = parse_config(j);
  DomainDefinition dom = realize(cfg);
  return {std::move(cfg), std::move(dom)};
}

nlohmann::json thresholds_to_json(const Thresholds& thr) {
  return json{{"quasi_balanced", thr.quasi_balanced},
              {"pseudoconvex", thr.pseudoconvex},
              {"homogeneity", thr.homogeneity},
              {"transversality_margin", thr.transversality_margin},
              {"psh", thr.psh},
              {"defining_residual_factor", thr.defining_residual_factor},
              {"defining_grad_floor", thr.defining_grad_floor},
              {"hopf_min", thr.hopf_min}};
}

nlohmann::json config_to_json(const DomainConfig& cfg) {
  json j{{"name", cfg.name},
         {"dimension", cfg.dimension},
         {"weights", cfg.weights},
         {"solver", {{"tol", cfg.solver.tol}, {"max_iter", cfg.solver.max_iter}}},
         {"thresholds", thresholds_to_json(cfg.thresholds)},
         {"seed", cfg.seed}};
  if (cfg.defining_function) j["defining_function"] = *cfg.defining_function;
  if (cfg.builtin_family)
    j["builtin"] = {{"family", *cfg.builtin_family},
                    {"params", cfg.builtin_params}};
  if (cfg.bounding_radius) j["bounding_radius"] = *cfg.bounding_radius;
  return j;
}

}  // namespace qgauge

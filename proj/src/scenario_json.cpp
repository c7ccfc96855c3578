#include "frictpair/scenario_json.hpp"

#include <fstream>
#include <set>

#include "frictpair/errors.hpp"

namespace frictpair {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown_keys(const json& j, const std::string& where,
                         const std::set<std::string>& allowed) {
  if (!j.is_object())
    throw ParseError(where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw ParseError("unknown key '" + key + "' in " + where);
}

double get_number(const json& j, const std::string& where,
                  const std::string& key) {
  if (!j.contains(key))
    throw ParseError("missing key '" + key + "' in " + where);
  const auto& v = j.at(key);
  if (!v.is_number())
    throw ParseError("key '" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

double get_number_or(const json& j, const std::string& where,
                     const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return get_number(j, where, key);
}

std::string get_string(const json& j, const std::string& where,
                       const std::string& key) {
  if (!j.contains(key))
    throw ParseError("missing key '" + key + "' in " + where);
  const auto& v = j.at(key);
  if (!v.is_string())
    throw ParseError("key '" + key + "' in " + where + " must be a string");
  return v.get<std::string>();
}

Params parse_params(const json& j) {
  reject_unknown_keys(j, "params", {"m1", "m2", "a1", "a2", "b"});
  Params p;
  p.m1 = get_number(j, "params", "m1");
  p.m2 = get_number(j, "params", "m2");
  p.a1 = get_number_or(j, "params", "a1", 0.0);
  p.a2 = get_number(j, "params", "a2");
  p.b = get_number(j, "params", "b");
  require_valid(p);
  return p;
}

Forcing parse_forcing(const json& j) {
  const std::string type = get_string(j, "forcing", "type");
  if (type == "zero") {
    reject_unknown_keys(j, "forcing", {"type"});
    return Forcing::zero();
  }
  if (type == "constant") {
    reject_unknown_keys(j, "forcing", {"type", "value"});
    return Forcing::constant(get_number(j, "forcing", "value"));
  }
  if (type == "sinusoid") {
    reject_unknown_keys(j, "forcing", {"type", "amplitude", "omega", "phase"});
    return Forcing::sinusoid(get_number(j, "forcing", "amplitude"),
                             get_number(j, "forcing", "omega"),
                             get_number_or(j, "forcing", "phase", 0.0));
  }
  throw ParseError("forcing type must be zero, constant or sinusoid");
}

ModelVariant parse_variant(const std::string& s) {
  if (s == "closed_form") return ModelVariant::ClosedForm;
  if (s == "simplified") return ModelVariant::Simplified;
  if (s == "filippov") return ModelVariant::Filippov;
  throw ParseError("variant must be closed_form, simplified or filippov");
}

IntegratorSpec parse_integrator(const json& j) {
  const std::string type = get_string(j, "integrator", "type");
  if (type == "euler") {
    reject_unknown_keys(j, "integrator", {"type", "h"});
    return IntegratorSpec::euler(get_number(j, "integrator", "h"));
  }
  if (type == "event_rk4") {
    reject_unknown_keys(j, "integrator", {"type", "h", "event_tol_t"});
    return IntegratorSpec::event_rk4(
        get_number(j, "integrator", "h"),
        get_number_or(j, "integrator", "event_tol_t", 1e-9));
  }
  throw ParseError("integrator type must be euler or event_rk4");
}

State parse_state(const json& j) {
  reject_unknown_keys(j, "initial", {"x1", "v1", "x2", "v2"});
  return {get_number_or(j, "initial", "x1", 0.0),
          get_number_or(j, "initial", "v1", 0.0),
          get_number_or(j, "initial", "x2", 0.0),
          get_number_or(j, "initial", "v2", 0.0)};
}

}  // namespace

ScenarioFile parse_scenario_json(const json& j) {
  reject_unknown_keys(j, "scenario",
                      {"params", "forcing", "variant", "integrator", "initial",
                       "initial_mode", "t_end", "record_every", "output"});
  ScenarioFile sf;
  Scenario& sc = sf.scenario;
  if (!j.contains("params")) throw ParseError("missing key 'params'");
  sc.params = parse_params(j.at("params"));
  sc.forcing = j.contains("forcing") ? parse_forcing(j.at("forcing"))
                                     : Forcing::zero();
  sc.variant = parse_variant(get_string(j, "scenario", "variant"));
  if (!j.contains("integrator")) throw ParseError("missing key 'integrator'");
  sc.integrator = parse_integrator(j.at("integrator"));
  if (!j.contains("initial")) throw ParseError("missing key 'initial'");
  sc.initial = parse_state(j.at("initial"));
  if (j.contains("initial_mode")) {
    const std::string m = get_string(j, "scenario", "initial_mode");
    if (m != "auto") {
      const auto mode = Mode::parse(m);
      if (!mode)
        throw ParseError("initial_mode must be auto, stick, slip+ or slip-");
      sc.initial_mode = *mode;
    }
  }
  sc.t_end = get_number(j, "scenario", "t_end");
  if (j.contains("record_every")) {
    const auto& r = j.at("record_every");
    if (!r.is_number_integer())
      throw ParseError("record_every must be an integer");
    sc.record_every = r.get<long>();
  }
  if (j.contains("output")) {
    reject_unknown_keys(j.at("output"), "output", {"svg"});
    if (j.at("output").contains("svg")) {
      const auto& v = j.at("output").at("svg");
      if (!v.is_boolean()) throw ParseError("output.svg must be a boolean");
      sf.output.svg = v.get<bool>();
    }
  }
  validate_scenario(sc);
  return sf;
}

namespace {

json read_json_file(const std::string& path, const std::string& what) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + what + " file: " + path);
  json j = json::parse(f, nullptr, false);
  if (j.is_discarded())
    throw ParseError("malformed JSON in " + what + " file: " + path);
  return j;
}

}  // namespace

ScenarioFile load_scenario_file(const std::string& path) {
  return parse_scenario_json(read_json_file(path, "scenario"));
}

json scenario_json(const ScenarioFile& sf) {
  const Scenario& sc = sf.scenario;
  json j;
  j["params"] = {{"m1", sc.params.m1}, {"m2", sc.params.m2},
                 {"a1", sc.params.a1}, {"a2", sc.params.a2},
                 {"b", sc.params.b}};
  switch (sc.forcing.kind()) {
    case Forcing::Kind::Zero:
      j["forcing"] = {{"type", "zero"}};
      break;
    case Forcing::Kind::Constant:
      j["forcing"] = {{"type", "constant"}, {"value", sc.forcing.value()}};
      break;
    case Forcing::Kind::Sinusoid:
      j["forcing"] = {{"type", "sinusoid"},
                      {"amplitude", sc.forcing.amplitude()},
                      {"omega", sc.forcing.omega()},
                      {"phase", sc.forcing.phase()}};
      break;
  }
  j["variant"] = to_string(sc.variant);
  if (sc.integrator.kind == IntegratorKind::Euler)
    j["integrator"] = {{"type", "euler"}, {"h", sc.integrator.h}};
  else
    j["integrator"] = {{"type", "event_rk4"},
                       {"h", sc.integrator.h},
                       {"event_tol_t", sc.integrator.event_tol_t}};
  j["initial"] = {{"x1", sc.initial.x1}, {"v1", sc.initial.v1},
                  {"x2", sc.initial.x2}, {"v2", sc.initial.v2}};
  j["initial_mode"] = sc.initial_mode ? sc.initial_mode->str() : "auto";
  j["t_end"] = sc.t_end;
  j["record_every"] = sc.record_every;
  j["output"] = {{"svg", sf.output.svg}};
  return j;
}

SweepSpec load_sweep_file(const std::string& path) {
  const json j = read_json_file(path, "sweep");
  reject_unknown_keys(j, "sweep document", {"base", "sweep"});
  if (!j.contains("base") || !j.contains("sweep"))
    throw ParseError("sweep document requires 'base' and 'sweep'");
  SweepSpec spec;
  spec.base = j.at("base");
  parse_scenario_json(spec.base);  // validate the base eagerly
  const json& axes = j.at("sweep");
  if (!axes.is_object() || axes.empty())
    throw ParseError("'sweep' must be a non-empty object of value lists");
  for (const auto& [key, values] : axes.items()) {
    if (!values.is_array() || values.empty())
      throw ParseError("swept field '" + key + "' must list at least one value");
    std::vector<json> vals(values.begin(), values.end());
    spec.axes.push_back({key, std::move(vals)});
  }
  return spec;
}

namespace {

json::json_pointer dotted_pointer(const std::string& dotted) {
  std::string ptr;
  size_t start = 0;
  while (true) {
    const size_t pos = dotted.find('.', start);
    ptr += "/" + dotted.substr(start, pos == std::string::npos
                                          ? std::string::npos
                                          : pos - start);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return json::json_pointer(ptr);
}

std::string value_str(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

std::vector<SweepCombo> expand_sweep(const SweepSpec& spec) {
  size_t total = 1;
  for (const auto& [key, values] : spec.axes) {
    total *= values.size();
    if (total > 10000)
      throw ValidationError("sweep expands to more than 10^4 combinations");
  }
  // Validate the swept paths against the base document.
  for (const auto& [key, values] : spec.axes) {
    if (!spec.base.contains(dotted_pointer(key)))
      throw ParseError("swept field '" + key +
                       "' does not exist in the base scenario");
  }

  std::vector<SweepCombo> combos;
  combos.reserve(total);
  std::vector<size_t> idx(spec.axes.size(), 0);
  while (true) {
    json doc = spec.base;
    SweepCombo combo;
    for (size_t a = 0; a < spec.axes.size(); ++a) {
      const auto& [key, values] = spec.axes[a];
      doc[dotted_pointer(key)] = values[idx[a]];
      combo.values.push_back({key, values[idx[a]]});
      if (!combo.label.empty()) combo.label += ",";
      combo.label += key + "=" + value_str(values[idx[a]]);
    }
    combo.file = parse_scenario_json(doc);
    combos.push_back(std::move(combo));
    // odometer increment, last axis fastest
    size_t a = spec.axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < spec.axes[a].second.size()) break;
      idx[a] = 0;
      if (a == 0) return combos;
    }
  }
}

Params load_params_file(const std::string& path) {
  json j = read_json_file(path, "params");
  if (j.contains("params")) j = j.at("params");
  return parse_params(j);
}

}  // namespace frictpair

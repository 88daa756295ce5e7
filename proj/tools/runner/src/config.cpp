#include "chemokin/runner/config.hpp"

#include <cmath>

#include "chemokin/hypocoercivity.hpp"

namespace chemokin::runner {

using nlohmann::json;

json default_document() {
  return json{
      {"params", {{"chi", 0.5}, {"alpha", 0.0}, {"sigma_override", nullptr}, {"mode", "nonlinear"}}},
      {"grid", {{"L", 20.0}, {"n_cells", 4000}}},
      {"stepping", {{"cfl", 0.4}, {"t_final", 10.0}, {"diag_stride", 1}, {"watchdog_stride", 50}}},
      {"initial",
       {{"shape", "gaussian_bump"},
        {"amplitude", 0.01},
        {"center", 0.5},
        {"width", 1.0},
        {"constraint_mode", "project_all"},
        {"diff_average", 0.0}}},
      {"entropy", {{"delta_mode", "theory"}, {"delta_value", nullptr}, {"p_assumed", 0.02}}},
      {"outputs",
       {{"series_path", "series.csv"},
        {"snapshots", json::array()},
        {"snapshot_path", "snapshots.json"},
        {"report_path", "report.json"}}},
      {"seed", 1},
      {"sweep",
       {{"chi", json::array()},
        {"alpha", json::array()},
        {"amplitude", json::array()},
        {"n_cells", json::array()},
        {"summary_path", "sweep_summary.csv"},
        {"threads", 0}}},
  };
}

namespace {

// Keys whose default is null accept a number or null.
bool nullable_number(const std::string& key) {
  return key == "params.sigma_override" || key == "entropy.delta_value";
}

bool same_kind(const json& def, const json& val, const std::string& key) {
  if (def.is_null()) return nullable_number(key) && (val.is_null() || val.is_number());
  if (def.is_number_integer()) return val.is_number_integer();
  if (def.is_number()) return val.is_number();
  if (def.is_string()) return val.is_string();
  if (def.is_boolean()) return val.is_boolean();
  if (def.is_array()) return val.is_array();
  if (def.is_object()) return val.is_object();
  return false;
}

void merge_into(json& dst, const json& src, const std::string& prefix) {
  if (!src.is_object()) throw ConfigError((prefix.empty() ? "config" : prefix) + ": expected an object");
  for (auto it = src.begin(); it != src.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!dst.contains(it.key())) throw ConfigError(key + ": unknown key");
    json& d = dst[it.key()];
    if (!same_kind(d, it.value(), key)) throw ConfigError(key + ": type mismatch");
    if (d.is_object())
      merge_into(d, it.value(), key);
    else if (nullable_number(key))
      d = it.value().is_null() ? json(nullptr) : json(it.value().get<double>());
    else
      d = it.value();
  }
}

template <typename T>
std::vector<T> number_list(const json& a, const std::string& key) {
  std::vector<T> out;
  for (const auto& x : a) {
    if (!x.is_number()) throw ConfigError(key + ": expected a list of numbers");
    if constexpr (std::is_integral_v<T>) {
      if (!x.is_number_integer()) throw ConfigError(key + ": expected integers");
    }
    out.push_back(x.get<T>());
  }
  return out;
}

} // namespace

json merge_document(const json& doc) {
  json merged = default_document();
  if (doc.is_null()) return merged;
  merge_into(merged, doc, "");
  return merged;
}

void apply_override(json& merged, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "': expected key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  // Rebuild the nested patch and reuse the merge checks.
  json patch = value;
  std::size_t end = key.size();
  while (true) {
    const auto dot = key.rfind('.', end - 1);
    const std::string part = key.substr(dot == std::string::npos ? 0 : dot + 1,
                                         end - (dot == std::string::npos ? 0 : dot + 1));
    if (part.empty()) throw ConfigError("override '" + assignment + "': empty key segment");
    patch = json{{part, patch}};
    if (dot == std::string::npos) break;
    end = dot;
  }
  merge_into(merged, patch, "");
}

RunConfig from_document(const json& m) {
  RunConfig c;
  auto num = [&](const char* sec, const char* k) { return m.at(sec).at(k).get<double>(); };
  auto str = [&](const char* sec, const char* k) { return m.at(sec).at(k).get<std::string>(); };
  auto wrap = [](const std::string& key, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      throw ConfigError(key + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key + ": " + e.what());
    }
  };

  c.chi = num("params", "chi");
  c.alpha = num("params", "alpha");
  wrap("params.chi", [&] { make_params(c.chi, 0.0); });
  wrap("params.alpha", [&] { make_params(0.5, c.alpha); });
  if (!m["params"]["sigma_override"].is_null()) {
    c.sigma_override = m["params"]["sigma_override"].get<double>();
    wrap("params.sigma_override", [&] { make_params_non_normalized(c.chi, c.alpha, *c.sigma_override); });
  }
  wrap("params.mode", [&] { c.mode = parse_mode(str("params", "mode")); });

  c.L = num("grid", "L");
  c.n_cells = m["grid"]["n_cells"].get<int>();
  wrap("grid.n_cells", [&] { build_grid(c.model(), c.L, c.n_cells); });

  c.cfl = num("stepping", "cfl");
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ConfigError("stepping.cfl: cfl must be in (0,1]");
  c.t_final = num("stepping", "t_final");
  if (!(c.t_final >= 0.0) || !std::isfinite(c.t_final))
    throw ConfigError("stepping.t_final: must be finite and nonnegative");
  c.diag_stride = m["stepping"]["diag_stride"].get<int>();
  if (c.diag_stride < 1) throw ConfigError("stepping.diag_stride: must be >= 1");
  c.watchdog_stride = m["stepping"]["watchdog_stride"].get<int>();
  if (c.watchdog_stride < 1) throw ConfigError("stepping.watchdog_stride: must be >= 1");

  wrap("initial.shape", [&] { c.initial.shape = parse_shape(str("initial", "shape")); });
  wrap("initial.constraint_mode",
       [&] { c.initial.constraint_mode = parse_constraint_mode(str("initial", "constraint_mode")); });
  c.initial.amplitude = num("initial", "amplitude");
  c.initial.center = num("initial", "center");
  c.initial.width = num("initial", "width");
  c.initial.diff_average = num("initial", "diff_average");
  if (!(c.initial.width > 0.0)) throw ConfigError("initial.width: must be positive");
  if (!std::isfinite(c.initial.amplitude)) throw ConfigError("initial.amplitude: must be finite");

  const std::string dm = str("entropy", "delta_mode");
  if (dm == "theory")
    c.delta_mode = DeltaMode::theory;
  else if (dm == "manual")
    c.delta_mode = DeltaMode::manual;
  else
    throw ConfigError("entropy.delta_mode: expected 'theory' or 'manual'");
  if (!m["entropy"]["delta_value"].is_null()) c.delta_value = m["entropy"]["delta_value"].get<double>();
  if (c.delta_mode == DeltaMode::manual) {
    if (!c.delta_value) throw ConfigError("entropy.delta_value: required when delta_mode = manual");
    if (!(*c.delta_value >= 0.0 && *c.delta_value < 1.0))
      throw ConfigError("entropy.delta_value: must be in [0,1)");
  }
  c.p_assumed = num("entropy", "p_assumed");
  if (!(c.p_assumed > 0.0)) throw ConfigError("entropy.p_assumed: must be positive");

  c.series_path = str("outputs", "series_path");
  c.snapshots = number_list<double>(m["outputs"]["snapshots"], "outputs.snapshots");
  for (double t : c.snapshots)
    if (t < 0.0 || t > c.t_final) throw ConfigError("outputs.snapshots: times must lie in [0, t_final]");
  c.snapshot_path = str("outputs", "snapshot_path");
  c.report_path = str("outputs", "report_path");

  if (!m["seed"].is_number_integer() || m["seed"].get<long long>() < 0) throw ConfigError("seed: expected a nonnegative integer");
  c.seed = m["seed"].get<std::uint64_t>();
  c.initial.seed = c.seed;

  c.sweep_chi = number_list<double>(m["sweep"]["chi"], "sweep.chi");
  c.sweep_alpha = number_list<double>(m["sweep"]["alpha"], "sweep.alpha");
  c.sweep_amplitude = number_list<double>(m["sweep"]["amplitude"], "sweep.amplitude");
  c.sweep_n_cells = number_list<int>(m["sweep"]["n_cells"], "sweep.n_cells");
  for (double x : c.sweep_chi) wrap("sweep.chi", [&] { make_params(x, 0.0); });
  for (double x : c.sweep_alpha) wrap("sweep.alpha", [&] { make_params(0.5, x); });
  c.sweep_summary_path = m["sweep"]["summary_path"].get<std::string>();
  c.sweep_threads = m["sweep"]["threads"].get<int>();
  if (c.sweep_threads < 0) throw ConfigError("sweep.threads: must be >= 0");

  // The initial data must be admissible on the configured grid.
  if (c.initial.amplitude != 0.0 || c.initial.diff_average != 0.0)
    wrap("initial", [&] { make_initial(c.initial, c.grid()); });
  return c;
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  json doc;
  if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
    doc = json::parse(text, nullptr, false, true);
    if (doc.is_discarded()) throw ConfigError("config: not a valid JSON document");
  }
  json merged = merge_document(doc);
  for (const auto& o : overrides) apply_override(merged, o);
  return from_document(merged);
}

ModelParams RunConfig::model() const {
  return sigma_override ? make_params_non_normalized(chi, alpha, *sigma_override) : make_params(chi, alpha);
}

Grid RunConfig::grid() const { return build_grid(model(), L, n_cells); }

std::pair<double, double> RunConfig::deltas() const {
  if (delta_mode == DeltaMode::manual) return {*delta_value, *delta_value};
  const ConstantSet k = theory_constants(model(), p_assumed, initial.amplitude);
  const double d = k.delta_ok ? k.delta : 0.1;
  const double da = k.delta_alpha > 0.0 ? k.delta_alpha : 0.1;
  return {d, da};
}

StepConfig RunConfig::step_config() const {
  StepConfig s;
  s.cfl = cfl;
  s.t_final = t_final;
  s.diag_stride = diag_stride;
  s.watchdog_stride = watchdog_stride;
  s.snapshot_times = snapshots;
  std::tie(s.delta, s.delta_alpha) = deltas();
  return s;
}

json to_document(const RunConfig& c) {
  json m = default_document();
  m["params"]["chi"] = c.chi;
  m["params"]["alpha"] = c.alpha;
  m["params"]["sigma_override"] = c.sigma_override ? json(*c.sigma_override) : json(nullptr);
  m["params"]["mode"] = to_string(c.mode);
  m["grid"]["L"] = c.L;
  m["grid"]["n_cells"] = c.n_cells;
  m["stepping"] = {{"cfl", c.cfl}, {"t_final", c.t_final}, {"diag_stride", c.diag_stride},
                   {"watchdog_stride", c.watchdog_stride}};
  m["initial"] = {{"shape", to_string(c.initial.shape)},
                  {"amplitude", c.initial.amplitude},
                  {"center", c.initial.center},
                  {"width", c.initial.width},
                  {"constraint_mode", to_string(c.initial.constraint_mode)},
                  {"diff_average", c.initial.diff_average}};
  m["entropy"] = {{"delta_mode", c.delta_mode == DeltaMode::theory ? "theory" : "manual"},
                  {"delta_value", c.delta_value ? json(*c.delta_value) : json(nullptr)},
                  {"p_assumed", c.p_assumed}};
  m["outputs"] = {{"series_path", c.series_path},
                  {"snapshots", c.snapshots},
                  {"snapshot_path", c.snapshot_path},
                  {"report_path", c.report_path}};
  m["seed"] = c.seed;
  m["sweep"] = {{"chi", c.sweep_chi},
                {"alpha", c.sweep_alpha},
                {"amplitude", c.sweep_amplitude},
                {"n_cells", c.sweep_n_cells},
                {"summary_path", c.sweep_summary_path},
                {"threads", c.sweep_threads}};
  return m;
}

} // namespace chemokin::runner

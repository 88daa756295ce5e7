#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "chemokin/core_types.hpp"
#include "chemokin/equilibrium.hpp"
#include "chemokin/transport_solver.hpp"

namespace chemokin::runner {

enum class DeltaMode { theory, manual };

struct RunConfig {
  // params
  double chi = 0.5;
  double alpha = 0.0;
  std::optional<double> sigma_override;
  Mode mode = Mode::nonlinear;
  // grid
  double L = 20.0;
  int n_cells = 4000;
  // stepping
  double cfl = 0.4;
  double t_final = 10.0;
  int diag_stride = 1;
  int watchdog_stride = 50;
  // initial data; initial.seed mirrors the top-level seed
  InitialSpec initial;
  // entropy weights
  DeltaMode delta_mode = DeltaMode::theory;
  std::optional<double> delta_value;
  double p_assumed = 0.02;
  // outputs
  std::string series_path = "series.csv";
  std::vector<double> snapshots;
  std::string snapshot_path = "snapshots.json";
  std::string report_path = "report.json";
  std::uint64_t seed = 1;
  // sweep axes; empty means "use the scalar value above"
  std::vector<double> sweep_chi, sweep_alpha, sweep_amplitude;
  std::vector<int> sweep_n_cells;
  std::string sweep_summary_path = "sweep_summary.csv";
  int sweep_threads = 0; // 0 = hardware concurrency

  ModelParams model() const;
  Grid grid() const;
  // delta and delta_alpha used for the modified entropies.
  std::pair<double, double> deltas() const;
  StepConfig step_config() const;
};

// Defaults as a document; every accepted key appears here.
nlohmann::json default_document();

// Merge `doc` onto the defaults. Unknown keys and type mismatches raise
// ConfigError naming the dotted key.
nlohmann::json merge_document(const nlohmann::json& doc);

// Apply one "a.b.c=value" override. The value is read as JSON when it parses,
// otherwise as a plain string.
void apply_override(nlohmann::json& merged, const std::string& assignment);

// Build and validate. Errors carry the offending key.
RunConfig from_document(const nlohmann::json& merged);

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

nlohmann::json to_document(const RunConfig& cfg);

} // namespace chemokin::runner

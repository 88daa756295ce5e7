#pragma once

#include <iosfwd>
#include <string>

#include "chemokin/runner/config.hpp"
#include "chemokin/transport_solver.hpp"

namespace chemokin::runner {

enum ExitCode : int { exit_ok = 0, exit_check_failure = 1, exit_solver_abort = 2, exit_config_error = 3 };

enum class Command { run, check, oracle_compare, sweep };
Command parse_command(const std::string& s);

void write_series(const std::string& path, const DiagnosticsSeries& s);
void write_snapshots(const std::string& path, const Grid& g, const Trajectory& tr);
void write_json(const std::string& path, const nlohmann::json& doc);

int cmd_run(const RunConfig& cfg, std::ostream& out);
int cmd_check(const RunConfig& cfg, std::ostream& out);
int cmd_oracle_compare(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);

int execute(Command c, const RunConfig& cfg, std::ostream& out);

} // namespace chemokin::runner

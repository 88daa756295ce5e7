#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "chemokin/runner/commands.hpp"
#include "chemokin/runner/config.hpp"

using namespace chemokin;
using namespace chemokin::runner;

int main(int argc, char** argv) {
  CLI::App app{"Moving-frame run-and-tumble chemotaxis solver"};
  std::string command, config_path;
  std::vector<std::string> overrides;
  app.add_option("command", command, "run | check | oracle-compare | sweep")->required();
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--set", overrides, "override a dotted key, e.g. --set params.chi=0.3");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config_error;
  }

  RunConfig cfg;
  Command cmd;
  try {
    cmd = parse_command(command);
    std::string text;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot read config file '" + config_path + "'");
      std::stringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    cfg = parse_config(text, overrides);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config_error;
  }

  try {
    return execute(cmd, cfg, std::cout);
  } catch (const SolverAbort& e) {
    std::cerr << "solver abort: " << e.what() << '\n';
    return exit_solver_abort;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_check_failure;
  }
}

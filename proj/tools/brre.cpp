// brre: classify symplectic-map orbits with Birkhoff RRE.

#include <iostream>

#include <CLI11.hpp>

#include "brre/app/commands.hpp"
#include "brre/errors.hpp"

using namespace brre::app;

namespace {

int with_config(const std::string& path, int (*run)(const RunConfig&, std::ostream&, std::ostream&)) {
  RunConfig config;
  try {
    config = load_config(path);
    config.workers = effective_workers(config);
  } catch (const brre::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  }
  try {
    return run(config, std::cout, std::cerr);
  } catch (const brre::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff RRE classification of map trajectories"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "brre 0.1.0");

  std::string path;
  auto* classify = app.add_subcommand("classify", "classify every seed; CSV table plus optional circle JSON");
  classify->add_option("config", path, "INI run configuration")->required();
  auto* converge = app.add_subcommand("converge", "RRE and WBA residuals at matched budgets");
  converge->add_option("config", path, "INI run configuration")->required();
  auto* average = app.add_subcommand("average", "weighted Birkhoff average of the observable");
  average->add_option("config", path, "INI run configuration")->required();
  auto* figure2 = app.add_subcommand("figure2", "three K = 11 filter errors for exp(cos 2 pi theta)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  try {
    if (*classify) return with_config(path, run_classify);
    if (*converge) return with_config(path, run_converge);
    if (*average) return with_config(path, run_average);
    if (*figure2) return run_figure2(std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

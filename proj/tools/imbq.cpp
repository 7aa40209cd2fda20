#include <CLI11.hpp>
#include <iostream>

#include "cli/config.hpp"
#include "cli/run.hpp"

int main(int argc, char** argv) {
  using namespace imbq::cli;
  CLI::App app{"imbq: Duhamel/Picard solver and ill-posedness harness for the improved modified Boussinesq equation"};
  std::string command, config;
  Overrides flags;
  std::string out;
  int jobs = -1;

  app.add_option("command", command, "solve | inflate | lemma-check | dispersion | derivative-check");
  app.add_option("--config", config, "JSON configuration file");
  app.add_option("--out", out, "output directory (overrides the file)");
  app.add_option("--jobs", jobs, "worker threads, 0 for all cores (overrides the file)");
  app.add_flag("--plot", flags.plot, "also write an SVG plot (inflate, dispersion)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return config_error;
  }
  if (!command.empty()) flags.command = command;
  if (!out.empty()) flags.out = out;
  if (jobs >= 0) flags.jobs = jobs;

  RunConfig cfg;
  try {
    cfg = parse_config_file(config, flags);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  }
  return run(cfg, std::cout, std::cerr);
}

// uavvlc: minimum-power deployment of LED-equipped UAVs.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "uavvlc/cli.hpp"

namespace {

std::size_t worker_cap() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("UAVVLC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring UAVVLC_THREADS='" << env << "'\n";
    }
  }
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace uavvlc::cli;

  CLI::App app{"Minimum-power placement and cell association of VLC-equipped UAVs"};
  std::string config_path;
  std::string mode, seed, runs, users, cth_sweep, schemes, out, case1, case2;
  std::vector<std::string> heights, settings;

  app.add_option("--config", config_path, "Key-value config file")->check(CLI::ExistingFile);
  app.add_option("--mode", mode, "single | sweep | montecarlo | binding");
  app.add_option("--seed", seed, "Scenario seed (first seed for multi-run modes)");
  app.add_option("--runs", runs, "Monte Carlo runs per point");
  app.add_option("--users", users, "Number of users");
  app.add_option("--height", heights, "UAV height in meters (repeatable)");
  app.add_option("--cth-sweep", cth_sweep, "Rate-threshold sweep FROM:TO:STEP");
  app.add_option("--schemes", schemes, "Comma-separated subset of proposed,uavoo,sa1,sa2");
  app.add_option("--out", out, "Output directory");
  app.add_option("--case1", case1, "Config overlay for binding case 1");
  app.add_option("--case2", case2, "Config overlay for binding case 2");
  app.add_option("--set", settings, "Override any config key, KEY=VALUE (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitFeasible : kExitUsage;
  }

  try {
    RunConfig config;
    config.threads = worker_cap();
    if (!config_path.empty()) load_config_file(config, config_path);

    auto flag = [&](const char* key, const std::string& value) {
      if (!value.empty()) apply_setting(config, key, value);
    };
    flag("mode", mode);
    flag("seed", seed);
    flag("runs", runs);
    flag("users", users);
    flag("cth_sweep", cth_sweep);
    flag("schemes", schemes);
    flag("out", out);
    flag("case1", case1);
    flag("case2", case2);
    if (!heights.empty()) {
      std::string joined;
      for (const auto& h : heights) joined += (joined.empty() ? "" : ",") + h;
      apply_setting(config, "height", joined);
    }
    for (const auto& kv : settings) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set", "expected KEY=VALUE, got '" + kv + "'");
      apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    config.threads = std::min(config.threads, worker_cap());

    return run(config, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

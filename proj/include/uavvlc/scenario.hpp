#ifndef UAVVLC_SCENARIO_HPP
#define UAVVLC_SCENARIO_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavvlc/channel.hpp"
#include "uavvlc/geometry.hpp"
#include "uavvlc/optimizer.hpp"

namespace uavvlc {

enum class Scheme { proposed, uavoo, sa1, sa2 };

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::proposed, Scheme::uavoo, Scheme::sa1,
                                                      Scheme::sa2};

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

struct Scenario {
  Rectd area;
  std::vector<Rectd> sub_areas;  // row-major tiles of `area`, K = size()
  std::vector<Point2d> users;
  std::uint64_t seed = 0;
  VlcParamsd params;
  Requirementsd reqs;
};

struct ScenarioSpec {
  double area_size = 10.0;
  std::size_t grid_x = 2;
  std::size_t grid_y = 2;
  std::size_t num_users = 16;
  VlcParamsd params;
  Requirementsd reqs;
};

/// Splits `area` into grid_x by grid_y equal tiles, row-major from `area.lo`.
std::vector<Rectd> tile(const Rectd& area, std::size_t grid_x, std::size_t grid_y);

/// Square area [0, size]^2 with users drawn i.i.d. uniformly. Each user takes
/// two consecutive Rng::uniform01 draws, x then y.
Scenario generate_scenario(std::uint64_t seed, const ScenarioSpec& spec);

DeploymentSolution run_scheme(const Scenario& scenario, Scheme scheme,
                              const OptimizerConfig& config = {});

struct UserReport {
  std::size_t user_index = 0;
  double achieved_rate = 0.0;
  double achieved_illum = 0.0;
  std::size_t serving_uav = 0;
};

/// Rate bound and illuminance each user receives from its serving UAV.
std::vector<UserReport> per_user_report(const DeploymentSolution& solution,
                                        std::span<const Point2d> users, const VlcParamsd& params,
                                        const Requirementsd& reqs);

struct SchemeStats {
  Scheme scheme = Scheme::proposed;
  std::vector<double> totals;  // per run, in seed order; NaN for infeasible runs
  std::size_t feasible_runs = 0;
  std::size_t infeasible_runs = 0;
  double mean = 0.0;  // over feasible runs
  double stddev = 0.0;  // sample standard deviation over feasible runs
};

struct Reduction {
  Scheme scheme = Scheme::proposed;
  Scheme baseline = Scheme::sa1;
  double of_means = 0.0;     // 1 - mean(scheme) / mean(baseline)
  double mean_of_runs = 0.0;  // mean over runs of 1 - scheme / baseline
};

struct MonteCarloConfig {
  ScenarioSpec spec;
  std::uint64_t base_seed = 1;
  std::size_t num_runs = 100;
  std::vector<Scheme> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  OptimizerConfig optimizer;
  std::size_t threads = 1;
};

struct MonteCarloResult {
  std::vector<SchemeStats> stats;  // in config.schemes order
  std::vector<Reduction> reductions;  // every (scheme, other scheme) pair

  const SchemeStats* find(Scheme scheme) const;
  std::optional<Reduction> reduction(Scheme scheme, Scheme baseline) const;
};

/// Runs seeds base_seed .. base_seed + num_runs - 1. Results do not depend on
/// the thread count.
MonteCarloResult run_monte_carlo(const MonteCarloConfig& config);

}  // namespace uavvlc

#endif  // UAVVLC_SCENARIO_HPP

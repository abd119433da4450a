#include "uavvlc/scenario.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "uavvlc/rng.hpp"

namespace uavvlc {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::proposed: return "proposed";
    case Scheme::uavoo: return "uavoo";
    case Scheme::sa1: return "sa1";
    case Scheme::sa2: return "sa2";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Rectd> tile(const Rectd& area, std::size_t grid_x, std::size_t grid_y) {
  if (grid_x == 0 || grid_y == 0) throw std::invalid_argument("tile: grid must be at least 1x1");
  auto cut = [](double lo, double hi, std::size_t i, std::size_t n) {
    if (i == n) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  };
  std::vector<Rectd> out;
  out.reserve(grid_x * grid_y);
  for (std::size_t iy = 0; iy < grid_y; ++iy) {
    for (std::size_t ix = 0; ix < grid_x; ++ix) {
      Rectd r;
      r.lo = {cut(area.lo.x(), area.hi.x(), ix, grid_x), cut(area.lo.y(), area.hi.y(), iy, grid_y)};
      r.hi = {cut(area.lo.x(), area.hi.x(), ix + 1, grid_x),
              cut(area.lo.y(), area.hi.y(), iy + 1, grid_y)};
      out.push_back(r);
    }
  }
  return out;
}

Scenario generate_scenario(std::uint64_t seed, const ScenarioSpec& spec) {
  if (!(spec.area_size > 0)) throw std::invalid_argument("area_size must be > 0");
  if (spec.num_users == 0) throw std::invalid_argument("num_users must be >= 1");
  spec.params.validate();
  spec.reqs.validate();

  Scenario s;
  s.area.lo = Point2d::Zero();
  s.area.hi = Point2d::Constant(spec.area_size);
  s.sub_areas = tile(s.area, spec.grid_x, spec.grid_y);
  s.seed = seed;
  s.params = spec.params;
  s.reqs = spec.reqs;

  Rng rng(seed);
  s.users.reserve(spec.num_users);
  for (std::size_t j = 0; j < spec.num_users; ++j) {
    const double x = spec.area_size * rng.uniform01();
    const double y = spec.area_size * rng.uniform01();
    s.users.emplace_back(x, y);
  }
  return s;
}

DeploymentSolution run_scheme(const Scenario& scenario, Scheme scheme,
                              const OptimizerConfig& config) {
  switch (scheme) {
    case Scheme::proposed:
      return optimize_from_sub_areas(scenario.users, scenario.sub_areas, scenario.params,
                                     scenario.reqs, config);
    case Scheme::uavoo:
      return baseline_uavoo(scenario.users, scenario.sub_areas, scenario.params, scenario.reqs);
    case Scheme::sa1:
      return baseline_sa1(scenario.users, scenario.sub_areas, scenario.params, scenario.reqs);
    case Scheme::sa2:
      return baseline_sa2(scenario.sub_areas, scenario.params, scenario.reqs, scenario.users);
  }
  throw std::invalid_argument("run_scheme: unknown scheme");
}

std::vector<UserReport> per_user_report(const DeploymentSolution& solution,
                                        std::span<const Point2d> users, const VlcParamsd& params,
                                        const Requirementsd& /*reqs*/) {
  const auto serving = solution.association.serving_uav(users.size());
  std::vector<UserReport> out;
  out.reserve(users.size());
  for (std::size_t j = 0; j < users.size(); ++j) {
    const std::size_t i = serving[j];
    const Point2d& pos = solution.uav_positions[i];
    const double h = channel_gain(Point3d(pos.x(), pos.y(), params.uav_height), users[j], params);
    const double power = solution.per_uav_power[i];
    UserReport r;
    r.user_index = j;
    r.serving_uav = i;
    r.achieved_rate = capacity_lower_bound(power, h, params);
    r.achieved_illum = params.illum_factor * power * h;
    out.push_back(r);
  }
  return out;
}

const SchemeStats* MonteCarloResult::find(Scheme scheme) const {
  for (const auto& s : stats) {
    if (s.scheme == scheme) return &s;
  }
  return nullptr;
}

std::optional<Reduction> MonteCarloResult::reduction(Scheme scheme, Scheme baseline) const {
  for (const auto& r : reductions) {
    if (r.scheme == scheme && r.baseline == baseline) return r;
  }
  return std::nullopt;
}

MonteCarloResult run_monte_carlo(const MonteCarloConfig& config) {
  if (config.num_runs == 0) throw std::invalid_argument("num_runs must be >= 1");
  if (config.schemes.empty()) throw std::invalid_argument("at least one scheme is required");
  config.spec.params.validate();
  config.spec.reqs.validate();

  const std::size_t runs = config.num_runs;
  const std::size_t ns = config.schemes.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // totals[run * ns + s]; each run writes only its own slots.
  std::vector<double> totals(runs * ns, nan);

  auto work = [&](std::size_t run) {
    const Scenario sc = generate_scenario(config.base_seed + run, config.spec);
    for (std::size_t s = 0; s < ns; ++s) {
      const auto sol = run_scheme(sc, config.schemes[s], config.optimizer);
      totals[run * ns + s] = sol.feasible ? sol.total_power : nan;
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, runs));
  if (threads == 1) {
    for (std::size_t run = 0; run < runs; ++run) work(run);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t run = next++; run < runs; run = next++) work(run);
      });
    }
  }

  MonteCarloResult out;
  for (std::size_t s = 0; s < ns; ++s) {
    SchemeStats st;
    st.scheme = config.schemes[s];
    double sum = 0.0;
    for (std::size_t run = 0; run < runs; ++run) {
      const double v = totals[run * ns + s];
      st.totals.push_back(v);
      if (std::isnan(v)) {
        ++st.infeasible_runs;
      } else {
        ++st.feasible_runs;
        sum += v;
      }
    }
    if (st.feasible_runs > 0) {
      st.mean = sum / static_cast<double>(st.feasible_runs);
      double sq = 0.0;
      for (double v : st.totals) {
        if (!std::isnan(v)) sq += (v - st.mean) * (v - st.mean);
      }
      st.stddev = st.feasible_runs > 1 ? std::sqrt(sq / static_cast<double>(st.feasible_runs - 1)) : 0.0;
    } else {
      st.mean = st.stddev = nan;
    }
    out.stats.push_back(std::move(st));
  }

  for (std::size_t a = 0; a < ns; ++a) {
    for (std::size_t b = 0; b < ns; ++b) {
      if (a == b) continue;
      Reduction r;
      r.scheme = config.schemes[a];
      r.baseline = config.schemes[b];
      r.of_means = 1.0 - out.stats[a].mean / out.stats[b].mean;
      double acc = 0.0;
      std::size_t n = 0;
      for (std::size_t run = 0; run < runs; ++run) {
        const double x = totals[run * ns + a];
        const double y = totals[run * ns + b];
        if (std::isnan(x) || std::isnan(y)) continue;
        acc += 1.0 - x / y;
        ++n;
      }
      r.mean_of_runs = n > 0 ? acc / static_cast<double>(n) : nan;
      out.reductions.push_back(r);
    }
  }
  return out;
}

}  // namespace uavvlc

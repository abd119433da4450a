#include "uavvlc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uavvlc {

std::string_view to_string(Step step) {
  switch (step) {
    case Step::initial: return "initial";
    case Step::locate: return "locate";
    case Step::associate_and_locate: return "associate_and_locate";
    case Step::fixed: return "fixed";
  }
  return "unknown";
}

std::vector<Point2d> locate_uavs(const CellAssociation& association, std::span<const Point2d> users,
                                 std::span<const Point2d> previous) {
  if (previous.size() != association.num_uavs()) {
    throw std::invalid_argument("locate_uavs: one previous position per UAV is required");
  }
  std::vector<Point2d> positions(previous.begin(), previous.end());
  std::vector<Point2d> members;
  for (std::size_t i = 0; i < association.num_uavs(); ++i) {
    const auto& cluster = association.clusters[i];
    if (cluster.empty()) continue;
    members.clear();
    for (std::size_t u : cluster) members.push_back(users[u]);
    positions[i] = smallest_enclosing_disk(members).center;
  }
  return positions;
}

PowerEvaluation evaluate_power(std::span<const Point2d> positions,
                               const CellAssociation& association, std::span<const Point2d> users,
                               const ConstraintCoefficientsd& coeffs, const VlcParamsd& params) {
  PowerEvaluation out;
  out.per_uav_power.assign(association.num_uavs(), 0.0);
  for (std::size_t i = 0; i < association.num_uavs(); ++i) {
    const auto& cluster = association.clusters[i];
    if (cluster.empty()) continue;
    double farthest = 0.0;
    bool reachable = true;
    for (std::size_t u : cluster) {
      const double r = (positions[i] - users[u]).norm();
      if (!in_field_of_view(r, params)) {
        out.violations.push_back({i, u});
        reachable = false;
      }
      farthest = std::max(farthest, r);
    }
    out.per_uav_power[i] = reachable ? *min_power_for_radius(farthest, coeffs, params)
                                     : std::numeric_limits<double>::infinity();
  }
  for (double p : out.per_uav_power) out.total_power += p;
  return out;
}

CellAssociation geographic_association(std::span<const Point2d> users,
                                       std::span<const Rectd> sub_areas) {
  if (sub_areas.empty()) throw std::invalid_argument("geographic_association: no sub-areas");
  CellAssociation out(sub_areas.size());
  for (std::size_t u = 0; u < users.size(); ++u) {
    std::size_t chosen = sub_areas.size();
    for (std::size_t i = 0; i < sub_areas.size(); ++i) {
      if (sub_areas[i].contains(users[u])) {
        chosen = i;
        break;
      }
    }
    if (chosen == sub_areas.size()) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < sub_areas.size(); ++i) {
        const double d = (sub_areas[i].center() - users[u]).norm();
        if (d < best) {
          best = d;
          chosen = i;
        }
      }
    }
    out.clusters[chosen].push_back(u);
  }
  return out;
}

namespace {

void adopt(DeploymentSolution& sol, std::vector<Point2d> positions, CellAssociation association,
           PowerEvaluation eval) {
  sol.uav_positions = std::move(positions);
  sol.association = std::move(association);
  sol.per_uav_power = std::move(eval.per_uav_power);
  sol.total_power = eval.total_power;
  sol.feasible = eval.violations.empty();
  sol.violations = std::move(eval.violations);
}

std::vector<Point2d> centers_of(std::span<const Rectd> sub_areas) {
  std::vector<Point2d> out;
  out.reserve(sub_areas.size());
  for (const auto& r : sub_areas) out.push_back(r.center());
  return out;
}

DeploymentSolution fixed_solution(std::vector<Point2d> positions, CellAssociation association,
                                  std::span<const Point2d> users, const VlcParamsd& params,
                                  const Requirementsd& reqs) {
  params.validate();
  reqs.validate();
  const auto coeffs = ConstraintCoefficientsd::from(params, reqs);
  auto eval = evaluate_power(positions, association, users, coeffs, params);
  DeploymentSolution sol;
  adopt(sol, std::move(positions), std::move(association), std::move(eval));
  sol.trace.push_back({0, Step::fixed, sol.total_power});
  return sol;
}

}  // namespace

DeploymentSolution optimize(std::span<const Point2d> users,
                            std::span<const Point2d> initial_positions, const VlcParamsd& params,
                            const Requirementsd& reqs, const OptimizerConfig& config,
                            const std::optional<CellAssociation>& initial_association) {
  params.validate();
  reqs.validate();
  if (initial_positions.empty()) throw std::invalid_argument("optimize: at least one UAV is required");
  const auto coeffs = ConstraintCoefficientsd::from(params, reqs);

  DeploymentSolution best;
  bool have_best = false;
  std::vector<Point2d> current(initial_positions.begin(), initial_positions.end());

  if (initial_association) {
    if (initial_association->num_uavs() != current.size() ||
        !initial_association->is_partition_of(users.size())) {
      throw std::invalid_argument("optimize: initial association must partition the users over the UAVs");
    }
    auto start = evaluate_power(current, *initial_association, users, coeffs, params);
    if (start.feasible()) best.trace.push_back({0, Step::initial, start.total_power});

    auto located = locate_uavs(*initial_association, users, current);
    auto eval = evaluate_power(located, *initial_association, users, coeffs, params);
    adopt(best, located, *initial_association, std::move(eval));
    if (!best.feasible) return best;
    best.trace.push_back({0, Step::locate, best.total_power});
    current = std::move(located);
    have_best = true;
  }

  for (std::size_t round = 1; round <= config.max_iters; ++round) {
    CellAssociation association;
    try {
      ClusteringOptions options;
      options.opening = config.opening;
      association = greedy_min_size_clustering(current, users, params, options);
    } catch (const InfeasibleError& e) {
      best.feasible = false;
      best.uncovered_user = e.user();
      best.rounds = round;
      return best;
    }
    auto positions = locate_uavs(association, users, current);
    auto eval = evaluate_power(positions, association, users, coeffs, params);
    best.rounds = round;

    if (!have_best) {
      adopt(best, positions, std::move(association), std::move(eval));
      if (!best.feasible) return best;
      best.trace.push_back({round, Step::associate_and_locate, best.total_power});
      current = std::move(positions);
      have_best = true;
      continue;
    }
    if (!eval.feasible() || eval.total_power > best.total_power) {
      best.rejected_round_power = eval.total_power;
      break;
    }
    const double previous = best.total_power;
    adopt(best, positions, std::move(association), std::move(eval));
    best.trace.push_back({round, Step::associate_and_locate, best.total_power});
    current = std::move(positions);
    if (previous <= 0.0 || (previous - best.total_power) / previous < config.rel_tol) break;
  }
  return best;
}

DeploymentSolution baseline_sa1(std::span<const Point2d> users, std::span<const Rectd> sub_areas,
                                const VlcParamsd& params, const Requirementsd& reqs) {
  return fixed_solution(centers_of(sub_areas), geographic_association(users, sub_areas), users,
                        params, reqs);
}

DeploymentSolution baseline_sa2(std::span<const Rectd> sub_areas, const VlcParamsd& params,
                                const Requirementsd& reqs, std::span<const Point2d> users) {
  params.validate();
  reqs.validate();
  const auto coeffs = ConstraintCoefficientsd::from(params, reqs);
  DeploymentSolution sol;
  sol.uav_positions = centers_of(sub_areas);
  sol.association = users.empty() ? CellAssociation(sub_areas.size())
                                  : geographic_association(users, sub_areas);
  sol.per_uav_power.assign(sub_areas.size(), 0.0);
  for (std::size_t i = 0; i < sub_areas.size(); ++i) {
    if (auto p = min_power_for_radius(sub_areas[i].half_diagonal(), coeffs, params)) {
      sol.per_uav_power[i] = *p;
    } else {
      sol.per_uav_power[i] = std::numeric_limits<double>::infinity();
      sol.violations.push_back({i, std::nullopt});
    }
    sol.total_power += sol.per_uav_power[i];
  }
  sol.feasible = sol.violations.empty();
  sol.trace.push_back({0, Step::fixed, sol.total_power});
  return sol;
}

DeploymentSolution baseline_uavoo(std::span<const Point2d> users, std::span<const Rectd> sub_areas,
                                  const VlcParamsd& params, const Requirementsd& reqs) {
  auto association = geographic_association(users, sub_areas);
  auto positions = locate_uavs(association, users, centers_of(sub_areas));
  return fixed_solution(std::move(positions), std::move(association), users, params, reqs);
}

DeploymentSolution optimize_from_sub_areas(std::span<const Point2d> users,
                                           std::span<const Rectd> sub_areas,
                                           const VlcParamsd& params, const Requirementsd& reqs,
                                           const OptimizerConfig& config) {
  const auto centers = centers_of(sub_areas);
  return optimize(users, centers, params, reqs, config, geographic_association(users, sub_areas));
}

}  // namespace uavvlc

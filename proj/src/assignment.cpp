#include "uavvlc/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "uavvlc/rng.hpp"

namespace uavvlc {

bool CellAssociation::is_partition_of(std::size_t num_users) const {
  std::vector<int> seen(num_users, 0);
  std::size_t total = 0;
  for (const auto& cluster : clusters) {
    for (std::size_t u : cluster) {
      if (u >= num_users || seen[u]++) return false;
      ++total;
    }
  }
  return total == num_users;
}

std::vector<std::size_t> CellAssociation::serving_uav(std::size_t num_users) const {
  if (!is_partition_of(num_users)) {
    throw std::invalid_argument("serving_uav: association is not a partition of the users");
  }
  std::vector<std::size_t> out(num_users);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (std::size_t u : clusters[i]) out[u] = i;
  }
  return out;
}

CellAssociation greedy_min_size_clustering(std::span<const Point2d> uav_centers,
                                           std::span<const Point2d> users, double exponent,
                                           double height, const ClusteringOptions& options) {
  if (uav_centers.empty()) throw std::invalid_argument("greedy_min_size_clustering: no UAVs");
  if (!(height > 0)) throw std::invalid_argument("greedy_min_size_clustering: height must be > 0");

  const std::size_t k = uav_centers.size();
  std::vector<std::size_t> order(users.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (options.shuffle_seed) {
    Rng rng(*options.shuffle_seed);
    rng.shuffle(std::span<std::size_t>(order));
  }

  CellAssociation out(k);
  std::vector<double> reach(k, height);  // farthest 3D distance per cluster
  double running = 0.0;

  for (std::size_t user : order) {
    std::size_t best = k;
    double best_growth = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      const double r = (uav_centers[i] - users[user]).norm();
      if (std::atan2(r, height) > options.max_incidence) continue;
      const double d = std::hypot(r, height);
      const double grown = std::max(reach[i], d);
      const double base = (out.clusters[i].empty() && options.opening == OpeningCost::full)
                              ? 0.0
                              : std::pow(reach[i], exponent);
      const double growth = std::pow(grown, exponent) - base;
      if (growth < best_growth) {
        best_growth = growth;
        best = i;
      }
    }
    if (best == k) {
      throw InfeasibleError("user " + std::to_string(user) + " is outside every UAV's field of view",
                            user);
    }
    const double before = out.clusters[best].empty() ? 0.0 : std::pow(reach[best], exponent);
    out.clusters[best].push_back(user);
    reach[best] = std::max(reach[best], std::hypot((uav_centers[best] - users[user]).norm(), height));
    running += std::pow(reach[best], exponent) - before;
    if (options.running_cost) options.running_cost->push_back(running);
  }
  return out;
}

CellAssociation greedy_min_size_clustering(std::span<const Point2d> uav_centers,
                                           std::span<const Point2d> users,
                                           const VlcParamsd& params, ClusteringOptions options) {
  options.max_incidence = params.fov_semi_angle;
  return greedy_min_size_clustering(uav_centers, users, params.distance_exponent(),
                                    params.uav_height, options);
}

double cluster_cost(const CellAssociation& association, std::span<const Point2d> uav_centers,
                    std::span<const Point2d> users, double exponent, double height) {
  double total = 0.0;
  for (std::size_t i = 0; i < association.clusters.size(); ++i) {
    const auto& cluster = association.clusters[i];
    if (cluster.empty()) continue;
    double reach = 0.0;
    for (std::size_t u : cluster) {
      reach = std::max(reach, std::hypot((uav_centers[i] - users[u]).norm(), height));
    }
    total += std::pow(reach, exponent);
  }
  return total;
}

}  // namespace uavvlc

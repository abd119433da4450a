#ifndef UAVVLC_ASSIGNMENT_HPP
#define UAVVLC_ASSIGNMENT_HPP

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "uavvlc/channel.hpp"

namespace uavvlc {

/// Which users each UAV serves: clusters[i] holds the user indices of UAV i.
struct CellAssociation {
  std::vector<std::vector<std::size_t>> clusters;

  CellAssociation() = default;
  explicit CellAssociation(std::size_t num_uavs) : clusters(num_uavs) {}

  std::size_t num_uavs() const { return clusters.size(); }

  /// True when every index in [0, num_users) appears in exactly one cluster.
  bool is_partition_of(std::size_t num_users) const;

  /// Inverse map, user index to serving UAV. Requires a partition.
  std::vector<std::size_t> serving_uav(std::size_t num_users) const;

  friend bool operator==(const CellAssociation&, const CellAssociation&) = default;
};

/// Raised when a user cannot be served by any UAV.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::size_t user)
      : std::runtime_error(what), user_(user) {}
  std::size_t user() const { return user_; }

 private:
  std::size_t user_;
};

/// What joining an empty cluster costs.
enum class OpeningCost {
  /// d^e in full: an empty cluster contributes nothing to the association
  /// cost, so serving a first user adds that user's whole term.
  full,
  /// d^e - z^e, measured from the zero-radius disk's 3D reach z.
  above_floor,
};

struct ClusteringOptions {
  OpeningCost opening = OpeningCost::full;
  /// Incidence angle past which a UAV cannot serve a user (radians).
  double max_incidence = std::numbers::pi / 2;
  /// When set, users are visited in an order shuffled with this seed rather
  /// than by index.
  std::optional<std::uint64_t> shuffle_seed;
  /// When non-null, receives the association cost after every insertion.
  std::vector<double>* running_cost = nullptr;
};

/// Greedy min-size clustering with disks anchored at fixed UAV centers.
///
/// Every cluster starts as a zero-radius disk whose 3D reach is the flight
/// height. Users are visited one by one and each joins the UAV whose cost
/// max(R_i, d_ij)^e - R_i^e grows least, R_i being the current farthest 3D
/// distance in cluster i; see OpeningCost for empty clusters. Only UAVs whose
/// field of view covers the user are candidates, and ties go to the lowest UAV
/// index. Throws InfeasibleError when no UAV covers a user.
CellAssociation greedy_min_size_clustering(std::span<const Point2d> uav_centers,
                                           std::span<const Point2d> users, double exponent,
                                           double height, const ClusteringOptions& options = {});

/// Same, with the exponent, height and field of view taken from `params`.
CellAssociation greedy_min_size_clustering(std::span<const Point2d> uav_centers,
                                           std::span<const Point2d> users,
                                           const VlcParamsd& params,
                                           ClusteringOptions options = {});

/// Sum over nonempty clusters of (farthest 3D distance)^exponent.
double cluster_cost(const CellAssociation& association, std::span<const Point2d> uav_centers,
                    std::span<const Point2d> users, double exponent, double height);

}  // namespace uavvlc

#endif  // UAVVLC_ASSIGNMENT_HPP

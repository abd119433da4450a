#ifndef UAVVLC_OPTIMIZER_HPP
#define UAVVLC_OPTIMIZER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uavvlc/assignment.hpp"
#include "uavvlc/channel.hpp"
#include "uavvlc/geometry.hpp"

namespace uavvlc {

enum class Step { initial, locate, associate_and_locate, fixed };

std::string_view to_string(Step step);

struct TraceEntry {
  std::size_t round = 0;
  Step step = Step::initial;
  double total_power = 0.0;
};

/// A UAV that cannot reach a point it must serve: an assigned user, or for
/// the worst-case baseline (no user) its sub-area's farthest corner.
struct Violation {
  std::size_t uav = 0;
  std::optional<std::size_t> user;
};

struct PowerEvaluation {
  std::vector<double> per_uav_power;
  double total_power = 0.0;
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
};

struct DeploymentSolution {
  std::vector<Point2d> uav_positions;  // ground projections, all at params.uav_height
  CellAssociation association;
  std::vector<double> per_uav_power;
  double total_power = 0.0;
  std::vector<TraceEntry> trace;  // accepted states only; non-increasing
  bool feasible = false;
  std::vector<Violation> violations;
  std::optional<std::size_t> uncovered_user;
  /// Power of a final round that was worse than the best state and discarded.
  std::optional<double> rejected_round_power;
  std::size_t rounds = 0;
};

struct OptimizerConfig {
  std::size_t max_iters = 20;
  double rel_tol = 1e-9;
  OpeningCost opening = OpeningCost::full;
};

/// SED center of each cluster; empty clusters keep `previous[i]`.
std::vector<Point2d> locate_uavs(const CellAssociation& association, std::span<const Point2d> users,
                                 std::span<const Point2d> previous);

/// Per-UAV minimum power set by the farthest assigned user.
PowerEvaluation evaluate_power(std::span<const Point2d> positions,
                               const CellAssociation& association, std::span<const Point2d> users,
                               const ConstraintCoefficientsd& coeffs, const VlcParamsd& params);

/// Each user goes to the first sub-area containing it (closed rectangles, in
/// index order), or the nearest sub-area center if none does.
CellAssociation geographic_association(std::span<const Point2d> users,
                                       std::span<const Rectd> sub_areas);

/// Alternating location/association optimization.
///
/// With `initial_association` the run starts from that association at the
/// given positions and first relocates every UAV; otherwise the first round
/// associates by greedy clustering around the initial positions. Each round
/// reassociates from scratch around the current positions and then moves
/// every UAV to its cluster's SED center. The loop stops when a round fails
/// to improve by more than `rel_tol`, and the best state is returned.
DeploymentSolution optimize(std::span<const Point2d> users,
                            std::span<const Point2d> initial_positions, const VlcParamsd& params,
                            const Requirementsd& reqs, const OptimizerConfig& config = {},
                            const std::optional<CellAssociation>& initial_association = {});

/// UAVs fixed at the sub-area centers, serving the users of their sub-area.
DeploymentSolution baseline_sa1(std::span<const Point2d> users, std::span<const Rectd> sub_areas,
                                const VlcParamsd& params, const Requirementsd& reqs);

/// UAVs fixed at the sub-area centers with power for a user at the farthest
/// corner. User-independent; `users` only fills in the association.
DeploymentSolution baseline_sa2(std::span<const Rectd> sub_areas, const VlcParamsd& params,
                                const Requirementsd& reqs, std::span<const Point2d> users = {});

/// Geographic association, UAVs at the SED center of their sub-area's users.
DeploymentSolution baseline_uavoo(std::span<const Point2d> users, std::span<const Rectd> sub_areas,
                                  const VlcParamsd& params, const Requirementsd& reqs);

/// The proposed scheme started from the sub-area centers with geographic
/// association.
DeploymentSolution optimize_from_sub_areas(std::span<const Point2d> users,
                                           std::span<const Rectd> sub_areas,
                                           const VlcParamsd& params, const Requirementsd& reqs,
                                           const OptimizerConfig& config = {});

}  // namespace uavvlc

#endif  // UAVVLC_OPTIMIZER_HPP

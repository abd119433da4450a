#ifndef UAVVLC_GEOMETRY_HPP
#define UAVVLC_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "uavvlc/channel.hpp"
#include "uavvlc/rng.hpp"

namespace uavvlc {

template <typename Scalar>
struct Disk {
  Point2<Scalar> center = Point2<Scalar>::Zero();
  Scalar radius = Scalar(0);

  bool contains(const Point2<Scalar>& p, Scalar tol = Scalar(0)) const {
    return (p - center).norm() <= radius + tol;
  }
};

using Diskd = Disk<double>;

/// Axis-aligned rectangle [lo, hi] in the ground plane.
template <typename Scalar>
struct Rect {
  Point2<Scalar> lo = Point2<Scalar>::Zero();
  Point2<Scalar> hi = Point2<Scalar>::Zero();

  Point2<Scalar> center() const { return (lo + hi) / Scalar(2); }
  Point2<Scalar> size() const { return hi - lo; }
  Scalar area() const { return size().prod(); }

  bool contains(const Point2<Scalar>& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
  }

  /// Distance from the center to the farthest point of the rectangle.
  Scalar half_diagonal() const { return size().norm() / Scalar(2); }
};

using Rectd = Rect<double>;

namespace detail {

template <typename Scalar>
Scalar membership_tol(Scalar radius) {
  return Scalar(1e-10) * std::max(Scalar(1), radius);
}

template <typename Scalar>
bool covers(const Disk<Scalar>& d, const Point2<Scalar>& p) {
  return d.contains(p, membership_tol(d.radius));
}

template <typename Scalar>
Disk<Scalar> diameter_disk(const Point2<Scalar>& a, const Point2<Scalar>& b) {
  Disk<Scalar> d;
  d.center = (a + b) / Scalar(2);
  d.radius = std::max((a - d.center).norm(), (b - d.center).norm());
  return d;
}

/// Circle through three points, or nullopt when they are (nearly) collinear.
/// The collinearity guard is on the sine of the angle at `a`, so it does not
/// depend on the coordinate scale.
template <typename Scalar>
std::optional<Disk<Scalar>> circumcircle(const Point2<Scalar>& a, const Point2<Scalar>& b,
                                         const Point2<Scalar>& c) {
  const Point2<Scalar> ab = b - a;
  const Point2<Scalar> ac = c - a;
  const Scalar det = ab.x() * ac.y() - ab.y() * ac.x();
  if (std::abs(det) <= Scalar(1e-12) * ab.norm() * ac.norm() || det == Scalar(0)) {
    return std::nullopt;
  }
  // Perpendicular bisectors: 2 ab . u = |ab|^2, 2 ac . u = |ac|^2, with u = center - a.
  const Scalar lb = ab.squaredNorm();
  const Scalar lc = ac.squaredNorm();
  const Point2<Scalar> u((ac.y() * lb - ab.y() * lc) / (Scalar(2) * det),
                         (ab.x() * lc - ac.x() * lb) / (Scalar(2) * det));
  Disk<Scalar> d;
  d.center = a + u;
  d.radius = std::max({u.norm(), (b - d.center).norm(), (c - d.center).norm()});
  return d;
}

/// Disk with a, b, c on its boundary; degenerate triples fall back to the
/// diameter disk of the farthest pair.
template <typename Scalar>
Disk<Scalar> disk_through(const Point2<Scalar>& a, const Point2<Scalar>& b,
                          const Point2<Scalar>& c) {
  if (auto d = circumcircle(a, b, c)) return *d;
  const Scalar ab = (a - b).squaredNorm();
  const Scalar ac = (a - c).squaredNorm();
  const Scalar bc = (b - c).squaredNorm();
  if (ab >= ac && ab >= bc) return diameter_disk(a, b);
  if (ac >= bc) return diameter_disk(a, c);
  return diameter_disk(b, c);
}

template <typename Scalar>
Disk<Scalar> disk_with_two(std::span<const Point2<Scalar>> pts, const Point2<Scalar>& q1,
                           const Point2<Scalar>& q2) {
  Disk<Scalar> d = diameter_disk(q1, q2);
  for (const auto& p : pts) {
    if (!covers(d, p)) d = disk_through(q1, q2, p);
  }
  return d;
}

template <typename Scalar>
Disk<Scalar> disk_with_one(std::span<const Point2<Scalar>> pts, const Point2<Scalar>& q) {
  Disk<Scalar> d{q, Scalar(0)};
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (!covers(d, pts[j])) d = disk_with_two(pts.first(j), q, pts[j]);
  }
  return d;
}

}  // namespace detail

/// Smallest disk enclosing `points`, by randomized incremental construction.
///
/// The points are shuffled with `seed`, then inserted one at a time; a point
/// outside the current disk must lie on the boundary of the next one, which
/// bounds the nesting at three boundary points. A point that forced a rebuild
/// is moved to the front so later rebuilds meet it first.
template <typename Scalar>
Disk<Scalar> smallest_enclosing_disk(std::span<const Point2<Scalar>> points,
                                     std::uint64_t seed = 0) {
  if (points.empty()) throw std::invalid_argument("smallest_enclosing_disk: no points");
  std::vector<Point2<Scalar>> pts(points.begin(), points.end());
  Rng rng(seed);
  rng.shuffle(std::span<Point2<Scalar>>(pts));

  Disk<Scalar> d{pts[0], Scalar(0)};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (detail::covers(d, pts[i])) continue;
    d = detail::disk_with_one(std::span<const Point2<Scalar>>(pts).first(i), pts[i]);
    std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(i),
                pts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
  return d;
}

template <typename Scalar>
Disk<Scalar> smallest_enclosing_disk(const std::vector<Point2<Scalar>>& points,
                                     std::uint64_t seed = 0) {
  return smallest_enclosing_disk(std::span<const Point2<Scalar>>(points), seed);
}

/// Exhaustive smallest enclosing disk over every pair-diameter disk and every
/// triple circumcircle. O(n^4); test oracle for small sets.
template <typename Scalar>
Disk<Scalar> sed_bruteforce(std::span<const Point2<Scalar>> points) {
  if (points.empty()) throw std::invalid_argument("sed_bruteforce: no points");
  const std::size_t n = points.size();
  if (n == 1) return Disk<Scalar>{points[0], Scalar(0)};

  std::optional<Disk<Scalar>> best;
  auto consider = [&](const Disk<Scalar>& cand) {
    if (best && cand.radius >= best->radius) return;
    for (const auto& p : points) {
      if (!detail::covers(cand, p)) return;
    }
    best = cand;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      consider(detail::diameter_disk(points[i], points[j]));
      for (std::size_t k = j + 1; k < n; ++k) {
        if (auto c = detail::circumcircle(points[i], points[j], points[k])) consider(*c);
      }
    }
  }
  return *best;
}

template <typename Scalar>
Disk<Scalar> sed_bruteforce(const std::vector<Point2<Scalar>>& points) {
  return sed_bruteforce(std::span<const Point2<Scalar>>(points));
}

}  // namespace uavvlc

#endif  // UAVVLC_GEOMETRY_HPP

#ifndef UAVVLC_CHANNEL_HPP
#define UAVVLC_CHANNEL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace uavvlc {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Point3 = Eigen::Matrix<Scalar, 3, 1>;

using Point2d = Point2<double>;
using Point3d = Point3<double>;

template <typename Scalar>
constexpr Scalar deg_to_rad(Scalar deg) {
  return deg * std::numbers::pi_v<Scalar> / Scalar(180);
}

/// Lambertian emission order m = -ln 2 / ln cos(semi_angle).
///
/// Orders within a few ulps of an integer are snapped to it, so that the
/// common 60 and 45 degree LEDs give m = 1 and m = 2 exactly even though
/// cos(pi/3) is not representable.
template <typename Scalar>
Scalar lambertian_order(Scalar semi_angle) {
  using std::cos;
  using std::log;
  const Scalar c = cos(semi_angle);
  if (!(semi_angle > Scalar(0)) || !(semi_angle < std::numbers::pi_v<Scalar> / 2) || !(c < Scalar(1))) {
    throw std::domain_error("lambertian_order: semi-angle must lie in (0, pi/2)");
  }
  const Scalar m = -log(Scalar(2)) / log(c);
  const Scalar nearest = std::round(m);
  if (std::abs(m - nearest) <= Scalar(8) * std::numeric_limits<Scalar>::epsilon() * nearest) {
    return nearest;
  }
  return m;
}

/// Optical and geometric constants of one UAV-to-user link.
///
/// Angles are radians. The noise standard deviation and the illumination
/// factor share the units of the illuminance proxy xi * P * h.
template <typename Scalar>
struct VlcParams {
  Scalar detector_area = Scalar(1e-4);
  Scalar refractive_index = Scalar(1.5);
  Scalar tx_semi_angle = std::numbers::pi_v<Scalar> / Scalar(3);
  Scalar fov_semi_angle = std::numbers::pi_v<Scalar> / Scalar(3);
  Scalar noise_std = Scalar(1e-10);
  Scalar illum_factor = Scalar(1);
  Scalar uav_height = Scalar(8);

  void validate() const {
    const Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
    if (!(detector_area > 0)) throw std::invalid_argument("detector_area must be > 0");
    if (!(refractive_index >= 1)) throw std::invalid_argument("refractive_index must be >= 1");
    if (!(tx_semi_angle > 0 && tx_semi_angle < half_pi))
      throw std::invalid_argument("tx_semi_angle must lie in (0, 90) degrees");
    if (!(fov_semi_angle > 0 && fov_semi_angle <= half_pi))
      throw std::invalid_argument("fov_semi_angle must lie in (0, 90] degrees");
    if (!(noise_std > 0)) throw std::invalid_argument("noise_std must be > 0");
    if (!(illum_factor > 0)) throw std::invalid_argument("illum_factor must be > 0");
    if (!(uav_height > 0)) throw std::invalid_argument("uav_height must be > 0");
  }

  Scalar lambertian() const { return lambertian_order(tx_semi_angle); }

  /// Exponent of the 3D distance in the minimum-power law, m + 3.
  Scalar distance_exponent() const { return lambertian() + Scalar(3); }

  /// Largest horizontal offset whose incidence angle is still inside the FOV.
  Scalar fov_ground_radius() const {
    const Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
    if (fov_semi_angle >= half_pi) return std::numeric_limits<Scalar>::infinity();
    return uav_height * std::tan(fov_semi_angle);
  }
};

template <typename Scalar>
struct Requirements {
  Scalar rate_threshold = Scalar(2);   // bits per transmission
  Scalar illum_threshold = Scalar(0);  // threshold on xi * P * h

  void validate() const {
    if (!(rate_threshold >= 0)) throw std::invalid_argument("rate_threshold must be >= 0");
    if (!(illum_threshold >= 0)) throw std::invalid_argument("illum_threshold must be >= 0");
    if (rate_threshold == 0 && illum_threshold == 0)
      throw std::invalid_argument("rate_threshold and illum_threshold cannot both be zero");
  }
};

using VlcParamsd = VlcParams<double>;
using Requirementsd = Requirements<double>;

/// True when a user `r` meters away horizontally is inside the receiver FOV.
template <typename Scalar>
bool in_field_of_view(Scalar r, const VlcParams<Scalar>& params) {
  return std::atan2(r, params.uav_height) <= params.fov_semi_angle;
}

/// Receiver concentrator gain: n_r^2 / sin^2(FOV) inside the field of view, else 0.
template <typename Scalar>
Scalar concentrator_gain(Scalar incidence, const VlcParams<Scalar>& params) {
  if (incidence < 0 || incidence > params.fov_semi_angle) return Scalar(0);
  const Scalar s = std::sin(params.fov_semi_angle);
  return params.refractive_index * params.refractive_index / (s * s);
}

/// Line-of-sight Lambertian gain for a downward-facing LED at `uav` and an
/// upward-facing detector at `user` on the ground. Zero outside the FOV.
template <typename Scalar>
Scalar channel_gain(const Point3<Scalar>& uav, const Point2<Scalar>& user,
                    const VlcParams<Scalar>& params) {
  const Scalar height = uav.z();
  if (!(height > 0)) throw std::domain_error("channel_gain: UAV height must be > 0");
  const Scalar r = (uav.template head<2>() - user).norm();
  const Scalar incidence = std::atan2(r, height);
  const Scalar g = concentrator_gain(incidence, params);
  if (g == Scalar(0)) return Scalar(0);
  const Scalar m = params.lambertian();
  const Scalar d2 = r * r + height * height;
  const Scalar cos_angle = height / std::sqrt(d2);
  return (m + 1) * params.detector_area / (Scalar(2) * std::numbers::pi_v<Scalar> * d2) * g *
         std::pow(cos_angle, m) * cos_angle;
}

/// Gain to a user at horizontal distance `r` from a UAV at params.uav_height.
template <typename Scalar>
Scalar channel_gain_at(Scalar r, const VlcParams<Scalar>& params) {
  return channel_gain<Scalar>(Point3<Scalar>(0, 0, params.uav_height), Point2<Scalar>(r, 0),
                              params);
}

/// 2^(2 C) - 1, the SNR factor a rate of C bits per transmission demands.
template <typename Scalar>
Scalar rate_excess(Scalar rate) {
  return std::expm1(Scalar(2) * std::numbers::ln2_v<Scalar> * rate);
}

/// Lower bound 1/2 log2(1 + e/(2 pi) (xi P h / sigma)^2) on link capacity.
template <typename Scalar>
Scalar capacity_lower_bound(Scalar power, Scalar gain, const VlcParams<Scalar>& params) {
  const Scalar snr = params.illum_factor * power * gain / params.noise_std;
  const Scalar arg = std::numbers::e_v<Scalar> / (Scalar(2) * std::numbers::pi_v<Scalar>) * snr * snr;
  return std::log1p(arg) / (Scalar(2) * std::numbers::ln2_v<Scalar>);
}

/// Smallest power meeting the rate threshold; nullopt when the user is out of view.
template <typename Scalar>
std::optional<Scalar> min_power_rate(Scalar gain, const Requirements<Scalar>& reqs,
                                     const VlcParams<Scalar>& params) {
  if (!(gain > 0)) return std::nullopt;
  return params.noise_std *
         std::sqrt(Scalar(2) * std::numbers::pi_v<Scalar> / std::numbers::e_v<Scalar> *
                   rate_excess(reqs.rate_threshold)) /
         (params.illum_factor * gain);
}

/// Smallest power meeting the illumination threshold; nullopt when out of view.
template <typename Scalar>
std::optional<Scalar> min_power_illum(Scalar gain, const Requirements<Scalar>& reqs,
                                      const VlcParams<Scalar>& params) {
  if (!(gain > 0)) return std::nullopt;
  return reqs.illum_threshold / (params.illum_factor * gain);
}

/// Position-independent factors of the two constraints once the channel is
/// substituted: P >= v_illum * d^(m+3) and P >= rate_ratio * d^(m+3).
template <typename Scalar>
struct ConstraintCoefficients {
  Scalar v_illum{};
  Scalar rate_ratio{};
  Scalar exponent{};

  Scalar prefactor() const { return std::max(v_illum, rate_ratio); }
  bool rate_binding() const { return rate_ratio >= v_illum; }

  static ConstraintCoefficients from(const VlcParams<Scalar>& params,
                                     const Requirements<Scalar>& reqs) {
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    const Scalar m = params.lambertian();
    const Scalar g = concentrator_gain(Scalar(0), params);
    // Common denominator (m+1) A g z^(m+1); xi enters V and N alike.
    const Scalar link = (m + 1) * params.detector_area * g * std::pow(params.uav_height, m + 1);
    const Scalar numerator_m = std::pow(two_pi, Scalar(1.5)) * params.noise_std *
                               std::sqrt(rate_excess(reqs.rate_threshold) / std::numbers::e_v<Scalar>);
    ConstraintCoefficients c;
    c.v_illum = two_pi * reqs.illum_threshold / (link * params.illum_factor);
    c.rate_ratio = numerator_m / (params.illum_factor * link);
    c.exponent = m + Scalar(3);
    return c;
  }
};

using ConstraintCoefficientsd = ConstraintCoefficients<double>;

/// Minimum UAV power when its farthest served user is `r` meters away
/// horizontally: max(V, M/N) * (r^2 + z^2)^((m+3)/2). nullopt past the FOV.
template <typename Scalar>
std::optional<Scalar> min_power_for_radius(Scalar r, const ConstraintCoefficients<Scalar>& coeffs,
                                           const VlcParams<Scalar>& params) {
  if (r < 0) throw std::domain_error("min_power_for_radius: negative radius");
  if (!in_field_of_view(r, params)) return std::nullopt;
  const Scalar d2 = r * r + params.uav_height * params.uav_height;
  return coeffs.prefactor() * std::pow(d2, coeffs.exponent / Scalar(2));
}

}  // namespace uavvlc

#endif  // UAVVLC_CHANNEL_HPP

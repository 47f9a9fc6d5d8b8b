#include "satmimo/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "satmimo/errors.hpp"

namespace satmimo {

std::vector<SpaceAnglePair> sample_space_angles(RngStream& rng, int count, double half_width) {
  if (count < 0) throw std::invalid_argument("sample_space_angles: count must be >= 0");
  const double max_hw = 1.0 / std::sqrt(2.0);
  if (!(half_width > 0.0) || half_width > max_hw) {
    throw std::invalid_argument("sample_space_angles: half_width must be in (0, 1/sqrt(2)]");
  }
  std::vector<SpaceAnglePair> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    SpaceAnglePair p;
    p.theta_x = rng.uniform(-half_width, half_width);
    p.theta_y = rng.uniform(-half_width, half_width);
    out.push_back(p);
  }
  return out;
}

double nadir_angle(const SpaceAnglePair& p) {
  const double s = p.theta_x * p.theta_x + p.theta_y * p.theta_y;
  if (s > 1.0) {
    throw std::domain_error("nadir_angle: theta_x^2 + theta_y^2 > 1 is not a physical direction");
  }
  return std::acos(std::sqrt(1.0 - s));
}

LinkGeometry slant_distance(double nadir_rad, const OrbitConfig& orbit) {
  if (!(orbit.earth_radius_km > 0.0) || !(orbit.altitude_km > 0.0)) {
    throw std::invalid_argument("slant_distance: orbit radii must be positive");
  }
  const double re = orbit.earth_radius_km;
  const double rs = orbit.orbit_radius_km();
  const double sin_nadir = std::sin(nadir_rad);
  if (sin_nadir * (rs / re) > 1.0) {
    throw InfeasibleGeometryError("slant_distance: nadir angle " + std::to_string(nadir_rad) +
                                  " rad points beyond the horizon");
  }
  LinkGeometry geo;
  geo.nadir_angle_rad = nadir_rad;
  geo.central_angle_rad = std::asin((rs / re) * sin_nadir) - nadir_rad;
  geo.slant_distance_km =
      std::sqrt(re * re + rs * rs - 2.0 * re * rs * std::cos(geo.central_angle_rad));
  return geo;
}

double channel_power_beta(double distance_km, const RfConfig& rf, int m_sat, int n_ut) {
  if (!(distance_km > 0.0)) throw std::invalid_argument("channel_power_beta: distance must be > 0");
  if (m_sat < 1 || n_ut < 1) {
    throw std::invalid_argument("channel_power_beta: antenna counts must be >= 1");
  }
  const double lambda = rf.wavelength_m();
  const double d_m = distance_km * 1000.0;
  const double denom = 4.0 * std::numbers::pi * d_m;
  return rf.sat_gain * rf.ut_gain * static_cast<double>(n_ut) * static_cast<double>(m_sat) *
         lambda * lambda / (denom * denom);
}

double noise_power(const RfConfig& rf) { return kBoltzmann * rf.noise_temp_k * rf.bandwidth_hz; }

}  // namespace satmimo

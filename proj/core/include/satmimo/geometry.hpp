#pragma once

#include <vector>

#include "satmimo/rng.hpp"

namespace satmimo {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kBoltzmann = 1.38e-23;        // J/K

struct OrbitConfig {
  double earth_radius_km{6378.0};
  double altitude_km{1000.0};

  double orbit_radius_km() const { return earth_radius_km + altitude_km; }
};

// RF parameters in linear scale. dB-valued inputs are converted once at the
// configuration boundary; all internal math stays linear.
struct RfConfig {
  double carrier_hz{2e9};
  double bandwidth_hz{20e6};
  double noise_temp_k{300.0};
  double sat_gain{1.0};  // per-element, linear
  double ut_gain{1.0};   // per-element, linear

  double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
};

// Direction-cosine coordinates of a UT as seen from the satellite boresight.
// Physical placements require theta_x^2 + theta_y^2 <= 1.
struct SpaceAnglePair {
  double theta_x{0.0};
  double theta_y{0.0};
};

struct LinkGeometry {
  double nadir_angle_rad{0.0};
  double central_angle_rad{0.0};
  double slant_distance_km{0.0};
};

// Each coordinate i.i.d. uniform on [-half_width, half_width].
// Requires 0 < half_width <= 1/sqrt(2) so every pair stays physical.
std::vector<SpaceAnglePair> sample_space_angles(RngStream& rng, int count, double half_width);

// arccos(sqrt(1 - theta_x^2 - theta_y^2)), in [0, pi/2].
double nadir_angle(const SpaceAnglePair& p);

// Earth central angle and slant distance from the spherical triangle
// satellite / UT / earth center. Throws InfeasibleGeometryError when the
// nadir angle points beyond the horizon.
LinkGeometry slant_distance(double nadir_rad, const OrbitConfig& orbit);

// Average channel power: beta = G_sat * G_ut * N * M * lambda^2 / (4 pi D)^2.
double channel_power_beta(double distance_km, const RfConfig& rf, int m_sat, int n_ut);

// k_B * T_n * B, in watts.
double noise_power(const RfConfig& rf);

}  // namespace satmimo

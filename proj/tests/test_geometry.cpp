#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "satmimo/errors.hpp"
#include "satmimo/geometry.hpp"
#include "satmimo/rng.hpp"

using namespace satmimo;

namespace {
const OrbitConfig kOrbit{6378.0, 1000.0};

RfConfig table_rf() {
  RfConfig rf;
  rf.carrier_hz = 2e9;
  rf.bandwidth_hz = 20e6;
  rf.noise_temp_k = 300.0;
  rf.sat_gain = std::pow(10.0, 0.3);
  rf.ut_gain = std::pow(10.0, 0.3);
  return rf;
}
}  // namespace

TEST_CASE("sample_space_angles basic contracts") {
  RngStream rng(7);
  CHECK(sample_space_angles(rng, 0, 0.5).empty());

  RngStream a(123);
  RngStream b(123);
  const auto first = sample_space_angles(a, 4, 0.5);
  const auto second = sample_space_angles(b, 4, 0.5);
  REQUIRE(first.size() == 4);
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].theta_x == second[i].theta_x);
    CHECK(first[i].theta_y == second[i].theta_y);
  }

  RngStream c(5);
  CHECK_THROWS_AS(sample_space_angles(c, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sample_space_angles(c, 1, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(sample_space_angles(c, 1, -0.5), std::invalid_argument);
}

TEST_CASE("sample_space_angles means vanish within 3 sigma") {
  RngStream rng(20240901);
  const int n = 200000;
  const auto pairs = sample_space_angles(rng, n, 0.5);
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : pairs) {
    mx += p.theta_x;
    my += p.theta_y;
    CHECK(std::abs(p.theta_x) <= 0.5);
    CHECK(std::abs(p.theta_y) <= 0.5);
  }
  mx /= n;
  my /= n;
  const double three_sigma = 3.0 / std::sqrt(12.0 * n);
  CHECK(std::abs(mx) <= three_sigma);
  CHECK(std::abs(my) <= three_sigma);
}

TEST_CASE("nadir_angle analytic points") {
  CHECK(nadir_angle({0.0, 0.0}) == 0.0);
  CHECK(nadir_angle({0.5, 0.5}) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));
  CHECK(nadir_angle({0.6, 0.8}) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
  CHECK_THROWS_AS(nadir_angle({0.8, 0.7}), std::domain_error);
}

TEST_CASE("nadir_angle invariant under sign flips and swap") {
  RngStream rng(3);
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(-0.5, 0.5);
    const double y = rng.uniform(-0.5, 0.5);
    const double base = nadir_angle({x, y});
    CHECK(nadir_angle({-x, y}) == base);
    CHECK(nadir_angle({x, -y}) == base);
    CHECK(nadir_angle({y, x}) == base);
  }
}

TEST_CASE("slant_distance sub-satellite point and frozen oracle") {
  const LinkGeometry nadir0 = slant_distance(0.0, kOrbit);
  CHECK(nadir0.slant_distance_km == 1000.0);
  CHECK(nadir0.central_angle_rad == 0.0);

  // High-precision scalar oracle values for nadir = pi/4, Re = 6378, H = 1000.
  const LinkGeometry quarter = slant_distance(std::numbers::pi / 4, kOrbit);
  CHECK(quarter.central_angle_rad == doctest::Approx(0.17248088662098057).epsilon(1e-12));
  CHECK(quarter.slant_distance_km == doctest::Approx(1548.0500485830354).epsilon(1e-12));
  CHECK(quarter.slant_distance_km >= kOrbit.altitude_km);

  CHECK_THROWS_AS(slant_distance(80.0 * std::numbers::pi / 180.0, kOrbit),
                  InfeasibleGeometryError);
}

TEST_CASE("channel_power_beta frozen oracle and scaling laws") {
  const RfConfig rf = table_rf();
  // Independent scalar-oracle product for G = 3 dB, M = 256, N = 36,
  // f_c = 2 GHz, D = 1000 km.
  CHECK(channel_power_beta(1000.0, rf, 256, 36) ==
        doctest::Approx(5.220404466366694e-12).epsilon(1e-12));

  const double near = channel_power_beta(700.0, rf, 256, 36);
  const double far = channel_power_beta(1400.0, rf, 256, 36);
  CHECK(far == doctest::Approx(near / 4.0).epsilon(1e-14));

  RfConfig unit;
  unit.carrier_hz = kSpeedOfLight / (4.0 * std::numbers::pi);  // wavelength 4 pi m
  unit.sat_gain = 1.0;
  unit.ut_gain = 1.0;
  CHECK(channel_power_beta(0.001, unit, 1, 1) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(channel_power_beta(0.0, rf, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(channel_power_beta(-5.0, rf, 4, 4), std::invalid_argument);
}

TEST_CASE("beta times distance squared is constant") {
  const RfConfig rf = table_rf();
  const double ref = channel_power_beta(800.0, rf, 64, 36) * 800.0 * 800.0;
  for (const double d : {500.0, 1000.0, 1548.05, 2300.0}) {
    CHECK(channel_power_beta(d, rf, 64, 36) * d * d == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("noise_power") {
  RfConfig rf = table_rf();
  CHECK(noise_power(rf) == doctest::Approx(8.28e-14).epsilon(1e-15));

  RfConfig zero_bw = rf;
  zero_bw.bandwidth_hz = 0.0;
  CHECK(noise_power(zero_bw) == 0.0);

  RfConfig hot = rf;
  hot.noise_temp_k = 600.0;
  CHECK(noise_power(hot) == doctest::Approx(2.0 * noise_power(rf)).epsilon(1e-15));
}

TEST_CASE("operations are pure") {
  const RfConfig rf = table_rf();
  CHECK(channel_power_beta(1234.5, rf, 64, 36) == channel_power_beta(1234.5, rf, 64, 36));
  const LinkGeometry g1 = slant_distance(0.3, kOrbit);
  const LinkGeometry g2 = slant_distance(0.3, kOrbit);
  CHECK(g1.slant_distance_km == g2.slant_distance_km);
  CHECK(g1.central_angle_rad == g2.central_angle_rad);
}

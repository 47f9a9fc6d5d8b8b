#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "satmimo/channel.hpp"
#include "satmimo/geometry.hpp"
#include "satmimo/precoding.hpp"

namespace satmimo {

enum class Algorithm { kMm, kWmmse, kLmo, kAslnr, kLos, kWf };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(std::string_view name);

// A batch experiment description. dB-valued file keys (gains, kappa) are
// converted to linear scale during parsing; the power grid stays in dBW
// because it labels the sweep.
struct ScenarioConfig {
  OrbitConfig orbit;
  RfConfig rf;
  UpaGeometry sat_array{8, 8, 1.0, 1.0};
  UpaGeometry ut_array{6, 6, 1.0, 1.0};
  int num_uts{16};
  double kappa{1.0};  // linear
  SigmaModel sigma_model{SigmaModel::kUniform};
  double sigma_rho{0.5};
  std::vector<double> power_grid_dbw{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
  std::vector<std::uint64_t> seeds{1};
  int samples{1000};
  std::vector<Algorithm> algorithms{Algorithm::kMm,    Algorithm::kWmmse, Algorithm::kLmo,
                                    Algorithm::kAslnr, Algorithm::kLos,   Algorithm::kWf};
  double eps{1e-3};
  int max_iter{200};
};

// Parse `key = value` lines ('#' comments, comma-separated arrays). Unknown
// keys and invariant violations raise ConfigError naming the offending key.
// Empty input yields the desk-scale defaults above.
ScenarioConfig parse_config(std::string_view text);

// parse_config over the file contents; missing file raises ConfigError.
ScenarioConfig load_config(const std::string& path);

// Substream purposes hung off RngStream(seed).
inline constexpr std::uint64_t kStreamPlacement = 1;
inline constexpr std::uint64_t kStreamAoa = 2;
inline constexpr std::uint64_t kStreamTraining = 3;
inline constexpr std::uint64_t kStreamEvaluation = 4;

// Draw UT placements for one seed and assemble the per-UT statistical CSI:
// g from the satellite UPA at the sampled space angles, beta from the link
// budget at the implied slant range, d0 from the UT UPA at a random arrival
// pair, Sigma from the configured model.
std::vector<UtChannelStats> build_instance(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace satmimo

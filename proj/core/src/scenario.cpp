#include "satmimo/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "satmimo/errors.hpp"
#include "satmimo/numeric.hpp"

namespace satmimo {

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kMm: return "mm";
    case Algorithm::kWmmse: return "wmmse";
    case Algorithm::kLmo: return "lmo";
    case Algorithm::kAslnr: return "aslnr";
    case Algorithm::kLos: return "los";
    case Algorithm::kWf: return "wf";
  }
  throw std::invalid_argument("algorithm_name: unknown algorithm");
}

Algorithm algorithm_from_name(std::string_view name) {
  if (name == "mm") return Algorithm::kMm;
  if (name == "wmmse") return Algorithm::kWmmse;
  if (name == "lmo") return Algorithm::kLmo;
  if (name == "aslnr") return Algorithm::kAslnr;
  if (name == "los") return Algorithm::kLos;
  if (name == "wf") return Algorithm::kWf;
  throw ConfigError("algorithms: unknown algorithm '" + std::string(name) + "'");
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse '" + value + "' as a number");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse '" + value + "' as an integer");
  }
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "earth_radius_km", "altitude_km", "carrier_ghz", "bandwidth_mhz", "noise_temp_k",
      "sat_gain_db",     "ut_gain_db",  "sat_nx",      "sat_ny",        "ut_nx",
      "ut_ny",           "num_uts",     "kappa_db",    "sigma_model",   "sigma_rho",
      "power_dbw",       "seeds",       "samples",     "algorithms",    "eps",
      "max_iter"};
  return keys;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key + ": " + what);
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::unordered_map<std::string, std::string> kv;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (!known_keys().contains(key)) throw ConfigError(key + ": unknown configuration key");
    require(!value.empty(), key, "empty value");
    kv[key] = value;
  }

  const auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  if (const auto* v = get("earth_radius_km")) cfg.orbit.earth_radius_km = parse_double("earth_radius_km", *v);
  if (const auto* v = get("altitude_km")) cfg.orbit.altitude_km = parse_double("altitude_km", *v);
  if (const auto* v = get("carrier_ghz")) cfg.rf.carrier_hz = parse_double("carrier_ghz", *v) * 1e9;
  if (const auto* v = get("bandwidth_mhz")) cfg.rf.bandwidth_hz = parse_double("bandwidth_mhz", *v) * 1e6;
  if (const auto* v = get("noise_temp_k")) cfg.rf.noise_temp_k = parse_double("noise_temp_k", *v);
  cfg.rf.sat_gain = db_to_linear(get("sat_gain_db") ? parse_double("sat_gain_db", *get("sat_gain_db")) : 3.0);
  cfg.rf.ut_gain = db_to_linear(get("ut_gain_db") ? parse_double("ut_gain_db", *get("ut_gain_db")) : 3.0);
  if (const auto* v = get("sat_nx")) cfg.sat_array.nx = static_cast<int>(parse_int("sat_nx", *v));
  if (const auto* v = get("sat_ny")) cfg.sat_array.ny = static_cast<int>(parse_int("sat_ny", *v));
  if (const auto* v = get("ut_nx")) cfg.ut_array.nx = static_cast<int>(parse_int("ut_nx", *v));
  if (const auto* v = get("ut_ny")) cfg.ut_array.ny = static_cast<int>(parse_int("ut_ny", *v));
  if (const auto* v = get("num_uts")) cfg.num_uts = static_cast<int>(parse_int("num_uts", *v));
  cfg.kappa = db_to_linear(get("kappa_db") ? parse_double("kappa_db", *get("kappa_db")) : 0.0);
  if (const auto* v = get("sigma_model")) {
    if (*v == "uniform") {
      cfg.sigma_model = SigmaModel::kUniform;
    } else if (*v == "exp_corr") {
      cfg.sigma_model = SigmaModel::kExpCorr;
    } else {
      throw ConfigError("sigma_model: expected 'uniform' or 'exp_corr', got '" + *v + "'");
    }
  }
  if (const auto* v = get("sigma_rho")) cfg.sigma_rho = parse_double("sigma_rho", *v);
  if (const auto* v = get("power_dbw")) {
    cfg.power_grid_dbw.clear();
    for (const std::string& item : split_csv(*v)) {
      cfg.power_grid_dbw.push_back(parse_double("power_dbw", item));
    }
  }
  if (const auto* v = get("seeds")) {
    cfg.seeds.clear();
    for (const std::string& item : split_csv(*v)) {
      const long long s = parse_int("seeds", item);
      require(s >= 0, "seeds", "seeds must be nonnegative");
      cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }
  if (const auto* v = get("samples")) cfg.samples = static_cast<int>(parse_int("samples", *v));
  if (const auto* v = get("algorithms")) {
    cfg.algorithms.clear();
    for (const std::string& item : split_csv(*v)) {
      cfg.algorithms.push_back(algorithm_from_name(item));
    }
  }
  if (const auto* v = get("eps")) cfg.eps = parse_double("eps", *v);
  if (const auto* v = get("max_iter")) cfg.max_iter = static_cast<int>(parse_int("max_iter", *v));

  require(cfg.orbit.earth_radius_km > 0.0, "earth_radius_km", "must be > 0");
  require(cfg.orbit.altitude_km > 0.0, "altitude_km", "must be > 0");
  require(cfg.rf.carrier_hz > 0.0, "carrier_ghz", "must be > 0");
  require(cfg.rf.bandwidth_hz > 0.0, "bandwidth_mhz", "must be > 0");
  require(cfg.rf.noise_temp_k > 0.0, "noise_temp_k", "must be > 0");
  require(cfg.sat_array.nx >= 1, "sat_nx", "must be >= 1");
  require(cfg.sat_array.ny >= 1, "sat_ny", "must be >= 1");
  require(cfg.ut_array.nx >= 1, "ut_nx", "must be >= 1");
  require(cfg.ut_array.ny >= 1, "ut_ny", "must be >= 1");
  require(cfg.num_uts >= 1, "num_uts", "must be >= 1");
  require(cfg.sigma_rho >= 0.0 && cfg.sigma_rho < 1.0, "sigma_rho", "must be in [0, 1)");
  require(!cfg.power_grid_dbw.empty(), "power_dbw", "power grid must be non-empty");
  require(!cfg.seeds.empty(), "seeds", "need at least one seed");
  require(cfg.samples >= 1, "samples", "must be >= 1");
  require(!cfg.algorithms.empty(), "algorithms", "need at least one algorithm");
  require(cfg.eps > 0.0, "eps", "must be > 0");
  require(cfg.max_iter >= 1, "max_iter", "must be >= 1");
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::vector<UtChannelStats> build_instance(const ScenarioConfig& cfg, std::uint64_t seed) {
  const RngStream root(seed);
  RngStream placement = root.substream(kStreamPlacement);
  RngStream arrival = root.substream(kStreamAoa);

  const std::vector<SpaceAnglePair> angles =
      sample_space_angles(placement, cfg.num_uts, 0.5);
  const std::vector<SpaceAnglePair> aoa = sample_space_angles(arrival, cfg.num_uts, 0.5);

  const double sigma2 = noise_power(cfg.rf);
  const CMat sigma_cov =
      build_sigma(cfg.sigma_model, cfg.ut_array.size(), cfg.sigma_rho);

  std::vector<UtChannelStats> stats;
  stats.reserve(static_cast<std::size_t>(cfg.num_uts));
  for (int k = 0; k < cfg.num_uts; ++k) {
    const LinkGeometry link = slant_distance(nadir_angle(angles[static_cast<std::size_t>(k)]), cfg.orbit);
    const double beta = channel_power_beta(link.slant_distance_km, cfg.rf, cfg.sat_array.size(),
                                           cfg.ut_array.size());
    stats.push_back(make_ut_stats(beta, cfg.kappa,
                                  upa_response(cfg.sat_array, angles[static_cast<std::size_t>(k)]),
                                  upa_response(cfg.ut_array, aoa[static_cast<std::size_t>(k)]),
                                  sigma_cov, sigma2));
  }
  return stats;
}

}  // namespace satmimo

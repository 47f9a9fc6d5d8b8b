#pragma once

#include <stdexcept>

namespace satmimo {

// A UT placement falls beyond the satellite horizon.
struct InfeasibleGeometryError : std::domain_error {
  using std::domain_error::domain_error;
};

// Every update direction vanished (e.g. all b_k = 0). Callers may restart
// from a different initialization.
struct DegenerateDirectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical invariant broke: non-positive MMSE, failed factorization.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input data violates a documented invariant (e.g. covariance not PSD).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precoder recovery failed (singular or indefinite coupling system).
struct RecoveryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario configuration is missing, malformed, or inconsistent.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File could not be written or read.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace satmimo

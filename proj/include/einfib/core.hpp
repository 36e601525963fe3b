#pragma once

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

namespace einfib {

inline constexpr const char* kVersion = "0.1.0";

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input; the CLI maps it to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// Ambiguous clustering, non-convergence, missing constants; exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kDefaultEpsilon = 1e-9;
inline constexpr const char* kToleranceEnv = "EINFIB_TOLERANCE";

struct Tolerances {
  double epsilon = kDefaultEpsilon;  // rank, containment, scalarity
  double einstein_defect = 1e-7;     // oracle acceptance of a solution
  double dedup = 1e-6;               // distinct solutions after normalization
};

inline double parse_positive(const std::string& text, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE || !(v > 0.0) || !std::isfinite(v))
    throw InputError(what + ": expected a positive number, got '" + text + "'");
  return v;
}

// Command-line flag, then EINFIB_TOLERANCE, then the built-in default.
inline double resolve_epsilon(std::optional<double> flag) {
  if (flag) {
    if (!(*flag > 0.0)) throw InputError("tolerance must be positive");
    return *flag;
  }
  if (const char* env = std::getenv(kToleranceEnv); env && *env)
    return parse_positive(env, kToleranceEnv);
  return kDefaultEpsilon;
}

}  // namespace einfib

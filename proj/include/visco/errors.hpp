#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <vector>

namespace visco {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A point outside the reference domain, or a time outside (0, T].
struct DomainError : Error {
  using Error::Error;
};

/// det F <= 0 encountered where the energy barrier requires det F > 0.
struct BarrierError : Error {
  BarrierError(const std::string& msg, Eigen::Vector2d where, double det_value)
      : Error(msg), point(where), det(det_value) {}
  Eigen::Vector2d point{0, 0};
  double det = 0;
};

/// Rasterization sample density cannot honor the measured Lipschitz bound.
struct SamplingError : Error {
  using Error::Error;
};

/// Invalid run configuration; carries every violation found, not just the first.
struct ConfigError : Error {
  explicit ConfigError(std::vector<std::string> problems)
      : Error(join(problems)), violations(std::move(problems)) {}
  std::vector<std::string> violations;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid configuration:";
    for (const auto& p : v) s += "\n  - " + p;
    return s;
  }
};

}  // namespace visco

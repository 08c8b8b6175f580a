#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>

#include "fedelastic/errors.hpp"

namespace fedelastic {

// Flat model coordinates; also carries updates, control variates, and the
// server drift accumulator. Always 64-bit.
using ParamVector = Eigen::VectorXd;

// Coordinate-wise sign with sign(0) = 0.
inline ParamVector sign_of(const ParamVector& v) {
  return v.unaryExpr([](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
}

inline void check_finite(const ParamVector& v, const std::string& what) {
  if (!v.allFinite())
    throw DiagnosticsError(what + ": non-finite entries in parameter vector");
}

inline double soft_threshold(double v, double tau) {
  if (v > tau) return v - tau;
  if (v < -tau) return v + tau;
  return 0.0;
}

inline ParamVector soft_threshold(const ParamVector& v, double tau) {
  return v.unaryExpr([tau](double x) { return soft_threshold(x, tau); });
}

}  // namespace fedelastic

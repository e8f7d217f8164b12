#pragma once

#include <Eigen/Core>
#include <array>

namespace visco {

/// Second deformation gradient G_{aij} = d^2 y_a / dx_i dx_j, stored as one
/// symmetric 2x2 matrix per deformed component a.
struct SecondGradient {
  std::array<Eigen::Matrix2d, 2> comp;

  static SecondGradient Zero() {
    SecondGradient g;
    g.comp[0].setZero();
    g.comp[1].setZero();
    return g;
  }

  double squaredNorm() const {
    return comp[0].squaredNorm() + comp[1].squaredNorm();
  }
  double norm() const { return std::sqrt(squaredNorm()); }

  SecondGradient& operator+=(const SecondGradient& o) {
    comp[0] += o.comp[0];
    comp[1] += o.comp[1];
    return *this;
  }
  SecondGradient& operator-=(const SecondGradient& o) {
    comp[0] -= o.comp[0];
    comp[1] -= o.comp[1];
    return *this;
  }
  SecondGradient& operator*=(double s) {
    comp[0] *= s;
    comp[1] *= s;
    return *this;
  }

  friend SecondGradient operator+(SecondGradient a, const SecondGradient& b) { return a += b; }
  friend SecondGradient operator-(SecondGradient a, const SecondGradient& b) { return a -= b; }
  friend SecondGradient operator*(double s, SecondGradient g) { return g *= s; }
};

/// Triple contraction A : B over all three indices.
inline double contract(const SecondGradient& a, const SecondGradient& b) {
  return a.comp[0].cwiseProduct(b.comp[0]).sum() + a.comp[1].cwiseProduct(b.comp[1]).sum();
}

/// Rotation acting on the deformed (first) index: (R G)_{aij} = R_{ab} G_{bij}.
inline SecondGradient rotate_frame(const Eigen::Matrix2d& R, const SecondGradient& g) {
  SecondGradient out;
  out.comp[0] = R(0, 0) * g.comp[0] + R(0, 1) * g.comp[1];
  out.comp[1] = R(1, 0) * g.comp[0] + R(1, 1) * g.comp[1];
  return out;
}

inline Eigen::Matrix2d rotation2d(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

inline Eigen::Matrix2d cofactor(const Eigen::Matrix2d& f) {
  Eigen::Matrix2d c;
  c << f(1, 1), -f(1, 0), -f(0, 1), f(0, 0);
  return c;
}

}  // namespace visco

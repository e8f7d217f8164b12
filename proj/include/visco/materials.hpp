#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "visco/tensors.hpp"

namespace visco {

/// Kelvin-Voigt material data: polyconvex stored energy with a determinant
/// barrier, a p-homogeneous second-gradient (hyperstress) potential, and a
/// quadratic frame-indifferent dissipation potential.
///
///   phi(F)  = a |F|^s + b (det F)^-q + c_vol det F + c0
///   H(G)    = (nu / p) |G|^p
///   zeta(F, Fdot) = (eta / 2) |Cdot|^2,   Cdot = Fdot^T F + F^T Fdot
///
/// c_vol and c0 are calibrated so the identity is stress-free with zero energy.
struct MaterialModel {
  double a = 1.0;
  double b = 1.0;
  double s = 4.0;
  double q = 4.0;
  double nu = 1e-3;
  double p = 4.0;
  double eta = 1.0;
  double c_vol = 0.0;
  double c0 = 0.0;

  /// Validates the exponent conditions (p > 2, q >= 2p/(p-2), s > 1) and
  /// calibrates (c_vol, c0); throws Error on violation.
  static MaterialModel create(double a, double b, double s, double q, double nu, double p,
                              double eta);
  static MaterialModel defaults() { return create(1.0, 1.0, 4.0, 4.0, 1e-3, 4.0, 1.0); }

  friend bool operator==(const MaterialModel&, const MaterialModel&) = default;
};

struct PhiEval {
  double value = 0;
  Eigen::Matrix2d stress;  // dphi/dF
};

struct HyperEval {
  double value = 0;
  SecondGradient hyperstress;  // dH/dG
};

struct ZetaEval {
  double value = 0;
  Eigen::Matrix2d dissipative_stress;  // dzeta/dFdot
};

/// Stored energy density and first Piola stress; throws BarrierError if det F <= 0.
PhiEval phi(const MaterialModel& m, const Eigen::Matrix2d& f);

/// Second-gradient energy density and hyperstress.
HyperEval hyper(const MaterialModel& m, const SecondGradient& g);

inline Eigen::Matrix2d cauchy_green(const Eigen::Matrix2d& f) { return f.transpose() * f; }
inline Eigen::Matrix2d cauchy_green_rate(const Eigen::Matrix2d& f, const Eigen::Matrix2d& fdot) {
  return fdot.transpose() * f + f.transpose() * fdot;
}

/// Dissipation potential and its Fdot-derivative.
ZetaEval zeta(const MaterialModel& m, const Eigen::Matrix2d& f, const Eigen::Matrix2d& fdot);

/// Viscous stress 2 F D Cdot; equals zeta's Fdot-derivative.
Eigen::Matrix2d viscous_stress(const MaterialModel& m, const Eigen::Matrix2d& f,
                               const Eigen::Matrix2d& fdot);

/// Specific dissipation rate xi = sigma_vi : Fdot (= 2 zeta for the quadratic law).
double dissipation_rate(const MaterialModel& m, const Eigen::Matrix2d& f,
                        const Eigen::Matrix2d& fdot);

struct FrameIndifferenceReport {
  int samples = 0;
  double max_phi_deviation = 0;
  double max_hyper_deviation = 0;
  double max_zeta_deviation = 0;
  double max_deviation() const {
    return std::max({max_phi_deviation, max_hyper_deviation, max_zeta_deviation});
  }
};

/// Randomized invariance check of phi, H, zeta under superimposed rigid
/// motions; deviations are relative to 1 + |value|.
FrameIndifferenceReport frame_indifference_suite(const MaterialModel& m, int n_samples,
                                                 uint64_t seed);

}  // namespace visco

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace visco {

/// Clamped (open-uniform) knot vector on [a, b] with `ncells` equal spans.
std::vector<double> open_uniform_knots(double a, double b, int ncells, int degree);

inline int basis_count(const std::vector<double>& knots, int degree) {
  return static_cast<int>(knots.size()) - degree - 1;
}

/// Knot span index containing u; u = b maps to the last nonempty span.
int find_span(const std::vector<double>& knots, int degree, double u);

/// Values and derivatives of the degree+1 basis functions alive on `span`:
/// ders[r * (degree+1) + j] holds d^r N_{span-degree+j} / du^r at u,
/// for r = 0..nders. Cox-de Boor with the standard derivative recurrence.
void basis_derivatives(const std::vector<double>& knots, int degree, int span, double u,
                       int nders, double* ders);

/// Greville abscissae; control values equal to these reproduce u -> u.
std::vector<double> greville_abscissae(const std::vector<double>& knots, int degree);

/// Collocation matrix A(i, j) = N_j(greville_i); nonsingular for clamped knots.
Eigen::MatrixXd collocation_matrix(const std::vector<double>& knots, int degree);

/// Gauss-Legendre rule with n points on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace visco

#pragma once

#include <memory>
#include <random>

#include "visco/grid.hpp"

namespace visco::testing {

inline std::shared_ptr<const ReferenceGrid> unit_grid(int n, int degree = 3,
                                                      std::vector<std::string> dirichlet = {}) {
  GridSpec s;
  s.nx = s.ny = n;
  s.degree = degree;
  s.dirichlet_edges = std::move(dirichlet);
  return std::make_shared<ReferenceGrid>(s);
}

/// Identity plus a smooth random coefficient perturbation, rescaled until
/// det grad y > floor at every quadrature point.
inline DeformationField random_admissible_field(std::shared_ptr<const ReferenceGrid> grid,
                                                std::mt19937_64& rng, double amplitude = 0.05,
                                                double det_floor = 0.2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixX2d noise(grid->dof_count(), 2);
  for (int i = 0; i < noise.rows(); ++i) noise.row(i) = Eigen::RowVector2d(u(rng), u(rng));
  const double h = std::min(grid->hx(), grid->hy());
  double amp = amplitude * h;
  for (int attempt = 0; attempt < 40; ++attempt) {
    DeformationField f(grid, grid->greville() + amp * noise);
    double dmin = 1e300;
    for (int q = 0; q < grid->qp_count(); ++q)
      dmin = std::min(dmin, f.gradient_at_qp(q).determinant());
    if (dmin > det_floor) return f;
    amp *= 0.5;
  }
  return identity_field(grid);
}

}  // namespace visco::testing

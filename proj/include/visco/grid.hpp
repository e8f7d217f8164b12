#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "visco/tensors.hpp"

namespace visco {

enum class EdgeTag : uint8_t { Dirichlet, Neumann };

/// Half-open cell index rectangle [ix0, ix1) x [iy0, iy1); cells inside are
/// removed from the reference domain.
struct MaskRect {
  int ix0 = 0, ix1 = 0, iy0 = 0, iy1 = 0;
  friend bool operator==(const MaskRect&, const MaskRect&) = default;
};

struct GridSpec {
  double ax = 0.0, bx = 1.0, ay = 0.0, by = 1.0;
  int nx = 8, ny = 8;
  int degree = 3;
  int quad_order = 0;  // 0 selects the default degree + 1
  std::vector<std::string> dirichlet_edges;  // subset of left/right/bottom/top
  std::vector<MaskRect> masked;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Tensor-product B-spline discretisation of a rectangular reference domain,
/// optionally masked to an axis-aligned union of rectangles. Degree >= 3 keeps
/// the fields C^2, so second gradients are defined everywhere. Immutable after
/// construction; every evaluation below is a pure read.
class ReferenceGrid {
 public:
  explicit ReferenceGrid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int degree() const { return spec_.degree; }
  int quad_order() const { return quad_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double cell_diagonal() const { return std::sqrt(hx_ * hx_ + hy_ * hy_); }
  double diameter() const;
  double active_area() const { return active_cells_ * hx_ * hy_; }
  int active_cell_count() const { return active_cells_; }
  bool cell_active(int cx, int cy) const;

  // spline space
  int dofs_x() const { return mx_; }
  int dofs_y() const { return my_; }
  int dof_count() const { return mx_ * my_; }
  int dof_index(int ix, int iy) const { return iy * mx_ + ix; }
  const std::vector<double>& knots_x() const { return knots_x_; }
  const std::vector<double>& knots_y() const { return knots_y_; }
  /// Control net that reproduces the identity map exactly.
  const Eigen::MatrixX2d& greville() const { return greville_; }

  // bulk quadrature: positions, weights, and per-point basis tables with
  // layout [N, Nx, Ny, Nxx, Nxy, Nyy] per local basis function
  int local_count() const { return local_; }
  int qp_count() const { return static_cast<int>(qp_weight_.size()); }
  const Eigen::Vector2d& qp_position(int q) const { return qp_pos_[q]; }
  double qp_weight(int q) const { return qp_weight_[q]; }
  const int* qp_dofs(int q) const { return &qp_dof_[static_cast<size_t>(q) * local_]; }
  const double* qp_basis(int q) const { return &qp_basis_[static_cast<size_t>(q) * local_ * 6]; }

  // boundary quadrature with layout [N, Nx, Ny]
  struct BoundarySample {
    Eigen::Vector2d x;
    Eigen::Vector2d normal;
    double weight = 0;
    EdgeTag tag = EdgeTag::Neumann;
  };
  int boundary_count() const { return static_cast<int>(boundary_.size()); }
  const BoundarySample& boundary(int i) const { return boundary_[i]; }
  const int* boundary_dofs(int i) const { return &bnd_dof_[static_cast<size_t>(i) * local_]; }
  const double* boundary_basis(int i) const { return &bnd_basis_[static_cast<size_t>(i) * local_ * 3]; }
  std::vector<int> boundary_ids(EdgeTag tag) const;
  /// Length of a boundary cell edge; the unit behind "boundary spacing".
  double boundary_spacing() const { return std::max(hx_, hy_); }

  // Dirichlet handling by coefficient elimination
  bool pinned(int dof) const { return pinned_[dof] != 0; }
  const std::vector<int>& free_dofs() const { return free_dofs_; }
  int free_count() const { return static_cast<int>(free_dofs_.size()); }

  /// True if x lies in the closure of the active cells.
  bool contains(const Eigen::Vector2d& x) const;

  /// On-the-fly basis evaluation at an arbitrary point: fills local dof ids
  /// and the 6-column table; throws DomainError outside the domain closure.
  void basis_at(const Eigen::Vector2d& x, int* dofs, double* table /* local * 6 */) const;

 private:
  void build_bulk_tables();
  void build_boundary();
  void build_pinning();

  GridSpec spec_;
  int quad_ = 4;
  double hx_ = 0, hy_ = 0;
  int mx_ = 0, my_ = 0, local_ = 0;
  std::vector<double> knots_x_, knots_y_;
  std::vector<uint8_t> active_;  // per cell, nx*ny
  int active_cells_ = 0;
  Eigen::MatrixX2d greville_;

  std::vector<Eigen::Vector2d> qp_pos_;
  std::vector<double> qp_weight_;
  std::vector<int> qp_dof_;
  std::vector<double> qp_basis_;

  std::vector<BoundarySample> boundary_;
  std::vector<int> bnd_dof_;
  std::vector<double> bnd_basis_;

  std::vector<uint8_t> pinned_;
  std::vector<int> free_dofs_;
};

/// Spline deformation field y: reference domain -> R^2, determined by its grid
/// and an M x 2 control-coefficient matrix.
class DeformationField {
 public:
  DeformationField(std::shared_ptr<const ReferenceGrid> grid, Eigen::MatrixX2d coeffs);

  const ReferenceGrid& grid() const { return *grid_; }
  const std::shared_ptr<const ReferenceGrid>& grid_ptr() const { return grid_; }
  const Eigen::MatrixX2d& coeffs() const { return coeffs_; }

  Eigen::Vector2d value(const Eigen::Vector2d& x) const;
  Eigen::Matrix2d gradient(const Eigen::Vector2d& x) const;
  SecondGradient hessian(const Eigen::Vector2d& x) const;

  Eigen::Vector2d value_at_qp(int q) const;
  Eigen::Matrix2d gradient_at_qp(int q) const;
  SecondGradient hessian_at_qp(int q) const;

  Eigen::Vector2d value_at_boundary(int i) const;
  Eigen::Matrix2d gradient_at_boundary(int i) const;

 private:
  std::shared_ptr<const ReferenceGrid> grid_;
  Eigen::MatrixX2d coeffs_;
};

/// y(x) = x, exact by affine reproduction of the Greville control net.
DeformationField identity_field(std::shared_ptr<const ReferenceGrid> grid);

/// Interpolates an analytic map at the Greville lattice (exact whenever the
/// map lies in the spline space).
DeformationField interpolate_field(std::shared_ptr<const ReferenceGrid> grid,
                                   const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& map);

/// Batch point evaluation; throws DomainError on the first point outside.
std::vector<Eigen::Vector2d> evaluate(const DeformationField& field,
                                      const std::vector<Eigen::Vector2d>& points);

inline Eigen::Matrix2d gradient(const DeformationField& f, int qp) { return f.gradient_at_qp(qp); }
inline SecondGradient hessian(const DeformationField& f, int qp) { return f.hessian_at_qp(qp); }

struct BoundaryQuadSample {
  Eigen::Vector2d point;
  Eigen::Vector2d normal;
  double weight;
};
std::vector<BoundaryQuadSample> boundary_samples(const ReferenceGrid& grid, EdgeTag tag);

}  // namespace visco

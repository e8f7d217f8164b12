#include "visco/grid.hpp"

#include <algorithm>
#include <cmath>

#include "visco/bspline.hpp"
#include "visco/errors.hpp"

namespace visco {

namespace {

bool has_edge(const std::vector<std::string>& edges, const char* name) {
  return std::find(edges.begin(), edges.end(), name) != edges.end();
}

}  // namespace

ReferenceGrid::ReferenceGrid(const GridSpec& spec) : spec_(spec) {
  if (!(spec.bx > spec.ax) || !(spec.by > spec.ay))
    throw Error("grid: domain extents must satisfy bx > ax, by > ay");
  if (spec.nx < 1 || spec.ny < 1) throw Error("grid: cell counts must be positive");
  if (spec.degree < 3) throw Error("grid: spline degree must be >= 3 for C^2 fields");
  if (spec.degree > 7) throw Error("grid: spline degree above 7 is not supported");
  quad_ = spec.quad_order > 0 ? spec.quad_order : spec.degree + 1;
  if (quad_ < 2) throw Error("grid: quadrature order must be >= 2");
  for (const auto& e : spec.dirichlet_edges)
    if (e != "left" && e != "right" && e != "bottom" && e != "top")
      throw Error("grid: unknown dirichlet edge '" + e + "'");

  hx_ = (spec.bx - spec.ax) / spec.nx;
  hy_ = (spec.by - spec.ay) / spec.ny;
  knots_x_ = open_uniform_knots(spec.ax, spec.bx, spec.nx, spec.degree);
  knots_y_ = open_uniform_knots(spec.ay, spec.by, spec.ny, spec.degree);
  mx_ = basis_count(knots_x_, spec.degree);
  my_ = basis_count(knots_y_, spec.degree);
  local_ = (spec.degree + 1) * (spec.degree + 1);

  active_.assign(static_cast<size_t>(spec.nx) * spec.ny, 1);
  for (const auto& r : spec.masked) {
    if (r.ix0 < 0 || r.iy0 < 0 || r.ix1 > spec.nx || r.iy1 > spec.ny || r.ix0 >= r.ix1 ||
        r.iy0 >= r.iy1)
      throw Error("grid: mask rectangle out of range");
    for (int cy = r.iy0; cy < r.iy1; ++cy)
      for (int cx = r.ix0; cx < r.ix1; ++cx) active_[static_cast<size_t>(cy) * spec.nx + cx] = 0;
  }
  active_cells_ = static_cast<int>(std::count(active_.begin(), active_.end(), uint8_t{1}));
  if (active_cells_ == 0) throw Error("grid: mask removes every cell");

  const auto gx = greville_abscissae(knots_x_, spec.degree);
  const auto gy = greville_abscissae(knots_y_, spec.degree);
  greville_.resize(dof_count(), 2);
  for (int iy = 0; iy < my_; ++iy)
    for (int ix = 0; ix < mx_; ++ix) greville_.row(dof_index(ix, iy)) = Eigen::RowVector2d(gx[ix], gy[iy]);

  build_bulk_tables();
  build_boundary();
  build_pinning();
}

bool ReferenceGrid::cell_active(int cx, int cy) const {
  if (cx < 0 || cy < 0 || cx >= spec_.nx || cy >= spec_.ny) return false;
  return active_[static_cast<size_t>(cy) * spec_.nx + cx] != 0;
}

double ReferenceGrid::diameter() const {
  const double dx = spec_.bx - spec_.ax, dy = spec_.by - spec_.ay;
  return std::sqrt(dx * dx + dy * dy);
}

void ReferenceGrid::build_bulk_tables() {
  const int p = spec_.degree;
  std::vector<double> gn, gw;
  gauss_legendre(quad_, gn, gw);

  const int per_cell = quad_ * quad_;
  qp_pos_.reserve(static_cast<size_t>(active_cells_) * per_cell);
  qp_weight_.reserve(qp_pos_.capacity());
  qp_dof_.reserve(qp_pos_.capacity() * local_);
  qp_basis_.reserve(qp_pos_.capacity() * local_ * 6);

  std::vector<double> dx(3 * (p + 1)), dy(3 * (p + 1));
  for (int cy = 0; cy < spec_.ny; ++cy) {
    for (int cx = 0; cx < spec_.nx; ++cx) {
      if (!cell_active(cx, cy)) continue;
      const double x0 = spec_.ax + cx * hx_, y0 = spec_.ay + cy * hy_;
      for (int qy = 0; qy < quad_; ++qy) {
        const double v = y0 + 0.5 * hy_ * (gn[qy] + 1.0);
        const int span_y = find_span(knots_y_, p, v);
        basis_derivatives(knots_y_, p, span_y, v, 2, dy.data());
        for (int qx = 0; qx < quad_; ++qx) {
          const double u = x0 + 0.5 * hx_ * (gn[qx] + 1.0);
          const int span_x = find_span(knots_x_, p, u);
          basis_derivatives(knots_x_, p, span_x, u, 2, dx.data());

          qp_pos_.emplace_back(u, v);
          qp_weight_.push_back(gw[qx] * gw[qy] * 0.25 * hx_ * hy_);
          for (int jy = 0; jy <= p; ++jy) {
            for (int jx = 0; jx <= p; ++jx) {
              qp_dof_.push_back(dof_index(span_x - p + jx, span_y - p + jy));
              const double* bx = dx.data();
              const double* by = dy.data();
              const int n1 = p + 1;
              qp_basis_.push_back(bx[jx] * by[jy]);                    // N
              qp_basis_.push_back(bx[n1 + jx] * by[jy]);               // Nx
              qp_basis_.push_back(bx[jx] * by[n1 + jy]);               // Ny
              qp_basis_.push_back(bx[2 * n1 + jx] * by[jy]);           // Nxx
              qp_basis_.push_back(bx[n1 + jx] * by[n1 + jy]);          // Nxy
              qp_basis_.push_back(bx[jx] * by[2 * n1 + jy]);           // Nyy
            }
          }
        }
      }
    }
  }
}

void ReferenceGrid::build_boundary() {
  const int p = spec_.degree;
  std::vector<double> gn, gw;
  gauss_legendre(quad_, gn, gw);
  std::vector<double> dx(2 * (p + 1)), dy(2 * (p + 1));

  const bool dir_left = has_edge(spec_.dirichlet_edges, "left");
  const bool dir_right = has_edge(spec_.dirichlet_edges, "right");
  const bool dir_bottom = has_edge(spec_.dirichlet_edges, "bottom");
  const bool dir_top = has_edge(spec_.dirichlet_edges, "top");

  auto add_sample = [&](const Eigen::Vector2d& x, const Eigen::Vector2d& n, double w, EdgeTag tag) {
    BoundarySample s;
    s.x = x;
    s.normal = n;
    s.weight = w;
    s.tag = tag;
    boundary_.push_back(s);
    const int span_x = find_span(knots_x_, p, x.x());
    const int span_y = find_span(knots_y_, p, x.y());
    basis_derivatives(knots_x_, p, span_x, x.x(), 1, dx.data());
    basis_derivatives(knots_y_, p, span_y, x.y(), 1, dy.data());
    const int n1 = p + 1;
    for (int jy = 0; jy <= p; ++jy) {
      for (int jx = 0; jx <= p; ++jx) {
        bnd_dof_.push_back(dof_index(span_x - p + jx, span_y - p + jy));
        bnd_basis_.push_back(dx[jx] * dy[jy]);
        bnd_basis_.push_back(dx[n1 + jx] * dy[jy]);
        bnd_basis_.push_back(dx[jx] * dy[n1 + jy]);
      }
    }
  };

  for (int cy = 0; cy < spec_.ny; ++cy) {
    for (int cx = 0; cx < spec_.nx; ++cx) {
      if (!cell_active(cx, cy)) continue;
      const double x0 = spec_.ax + cx * hx_, y0 = spec_.ay + cy * hy_;
      // vertical edges (normals +-x)
      if (!cell_active(cx - 1, cy)) {
        const EdgeTag tag = (cx == 0 && dir_left) ? EdgeTag::Dirichlet : EdgeTag::Neumann;
        for (int q = 0; q < quad_; ++q)
          add_sample({x0, y0 + 0.5 * hy_ * (gn[q] + 1.0)}, {-1.0, 0.0}, gw[q] * 0.5 * hy_, tag);
      }
      if (!cell_active(cx + 1, cy)) {
        const EdgeTag tag = (cx == spec_.nx - 1 && dir_right) ? EdgeTag::Dirichlet : EdgeTag::Neumann;
        for (int q = 0; q < quad_; ++q)
          add_sample({x0 + hx_, y0 + 0.5 * hy_ * (gn[q] + 1.0)}, {1.0, 0.0}, gw[q] * 0.5 * hy_, tag);
      }
      // horizontal edges (normals +-y)
      if (!cell_active(cx, cy - 1)) {
        const EdgeTag tag = (cy == 0 && dir_bottom) ? EdgeTag::Dirichlet : EdgeTag::Neumann;
        for (int q = 0; q < quad_; ++q)
          add_sample({x0 + 0.5 * hx_ * (gn[q] + 1.0), y0}, {0.0, -1.0}, gw[q] * 0.5 * hx_, tag);
      }
      if (!cell_active(cx, cy + 1)) {
        const EdgeTag tag = (cy == spec_.ny - 1 && dir_top) ? EdgeTag::Dirichlet : EdgeTag::Neumann;
        for (int q = 0; q < quad_; ++q)
          add_sample({x0 + 0.5 * hx_ * (gn[q] + 1.0), y0 + hy_}, {0.0, 1.0}, gw[q] * 0.5 * hx_, tag);
      }
    }
  }
}

void ReferenceGrid::build_pinning() {
  const int p = spec_.degree;
  pinned_.assign(dof_count(), 0);

  // coefficients whose basis functions vanish on every active cell
  for (int iy = 0; iy < my_; ++iy) {
    for (int ix = 0; ix < mx_; ++ix) {
      bool touches_active = false;
      for (int cy = std::max(0, iy - p); cy <= std::min(spec_.ny - 1, iy) && !touches_active; ++cy)
        for (int cx = std::max(0, ix - p); cx <= std::min(spec_.nx - 1, ix); ++cx)
          if (cell_active(cx, cy)) {
            touches_active = true;
            break;
          }
      if (!touches_active) pinned_[dof_index(ix, iy)] = 1;
    }
  }

  // coefficients with a nonzero trace on the tagged (active) Dirichlet edges
  auto pin_vertical = [&](int ix_trace, int cx_edge) {
    for (int cy = 0; cy < spec_.ny; ++cy) {
      if (!cell_active(cx_edge, cy)) continue;
      for (int jy = 0; jy <= p; ++jy) pinned_[dof_index(ix_trace, cy + jy)] = 1;
    }
  };
  auto pin_horizontal = [&](int iy_trace, int cy_edge) {
    for (int cx = 0; cx < spec_.nx; ++cx) {
      if (!cell_active(cx, cy_edge)) continue;
      for (int jx = 0; jx <= p; ++jx) pinned_[dof_index(cx + jx, iy_trace)] = 1;
    }
  };
  if (has_edge(spec_.dirichlet_edges, "left")) pin_vertical(0, 0);
  if (has_edge(spec_.dirichlet_edges, "right")) pin_vertical(mx_ - 1, spec_.nx - 1);
  if (has_edge(spec_.dirichlet_edges, "bottom")) pin_horizontal(0, 0);
  if (has_edge(spec_.dirichlet_edges, "top")) pin_horizontal(my_ - 1, spec_.ny - 1);

  free_dofs_.clear();
  for (int d = 0; d < dof_count(); ++d)
    if (!pinned_[d]) free_dofs_.push_back(d);
}

std::vector<int> ReferenceGrid::boundary_ids(EdgeTag tag) const {
  std::vector<int> ids;
  for (int i = 0; i < boundary_count(); ++i)
    if (boundary_[i].tag == tag) ids.push_back(i);
  return ids;
}

bool ReferenceGrid::contains(const Eigen::Vector2d& x) const {
  const double tol = 1e-12 * (1.0 + diameter());
  if (x.x() < spec_.ax - tol || x.x() > spec_.bx + tol || x.y() < spec_.ay - tol ||
      x.y() > spec_.by + tol)
    return false;
  // every cell whose closure contains x; points on cell faces belong to both sides
  const double fx = (x.x() - spec_.ax) / hx_, fy = (x.y() - spec_.ay) / hy_;
  const double snap = 1e-9;
  const int cx0 = std::clamp(static_cast<int>(std::floor(fx - snap)), 0, spec_.nx - 1);
  const int cx1 = std::clamp(static_cast<int>(std::floor(fx + snap)), 0, spec_.nx - 1);
  const int cy0 = std::clamp(static_cast<int>(std::floor(fy - snap)), 0, spec_.ny - 1);
  const int cy1 = std::clamp(static_cast<int>(std::floor(fy + snap)), 0, spec_.ny - 1);
  for (int cx = cx0; cx <= cx1; ++cx)
    for (int cy = cy0; cy <= cy1; ++cy)
      if (cell_active(cx, cy)) return true;
  return false;
}

void ReferenceGrid::basis_at(const Eigen::Vector2d& x, int* dofs, double* table) const {
  if (!contains(x))
    throw DomainError("point (" + std::to_string(x.x()) + ", " + std::to_string(x.y()) +
                      ") lies outside the reference domain");
  const int p = spec_.degree;
  const int span_x = find_span(knots_x_, p, x.x());
  const int span_y = find_span(knots_y_, p, x.y());
  double dx[3 * 8], dy[3 * 8];  // degree <= 7 is far beyond any practical use
  basis_derivatives(knots_x_, p, span_x, x.x(), 2, dx);
  basis_derivatives(knots_y_, p, span_y, x.y(), 2, dy);
  const int n1 = p + 1;
  int t = 0;
  for (int jy = 0; jy <= p; ++jy) {
    for (int jx = 0; jx <= p; ++jx) {
      dofs[t / 6] = dof_index(span_x - p + jx, span_y - p + jy);
      table[t++] = dx[jx] * dy[jy];
      table[t++] = dx[n1 + jx] * dy[jy];
      table[t++] = dx[jx] * dy[n1 + jy];
      table[t++] = dx[2 * n1 + jx] * dy[jy];
      table[t++] = dx[n1 + jx] * dy[n1 + jy];
      table[t++] = dx[jx] * dy[2 * n1 + jy];
    }
  }
}

DeformationField::DeformationField(std::shared_ptr<const ReferenceGrid> grid, Eigen::MatrixX2d coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != grid_->dof_count())
    throw Error("deformation field: coefficient count does not match the spline space");
}

namespace {

struct LocalEval {
  Eigen::Vector2d y = Eigen::Vector2d::Zero();
  Eigen::Matrix2d f = Eigen::Matrix2d::Zero();
  SecondGradient g = SecondGradient::Zero();
};

LocalEval combine(const Eigen::MatrixX2d& c, const int* dofs, const double* tab, int local) {
  LocalEval e;
  for (int j = 0; j < local; ++j) {
    const double* b = tab + 6 * j;
    const Eigen::RowVector2d cj = c.row(dofs[j]);
    for (int a = 0; a < 2; ++a) {
      const double ca = cj[a];
      e.y[a] += ca * b[0];
      e.f(a, 0) += ca * b[1];
      e.f(a, 1) += ca * b[2];
      e.g.comp[a](0, 0) += ca * b[3];
      e.g.comp[a](0, 1) += ca * b[4];
      e.g.comp[a](1, 0) += ca * b[4];
      e.g.comp[a](1, 1) += ca * b[5];
    }
  }
  return e;
}

}  // namespace

Eigen::Vector2d DeformationField::value(const Eigen::Vector2d& x) const {
  const int local = grid_->local_count();
  std::vector<int> dofs(local);
  std::vector<double> tab(6 * local);
  grid_->basis_at(x, dofs.data(), tab.data());
  return combine(coeffs_, dofs.data(), tab.data(), local).y;
}

Eigen::Matrix2d DeformationField::gradient(const Eigen::Vector2d& x) const {
  const int local = grid_->local_count();
  std::vector<int> dofs(local);
  std::vector<double> tab(6 * local);
  grid_->basis_at(x, dofs.data(), tab.data());
  return combine(coeffs_, dofs.data(), tab.data(), local).f;
}

SecondGradient DeformationField::hessian(const Eigen::Vector2d& x) const {
  const int local = grid_->local_count();
  std::vector<int> dofs(local);
  std::vector<double> tab(6 * local);
  grid_->basis_at(x, dofs.data(), tab.data());
  return combine(coeffs_, dofs.data(), tab.data(), local).g;
}

Eigen::Vector2d DeformationField::value_at_qp(int q) const {
  const int local = grid_->local_count();
  const int* dofs = grid_->qp_dofs(q);
  const double* tab = grid_->qp_basis(q);
  Eigen::Vector2d y = Eigen::Vector2d::Zero();
  for (int j = 0; j < local; ++j) y += tab[6 * j] * coeffs_.row(dofs[j]).transpose();
  return y;
}

Eigen::Matrix2d DeformationField::gradient_at_qp(int q) const {
  return combine(coeffs_, grid_->qp_dofs(q), grid_->qp_basis(q), grid_->local_count()).f;
}

SecondGradient DeformationField::hessian_at_qp(int q) const {
  return combine(coeffs_, grid_->qp_dofs(q), grid_->qp_basis(q), grid_->local_count()).g;
}

Eigen::Vector2d DeformationField::value_at_boundary(int i) const {
  const int local = grid_->local_count();
  const int* dofs = grid_->boundary_dofs(i);
  const double* tab = grid_->boundary_basis(i);
  Eigen::Vector2d y = Eigen::Vector2d::Zero();
  for (int j = 0; j < local; ++j) y += tab[3 * j] * coeffs_.row(dofs[j]).transpose();
  return y;
}

Eigen::Matrix2d DeformationField::gradient_at_boundary(int i) const {
  const int local = grid_->local_count();
  const int* dofs = grid_->boundary_dofs(i);
  const double* tab = grid_->boundary_basis(i);
  Eigen::Matrix2d f = Eigen::Matrix2d::Zero();
  for (int j = 0; j < local; ++j) {
    const Eigen::RowVector2d cj = coeffs_.row(dofs[j]);
    f.col(0) += tab[3 * j + 1] * cj.transpose();
    f.col(1) += tab[3 * j + 2] * cj.transpose();
  }
  return f;
}

DeformationField identity_field(std::shared_ptr<const ReferenceGrid> grid) {
  Eigen::MatrixX2d c = grid->greville();
  return DeformationField(std::move(grid), std::move(c));
}

DeformationField interpolate_field(std::shared_ptr<const ReferenceGrid> grid,
                                   const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& map) {
  const int mx = grid->dofs_x(), my = grid->dofs_y();
  const auto gx = greville_abscissae(grid->knots_x(), grid->degree());
  const auto gy = greville_abscissae(grid->knots_y(), grid->degree());

  Eigen::PartialPivLU<Eigen::MatrixXd> lux(collocation_matrix(grid->knots_x(), grid->degree()));
  Eigen::PartialPivLU<Eigen::MatrixXd> luy(collocation_matrix(grid->knots_y(), grid->degree()));

  Eigen::MatrixX2d coeffs(grid->dof_count(), 2);
  for (int a = 0; a < 2; ++a) {
    Eigen::MatrixXd v(mx, my);
    for (int j = 0; j < my; ++j)
      for (int i = 0; i < mx; ++i) v(i, j) = map(Eigen::Vector2d(gx[i], gy[j]))[a];
    Eigen::MatrixXd e = lux.solve(v);                    // resolve x collocation per y-line
    Eigen::MatrixXd c = luy.solve(e.transpose());        // then y collocation per x-line
    for (int iy = 0; iy < my; ++iy)
      for (int ix = 0; ix < mx; ++ix) coeffs(grid->dof_index(ix, iy), a) = c(iy, ix);
  }
  return DeformationField(std::move(grid), std::move(coeffs));
}

std::vector<Eigen::Vector2d> evaluate(const DeformationField& field,
                                      const std::vector<Eigen::Vector2d>& points) {
  std::vector<Eigen::Vector2d> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(field.value(x));
  return out;
}

std::vector<BoundaryQuadSample> boundary_samples(const ReferenceGrid& grid, EdgeTag tag) {
  std::vector<BoundaryQuadSample> out;
  for (int i = 0; i < grid.boundary_count(); ++i) {
    const auto& s = grid.boundary(i);
    if (s.tag == tag) out.push_back({s.x, s.normal, s.weight});
  }
  return out;
}

}  // namespace visco

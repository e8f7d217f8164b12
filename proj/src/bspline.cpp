#include "visco/bspline.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "visco/errors.hpp"

namespace visco {

std::vector<double> open_uniform_knots(double a, double b, int ncells, int degree) {
  if (ncells < 1 || degree < 1 || !(b > a))
    throw Error("open_uniform_knots: need ncells >= 1, degree >= 1, b > a");
  std::vector<double> t;
  t.reserve(ncells + 2 * degree + 1);
  const double h = (b - a) / ncells;
  for (int i = 0; i <= degree; ++i) t.push_back(a);
  for (int i = 1; i < ncells; ++i) t.push_back(a + i * h);
  for (int i = 0; i <= degree; ++i) t.push_back(b);
  return t;
}

int find_span(const std::vector<double>& knots, int degree, double u) {
  const int m = basis_count(knots, degree);
  const double a = knots[degree], b = knots[m];
  if (u <= a) return degree;
  if (u >= b) return m - 1;
  // spans live between knots[degree] and knots[m]
  auto it = std::upper_bound(knots.begin() + degree, knots.begin() + m + 1, u);
  return static_cast<int>(it - knots.begin()) - 1;
}

void basis_derivatives(const std::vector<double>& knots, int degree, int span, double u,
                       int nders, double* ders) {
  const int p = degree;
  const int n = std::min(nders, p);
  // ndu holds basis values (upper triangle) and knot differences (lower).
  std::vector<double> ndu((p + 1) * (p + 1));
  std::vector<double> left(p + 1), right(p + 1);
  auto NDU = [&](int i, int j) -> double& { return ndu[i * (p + 1) + j]; };

  NDU(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - knots[span + 1 - j];
    right[j] = knots[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      NDU(j, r) = right[r + 1] + left[j - r];
      const double temp = NDU(r, j - 1) / NDU(j, r);
      NDU(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    NDU(j, j) = saved;
  }
  for (int j = 0; j <= p; ++j) ders[j] = NDU(j, p);
  for (int r = p + 1; r <= nders; ++r)
    for (int j = 0; j <= p; ++j) ders[r * (p + 1) + j] = 0.0;

  // derivative triangles (The NURBS Book, A2.3)
  std::vector<double> a(2 * (p + 1));
  auto A = [&](int i, int j) -> double& { return a[i * (p + 1) + j]; };
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    A(0, 0) = 1.0;
    for (int k = 1; k <= n; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        A(s2, 0) = A(s1, 0) / NDU(pk + 1, rk);
        d = A(s2, 0) * NDU(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        A(s2, j) = (A(s1, j) - A(s1, j - 1)) / NDU(pk + 1, rk + j);
        d += A(s2, j) * NDU(rk + j, pk);
      }
      if (r <= pk) {
        A(s2, k) = -A(s1, k - 1) / NDU(pk + 1, r);
        d += A(s2, k) * NDU(r, pk);
      }
      ders[k * (p + 1) + r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= n; ++k) {
    for (int j = 0; j <= p; ++j) ders[k * (p + 1) + j] *= factor;
    factor *= (p - k);
  }
}

std::vector<double> greville_abscissae(const std::vector<double>& knots, int degree) {
  const int m = basis_count(knots, degree);
  std::vector<double> g(m);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 1; j <= degree; ++j) s += knots[i + j];
    g[i] = s / degree;
  }
  return g;
}

Eigen::MatrixXd collocation_matrix(const std::vector<double>& knots, int degree) {
  const int m = basis_count(knots, degree);
  const auto g = greville_abscissae(knots, degree);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  std::vector<double> vals(degree + 1);
  for (int i = 0; i < m; ++i) {
    const int span = find_span(knots, degree, g[i]);
    basis_derivatives(knots, degree, span, g[i], 0, vals.data());
    for (int j = 0; j <= degree; ++j) a(i, span - degree + j) = vals[j];
  }
  return a;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  assert(n >= 1);
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess, Newton on P_n
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

}  // namespace visco

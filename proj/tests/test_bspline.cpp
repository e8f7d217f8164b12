#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "visco/bspline.hpp"

using namespace visco;

namespace {

// Textbook Cox-de Boor recursion over the full basis; independent of the
// span-local evaluator under test.
double cox_de_boor(const std::vector<double>& t, int i, int k, double u) {
  if (k == 0) {
    // right-closed at the last span so u = b is covered
    const int m = static_cast<int>(t.size()) - 1;
    const bool last = (t[i + 1] == t[m] && u == t[m]);
    return (u >= t[i] && u < t[i + 1]) || last ? 1.0 : 0.0;
  }
  double v = 0.0;
  if (t[i + k] > t[i]) v += (u - t[i]) / (t[i + k] - t[i]) * cox_de_boor(t, i, k - 1, u);
  if (t[i + k + 1] > t[i + 1])
    v += (t[i + k + 1] - u) / (t[i + k + 1] - t[i + 1]) * cox_de_boor(t, i, k - 1, u);
  return v;
}

}  // namespace

TEST_CASE("span lookup covers the closed interval") {
  const auto t = open_uniform_knots(0.0, 1.0, 5, 3);
  CHECK(find_span(t, 3, 0.0) == 3);
  CHECK(find_span(t, 3, 1.0) == basis_count(t, 3) - 1);
  CHECK(find_span(t, 3, 0.39) == 3 + 1);
  CHECK(find_span(t, 3, 0.2) == 4);  // knot itself belongs to the right span
}

TEST_CASE("evaluator matches the dense de Boor recursion") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uu(0.0, 1.0);
  for (int degree : {3, 4}) {
    const auto t = open_uniform_knots(0.0, 1.0, 7, degree);
    const int m = basis_count(t, degree);
    std::vector<double> coef(m);
    for (auto& c : coef) c = uu(rng);
    std::vector<double> ders(3 * (degree + 1));
    for (int trial = 0; trial < 200; ++trial) {
      const double u = (trial == 0) ? 1.0 : uu(rng);
      const int span = find_span(t, degree, u);
      basis_derivatives(t, degree, span, u, 2, ders.data());
      double ours = 0.0, oracle = 0.0;
      for (int j = 0; j <= degree; ++j) ours += coef[span - degree + j] * ders[j];
      for (int i = 0; i < m; ++i) oracle += coef[i] * cox_de_boor(t, i, degree, u);
      CHECK(ours == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("partition of unity and derivative sums vanish") {
  const auto t = open_uniform_knots(-1.0, 2.5, 9, 3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uu(-1.0, 2.5);
  std::vector<double> ders(3 * 4);
  for (int trial = 0; trial < 500; ++trial) {
    const double u = uu(rng);
    const int span = find_span(t, 3, u);
    basis_derivatives(t, 3, span, u, 2, ders.data());
    double s0 = 0, s1 = 0, s2 = 0;
    for (int j = 0; j < 4; ++j) {
      s0 += ders[j];
      s1 += ders[4 + j];
      s2 += ders[8 + j];
    }
    CHECK(std::abs(s0 - 1.0) < 1e-12);
    CHECK(std::abs(s1) < 1e-9);
    CHECK(std::abs(s2) < 1e-7);
  }
}

TEST_CASE("derivatives agree with finite differences of values") {
  const auto t = open_uniform_knots(0.0, 1.0, 6, 3);
  const int m = basis_count(t, 3);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uu(0.05, 0.95);
  std::uniform_real_distribution<double> cc(-1.0, 1.0);
  std::vector<double> coef(m);
  for (auto& c : coef) c = cc(rng);

  auto value = [&](double u) {
    std::vector<double> v(4);
    const int span = find_span(t, 3, u);
    basis_derivatives(t, 3, span, u, 0, v.data());
    double s = 0;
    for (int j = 0; j < 4; ++j) s += coef[span - 3 + j] * v[j];
    return s;
  };

  const double h = 1e-6;
  std::vector<double> ders(3 * 4);
  for (int trial = 0; trial < 100; ++trial) {
    const double u = uu(rng);
    const int span = find_span(t, 3, u);
    basis_derivatives(t, 3, span, u, 2, ders.data());
    double d1 = 0, d2 = 0;
    for (int j = 0; j < 4; ++j) {
      d1 += coef[span - 3 + j] * ders[4 + j];
      d2 += coef[span - 3 + j] * ders[8 + j];
    }
    const double fd1 = (value(u + h) - value(u - h)) / (2 * h);
    const double fd2 = (value(u + h) - 2 * value(u) + value(u - h)) / (h * h);
    CHECK(d1 == doctest::Approx(fd1).epsilon(1e-6));
    CHECK(d2 == doctest::Approx(fd2).epsilon(1e-4));
  }
}

TEST_CASE("greville control values reproduce affine functions") {
  const auto t = open_uniform_knots(0.5, 3.0, 8, 3);
  const auto g = greville_abscissae(t, 3);
  const int m = basis_count(t, 3);
  std::vector<double> coef(m);
  for (int i = 0; i < m; ++i) coef[i] = 2.0 * g[i] - 1.0;  // u -> 2u - 1
  std::vector<double> v(4);
  for (double u : {0.5, 0.77, 1.3, 2.9, 3.0}) {
    const int span = find_span(t, 3, u);
    basis_derivatives(t, 3, span, u, 0, v.data());
    double s = 0;
    for (int j = 0; j < 4; ++j) s += coef[span - 3 + j] * v[j];
    CHECK(s == doctest::Approx(2.0 * u - 1.0).epsilon(1e-13));
  }
}

TEST_CASE("collocation matrix interpolates cubics exactly") {
  const auto t = open_uniform_knots(0.0, 2.0, 5, 3);
  const auto g = greville_abscissae(t, 3);
  const int m = basis_count(t, 3);
  auto f = [](double u) { return u * u * u - 2.0 * u * u + 0.5 * u - 3.0; };
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = f(g[i]);
  Eigen::VectorXd coef = collocation_matrix(t, 3).partialPivLu().solve(rhs);
  std::vector<double> v(4);
  for (double u : {0.0, 0.3, 1.1, 1.9, 2.0}) {
    const int span = find_span(t, 3, u);
    basis_derivatives(t, 3, span, u, 0, v.data());
    double s = 0;
    for (int j = 0; j < 4; ++j) s += coef[span - 3 + j] * v[j];
    CHECK(s == doctest::Approx(f(u)).epsilon(1e-12));
  }
}

TEST_CASE("gauss rules integrate polynomials of degree 2n-1") {
  for (int n : {1, 2, 4, 6, 10}) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    double wsum = 0;
    for (double wi : w) wsum += wi;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], deg);
      const double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
      CHECK(std::abs(s - exact) < 1e-13);
    }
  }
}

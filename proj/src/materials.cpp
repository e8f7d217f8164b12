#include "visco/materials.hpp"

#include <cmath>
#include <random>

#include "visco/errors.hpp"

namespace visco {

MaterialModel MaterialModel::create(double a, double b, double s, double q, double nu, double p,
                                    double eta) {
  std::vector<std::string> bad;
  if (!(a > 0)) bad.push_back("material.a must be > 0");
  if (!(b > 0)) bad.push_back("material.b must be > 0");
  if (!(nu > 0)) bad.push_back("material.nu must be > 0");
  if (!(eta > 0)) bad.push_back("material.eta must be > 0");
  if (!(s > 1)) bad.push_back("material.s must be > 1");
  if (!(p > 2)) bad.push_back("material.p must exceed the dimension d = 2");
  if (p > 2 && !(q >= 2.0 * p / (p - 2.0))) {
    bad.push_back("material.q violates q >= p*d/(p-d) = " + std::to_string(2.0 * p / (p - 2.0)) +
                  " for p = " + std::to_string(p));
  }
  if (!bad.empty()) throw ConfigError(std::move(bad));

  MaterialModel m;
  m.a = a;
  m.b = b;
  m.s = s;
  m.q = q;
  m.nu = nu;
  m.p = p;
  m.eta = eta;
  // phi'(I) = [a s 2^((s-2)/2) - q b + c_vol] I = 0, then shift so phi(I) = 0
  m.c_vol = q * b - a * s * std::pow(2.0, 0.5 * (s - 2.0));
  m.c0 = -(a * std::pow(2.0, 0.5 * s) + b + m.c_vol);
  return m;
}

PhiEval phi(const MaterialModel& m, const Eigen::Matrix2d& f) {
  const double det = f.determinant();
  if (!(det > 0))
    throw BarrierError("phi: det F <= 0", Eigen::Vector2d::Zero(), det);
  const double nf2 = f.squaredNorm();
  const Eigen::Matrix2d cof = cofactor(f);

  PhiEval out;
  const double det_mq = std::pow(det, -m.q);
  out.value = m.a * std::pow(nf2, 0.5 * m.s) + m.b * det_mq + m.c_vol * det + m.c0;
  out.stress = m.a * m.s * std::pow(nf2, 0.5 * m.s - 1.0) * f +
               (m.c_vol - m.q * m.b * det_mq / det) * cof;
  return out;
}

HyperEval hyper(const MaterialModel& m, const SecondGradient& g) {
  HyperEval out;
  const double n2 = g.squaredNorm();
  out.value = (m.nu / m.p) * std::pow(n2, 0.5 * m.p);
  const double scale = (n2 > 0) ? m.nu * std::pow(n2, 0.5 * m.p - 1.0) : 0.0;
  out.hyperstress = scale * g;
  return out;
}

ZetaEval zeta(const MaterialModel& m, const Eigen::Matrix2d& f, const Eigen::Matrix2d& fdot) {
  const Eigen::Matrix2d cdot = cauchy_green_rate(f, fdot);
  ZetaEval out;
  out.value = 0.5 * m.eta * cdot.squaredNorm();
  out.dissipative_stress = 2.0 * m.eta * f * cdot;
  return out;
}

Eigen::Matrix2d viscous_stress(const MaterialModel& m, const Eigen::Matrix2d& f,
                               const Eigen::Matrix2d& fdot) {
  return 2.0 * m.eta * f * cauchy_green_rate(f, fdot);
}

double dissipation_rate(const MaterialModel& m, const Eigen::Matrix2d& f,
                        const Eigen::Matrix2d& fdot) {
  return viscous_stress(m, f, fdot).cwiseProduct(fdot).sum();
}

FrameIndifferenceReport frame_indifference_suite(const MaterialModel& m, int n_samples,
                                                 uint64_t seed) {
  if (n_samples < 1) throw Error("frame_indifference_suite: n_samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

  auto rand_mat = [&](double scale) {
    Eigen::Matrix2d a;
    a << unit(rng), unit(rng), unit(rng), unit(rng);
    return (scale * a).eval();
  };

  FrameIndifferenceReport rep;
  rep.samples = n_samples;
  for (int i = 0; i < n_samples; ++i) {
    // deformation gradient near a random invertible state with det > 0
    Eigen::Matrix2d f = Eigen::Matrix2d::Identity() + rand_mat(0.3);
    if (f.determinant() <= 0.05) f = Eigen::Matrix2d::Identity() + 0.05 * rand_mat(1.0);
    const Eigen::Matrix2d fdot = rand_mat(1.0);
    SecondGradient g;
    g.comp[0] = rand_mat(1.0);
    g.comp[0](1, 0) = g.comp[0](0, 1);
    g.comp[1] = rand_mat(1.0);
    g.comp[1](1, 0) = g.comp[1](0, 1);

    const Eigen::Matrix2d r = rotation2d(angle(rng));
    Eigen::Matrix2d w;  // skew generator of the superimposed spin
    const double wrate = unit(rng);
    w << 0.0, -wrate, wrate, 0.0;
    const Eigen::Matrix2d rdot = w * r;

    const double phi0 = phi(m, f).value, phi1 = phi(m, r * f).value;
    rep.max_phi_deviation =
        std::max(rep.max_phi_deviation, std::abs(phi1 - phi0) / (1.0 + std::abs(phi0)));

    const double h0 = hyper(m, g).value, h1 = hyper(m, rotate_frame(r, g)).value;
    rep.max_hyper_deviation =
        std::max(rep.max_hyper_deviation, std::abs(h1 - h0) / (1.0 + std::abs(h0)));

    const double z0 = zeta(m, f, fdot).value;
    const double z1 = zeta(m, r * f, rdot * f + r * fdot).value;
    rep.max_zeta_deviation =
        std::max(rep.max_zeta_deviation, std::abs(z1 - z0) / (1.0 + std::abs(z0)));
  }
  return rep;
}

}  // namespace visco

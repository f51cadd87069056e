#include "idstab/inclusion_band.hpp"

#include <Eigen/Eigenvalues>
#include <cassert>
#include <cmath>

namespace idstab {

double rho_T(const Eigen::MatrixXd& m_tilde) {
  const int n = int(m_tilde.rows());
  const Eigen::MatrixXd s = m_tilde + m_tilde.transpose();
  Eigen::MatrixXd t(2 * n, 2 * n);
  t << s, s, s, s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
#ifndef NDEBUG
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_s(s);
  const double rho_s = es_s.eigenvalues().cwiseAbs().maxCoeff();
  assert(std::abs(rho - 2.0 * rho_s) <= 1e-10 * (1.0 + rho));
#endif
  return rho;
}

BandRectangle band_rectangle_at(const FrequencyModel& fm,
                                const ComplexMatrixSample& sample) {
  const int n = fm.n();
  const Eigen::MatrixXd re = sample.value.real();
  const Eigen::MatrixXd im = sample.value.imag();

  const Eigen::MatrixXd re_s = re + re.transpose();
  const Eigen::MatrixXd im_a = im - im.transpose();
  const Eigen::MatrixXd im_s = im + im.transpose();
  const Eigen::MatrixXd re_a = re - re.transpose();

  const double tr_re = re.trace();
  const double tr_im = im.trace();
  const double cn = std::sqrt(double(2 * n - 1) / double(n));

  // Radicands are nonnegative in exact arithmetic; clamp rounding residue.
  const double rad_r = (re_s * re_s).trace() - (im_a * im_a).trace() -
                       4.0 * tr_re * tr_re / double(n);
  const double rad_i = (im_s * im_s).trace() - (re_a * re_a).trace() -
                       4.0 * tr_im * tr_im / double(n);

  const double delta_r = fm.rho_t() + cn * std::sqrt(std::max(0.0, rad_r));
  const double delta_i = fm.rho_t() + cn * std::sqrt(std::max(0.0, rad_i));

  BandRectangle rect;
  rect.omega = sample.omega;
  rect.center = sample.value.trace() / double(n);
  rect.half_width_re = 0.5 * delta_r;
  rect.half_width_im = 0.5 * delta_i;
  return rect;
}

BandRectangle band_rectangle(const FrequencyModel& fm, double omega) {
  return band_rectangle_at(fm, m_hat_at(fm, omega));
}

PartitionMatrices partition_matrices(const FrequencyModel& fm, double omega) {
  const auto sample = m_hat_at(fm, omega);
  const int n = fm.n();
  const Eigen::MatrixXd re = sample.value.real();
  const Eigen::MatrixXd im = sample.value.imag();

  PartitionMatrices pm;
  pm.s_r.resize(2 * n, 2 * n);
  pm.s_i.resize(2 * n, 2 * n);
  pm.s_r << re + re.transpose(), im.transpose() - im,
      im - im.transpose(), re + re.transpose();
  pm.s_i << im + im.transpose(), re - re.transpose(),
      re.transpose() - re, im + im.transpose();
  return pm;
}

}  // namespace idstab

#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "idstab/kernel_model.hpp"

namespace idstab {

struct ComplexMatrixSample {
  double omega = 0.0;
  Eigen::MatrixXcd value;
};

// Frequency-domain picture of the uncertain kernel:
//
//   m_tilde      elementwise square half-widths: every admissible transform
//                entry lies in the closed axis-aligned square of half-side
//                m_tilde[i][j] centered at the midpoint transform entry.
//   d_seq        D_0..D_N, first differences of the summed bound
//                coefficients; the midpoint transform is
//                  n0! / (2 (j w)^{n0+1}) * sum_k D_k exp(-j k h w).
//   m_hat_zero   midpoint transform at w = 0 (exact closed form).
//   rho_t        spectral radius of [[1,1],[1,1]] kron (m_tilde + m_tilde^T).
class FrequencyModel {
public:
  const SplineKernelBounds& source() const { return source_; }
  const Eigen::MatrixXd& m_tilde() const { return m_tilde_; }
  const std::vector<Eigen::MatrixXd>& d_seq() const { return d_seq_; }
  const Eigen::MatrixXd& m_hat_zero() const { return m_hat_zero_; }
  const Eigen::VectorXd& trace_d() const { return trace_d_; }
  double rho_t() const { return rho_t_; }
  double omega_switch() const { return omega_switch_; }

  int n() const { return source_.n(); }
  int degree() const { return source_.degree(); }
  double step() const { return source_.step(); }
  int knots() const { return source_.knots(); }

  // Midpoint transform center tr(m_hat(j w)) / n at w = 0.
  double center_at_zero() const { return m_hat_zero_.trace() / source_.n(); }

private:
  friend FrequencyModel build_frequency_model(const SplineKernelBounds&);
  friend Eigen::MatrixXcd m_hat_signed(const FrequencyModel&, double);

  SplineKernelBounds source_;
  Eigen::MatrixXd m_tilde_;
  std::vector<Eigen::MatrixXd> d_seq_;
  Eigen::MatrixXd m_hat_zero_;
  Eigen::VectorXd trace_d_;
  double rho_t_ = 0.0;
  double omega_switch_ = 0.0;
  std::vector<std::vector<Eigen::MatrixXd>> midpoint_cells_;
};

FrequencyModel build_frequency_model(const SplineKernelBounds& model);

// Midpoint transform m_hat(j omega) for omega >= 0. Above omega_switch the
// trigonometric closed form is used; below it the numerator cancels to
// O(omega^{n0+1}) and an exact per-cell polynomial-times-exponential
// quadrature takes over. omega = 0 returns the precomputed limit.
ComplexMatrixSample m_hat_at(const FrequencyModel& fm, double omega);

// Internal evaluator accepting signed omega (used by the symmetry check).
Eigen::MatrixXcd m_hat_signed(const FrequencyModel& fm, double omega);

// True iff m_hat(-j omega) equals the conjugate of m_hat(j omega) within tol
// (it must: the kernel bounds are real).
bool sample_conjugate_symmetry(const FrequencyModel& fm, double omega,
                               double tol = 1e-12);

}  // namespace idstab

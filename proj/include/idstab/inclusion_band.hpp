#pragma once

#include <Eigen/Core>
#include <complex>

#include "idstab/freq_transform.hpp"

namespace idstab {

// Rectangle guaranteed to contain every eigenvalue of every admissible
// kernel transform at one frequency. The union over omega is the inclusion
// band swept by the eigenloci.
struct BandRectangle {
  double omega = 0.0;
  std::complex<double> center;  // tr(m_hat(j omega)) / n
  double half_width_re = 0.0;
  double half_width_im = 0.0;
};

// 2n x 2n symmetric matrices whose extreme eigenvalues bound twice the real
// and imaginary parts of the uncertain eigenvalues (interval-matrix
// eigenvalue bounds). Exposed for diagnostics and tests.
struct PartitionMatrices {
  Eigen::MatrixXd s_r;
  Eigen::MatrixXd s_i;
};

// Spectral radius of T = [[1,1],[1,1]] kron (m_tilde + m_tilde^T), computed
// by a symmetric eigensolve of the full 2n x 2n matrix. Equals
// 2 * rho(m_tilde + m_tilde^T); the identity is kept as a cross-check, not
// the evaluation path.
double rho_T(const Eigen::MatrixXd& m_tilde);

BandRectangle band_rectangle(const FrequencyModel& fm, double omega);

// Same, reusing an already computed transform sample.
BandRectangle band_rectangle_at(const FrequencyModel& fm,
                                const ComplexMatrixSample& sample);

PartitionMatrices partition_matrices(const FrequencyModel& fm, double omega);

}  // namespace idstab

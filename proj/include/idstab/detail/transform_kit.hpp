#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace idstab::detail {

// Local monomial representation of a truncated-power spline, one polynomial
// per knot cell. On cell m (tau in [m h, (m+1) h)) with u = tau - m h:
//
//   spline(tau) = sum_q out[m][q] u^q
//
// Built by expanding every active basis function; cost O(N^2 n0^2).
std::vector<std::vector<Eigen::MatrixXd>> cell_polynomials(
    int n0, double h, int N, const std::vector<Eigen::MatrixXd>& coeff);

// integral_0^{len} u^q exp(-j w u) du. Uses the power series in w for
// |w len| < 0.5 (cancellation-free) and the integration-by-parts recursion
// otherwise.
std::complex<double> segment_moment(int q, double len, double w);

// integral_0^{N h} spline(tau) exp(-j w tau) dtau from the cell polynomials.
// w may be negative.
Eigen::MatrixXcd cell_transform(
    const std::vector<std::vector<Eigen::MatrixXd>>& cells, double h,
    double w);

}  // namespace idstab::detail

#pragma once

// Shared fixtures for the test suites: the published example systems, a
// random model generator, and quadrature oracles that are independent of
// the library's evaluation paths.

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "idstab/kernel_model.hpp"

namespace testkit {

using idstab::RawBounds;

// 2x2 system with an exponential nominal kernel under box perturbations;
// the (1,2) entry is a staircase bracketing -tau with cell-width gap.
inline RawBounds example1() {
  RawBounds raw;
  raw.n = 2;
  raw.n0 = 0;
  raw.h = 0.1;
  raw.N = 5;
  raw.b_upper.assign(2, std::vector<std::vector<double>>(
                            2, std::vector<double>(5, 0.0)));
  raw.b_lower = raw.b_upper;
  for (int k = 0; k < 5; ++k) {
    raw.b_upper[0][0][k] = 1.2;
    raw.b_lower[0][0][k] = 0.8;
    raw.b_upper[0][1][k] = -0.1 * k;
    raw.b_lower[0][1][k] = -0.1 * (k + 1);
    raw.b_upper[1][0][k] = 0.2;
    raw.b_lower[1][0][k] = -0.2;
    raw.b_upper[1][1][k] = 1.2;
    raw.b_lower[1][1][k] = 0.8;
  }
  return raw;
}

// Scalar finite-spectrum-assignment controller kernel, gains perturbed in a
// disk of radius r; the bounds are right-endpoint staircase samples of the
// swept envelope.
inline RawBounds example2(double tau_bar, double h, double r,
                          double c1 = -0.0005, double c2 = -0.0267) {
  const int N = int(std::round(tau_bar / h));
  RawBounds raw;
  raw.n = 1;
  raw.n0 = 0;
  raw.h = h;
  raw.N = N;
  raw.b_upper.assign(1, std::vector<std::vector<double>>(
                            1, std::vector<double>(N, 0.0)));
  raw.b_lower = raw.b_upper;
  for (int k = 0; k < N; ++k) {
    const double tau = (k + 1) * h;
    const double mid = -c1 * tau + c2;
    const double spread = r * std::sqrt(tau * tau + 1.0);
    raw.b_upper[0][0][k] = mid + spread;
    raw.b_lower[0][0][k] = mid - spread;
  }
  return raw;
}

// Scalar degree-1 kernel with no uncertainty; exercises every stage of the
// counting machinery.
inline RawBounds example3() {
  RawBounds raw;
  raw.n = 1;
  raw.n0 = 1;
  raw.h = 0.5;
  raw.N = 2;
  raw.b_upper.assign(1, std::vector<std::vector<double>>(
                            1, std::vector<double>(2, 0.0)));
  raw.b_upper[0][0] = {-30.0, 30.0};
  raw.b_lower = raw.b_upper;
  return raw;
}

// 2x2 degree-1 system used for band visualisation.
inline RawBounds figure1() {
  RawBounds raw;
  raw.n = 2;
  raw.n0 = 1;
  raw.h = 0.5;
  raw.N = 2;
  raw.b_upper.assign(2, std::vector<std::vector<double>>(
                            2, std::vector<double>(2, 0.0)));
  raw.b_upper[0][0] = {7.6, -7.4};
  raw.b_upper[0][1] = {1.1, -0.9};
  raw.b_upper[1][0] = {1.6, -1.4};
  raw.b_upper[1][1] = {7.1, -6.9};
  raw.b_lower = raw.b_upper;
  for (auto& row : raw.b_lower)
    for (auto& entry : row)
      for (double& v : entry) v -= 0.2;
  return raw;
}

// Scalar constant kernel a(tau) = value on [0, horizon]; n0 = 0.
inline RawBounds scalar_constant(double value, double horizon, int N) {
  RawBounds raw;
  raw.n = 1;
  raw.n0 = 0;
  raw.h = horizon / N;
  raw.N = N;
  raw.b_upper.assign(1, std::vector<std::vector<double>>(
                            1, std::vector<double>(N, value)));
  raw.b_lower = raw.b_upper;
  return raw;
}

// Random bounds with a tail-compact midpoint (degree >= 1 midpoints are
// projected onto the zero-tail subspace) and nonnegative gaps.
inline RawBounds random_bounds(std::mt19937_64& rng, int n, int n0, int N,
                               double h, double mid_scale, double gap_scale) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  RawBounds raw;
  raw.n = n;
  raw.n0 = n0;
  raw.h = h;
  raw.N = N;
  raw.b_upper.assign(n, std::vector<std::vector<double>>(
                            n, std::vector<double>(N, 0.0)));
  raw.b_lower = raw.b_upper;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd c(N);
      for (int k = 0; k < N; ++k) c(k) = mid_scale * uni(rng);
      if (n0 >= 1) {
        // Remove the components along the tail-moment weight vectors.
        Eigen::MatrixXd w(n0, N);
        for (int m = 1; m <= n0; ++m)
          for (int k = 0; k < N; ++k)
            w(m - 1, k) = std::pow(k + 1.0, m) - std::pow(double(k), m);
        const Eigen::MatrixXd gram = w * w.transpose();
        c -= w.transpose() * gram.ldlt().solve(w * c);
      }
      for (int k = 0; k < N; ++k) {
        const double g = gap_scale * pos(rng);
        raw.b_upper[i][j][k] = c(k) + g;
        raw.b_lower[i][j][k] = c(k) - g;
      }
    }
  return raw;
}

// --- Independent quadrature oracles -------------------------------------

// Composite 16-point Gauss-Legendre integration of f over [a, b] with the
// panel count scaled to resolve the oscillation.
template <typename F>
std::complex<double> gauss_oscillatory(F&& f, double a, double b,
                                       double omega) {
  static const double nodes[8] = {
      0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
      0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
      0.9445750230732326, 0.9894009349916499};
  static const double weights[8] = {
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
      0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
      0.0622535239386479, 0.0271524594117541};
  const int panels =
      std::max(4, int(std::ceil(std::abs(omega) * (b - a) / 3.0)) + 4);
  std::complex<double> acc(0.0, 0.0);
  for (int p = 0; p < panels; ++p) {
    const double lo = a + (b - a) * p / panels;
    const double hi = a + (b - a) * (p + 1) / panels;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int q = 0; q < 8; ++q) {
      for (double s : {-nodes[q], nodes[q]}) {
        const double tau = mid + half * s;
        acc += weights[q] * half * f(tau) *
               std::exp(std::complex<double>(0.0, -omega * tau));
      }
    }
  }
  return acc;
}

// Transform of the midpoint bound function, integrating the pointwise
// spline evaluation cell by cell (independent of the production evaluators).
inline Eigen::MatrixXcd midpoint_transform_oracle(
    const idstab::SplineKernelBounds& model, double omega) {
  const int n = model.n();
  Eigen::MatrixXcd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::complex<double> acc(0.0, 0.0);
      for (int cell = 0; cell < model.knots(); ++cell) {
        const double a = cell * model.step();
        const double b = (cell + 1) * model.step();
        acc += gauss_oscillatory(
            [&](double tau) {
              return 0.5 *
                     (idstab::eval_bound(model, idstab::BoundSide::Upper, i, j,
                                         tau) +
                      idstab::eval_bound(model, idstab::BoundSide::Lower, i, j,
                                         tau));
            },
            a, b, omega);
      }
      out(i, j) = acc;
    }
  return out;
}

// Composite trapezoid integral of a real function.
template <typename F>
double trapezoid(F&& f, double a, double b, int panels) {
  double acc = 0.5 * (f(a) + f(b));
  for (int i = 1; i < panels; ++i) acc += f(a + (b - a) * i / panels);
  return acc * (b - a) / panels;
}

}  // namespace testkit

#pragma once

#include <Eigen/Core>
#include <vector>

#include "idstab/errors.hpp"

namespace idstab {

// Untrusted description of an uncertain integral-delay kernel. The kernel
// matrix A(tau) of
//
//   x(t) = integral_0^{N h} A(tau) x(t - tau) dtau
//
// is unknown between two bound matrices whose entries are truncated-power
// splines of degree n0 on a uniform knot grid of spacing h:
//
//   bound_{i,j}(tau) = sum_k b[i][j][k] * p_{n0,k}(tau)
//   p_{n0,k}(tau)    = (tau - k h)^n0 H(tau - k h) - (tau - (k+1) h)^n0 H(tau - (k+1) h)
//
// Coefficients are indexed [row][col][knot].
struct RawBounds {
  int n = 0;
  int n0 = 0;
  int N = 0;
  double h = 0.0;
  std::vector<std::vector<std::vector<double>>> b_upper;
  std::vector<std::vector<std::vector<double>>> b_lower;
};

// Validated, immutable value type. Knot-indexed coefficient matrices.
class SplineKernelBounds {
public:
  int n() const { return n_; }
  int degree() const { return n0_; }
  double step() const { return h_; }
  int knots() const { return N_; }
  double horizon() const { return N_ * h_; }

  const Eigen::MatrixXd& upper(int k) const { return upper_[k]; }
  const Eigen::MatrixXd& lower(int k) const { return lower_[k]; }
  const std::vector<Eigen::MatrixXd>& upper() const { return upper_; }
  const std::vector<Eigen::MatrixXd>& lower() const { return lower_; }

  // Midpoint coefficient matrix (upper + lower) / 2 at knot k.
  Eigen::MatrixXd midpoint(int k) const { return 0.5 * (upper_[k] + lower_[k]); }

private:
  friend SplineKernelBounds validate(const RawBounds& raw);
  int n_ = 0, n0_ = 0, N_ = 0;
  double h_ = 0.0;
  std::vector<Eigen::MatrixXd> upper_, lower_;
};

// One admissible kernel drawn between the bounds: a single coefficient tensor.
class ConcreteSplineKernel {
public:
  ConcreteSplineKernel(int n, int n0, double h, int N,
                       std::vector<Eigen::MatrixXd> coeff);

  int n() const { return n_; }
  int degree() const { return n0_; }
  double step() const { return h_; }
  int knots() const { return N_; }
  double horizon() const { return N_ * h_; }
  const Eigen::MatrixXd& coeff(int k) const { return coeff_[k]; }
  const std::vector<Eigen::MatrixXd>& coeff() const { return coeff_; }

  // Pointwise kernel value A(tau) for tau in [0, horizon].
  Eigen::MatrixXd eval(double tau) const;

private:
  int n_, n0_, N_;
  double h_;
  std::vector<Eigen::MatrixXd> coeff_;
};

// Validates an untrusted description. Throws Error with one of
// NonPositiveStep, ZeroKnots, ShapeMismatch, BoundOrderViolation or
// TailNotCompact; never constructs an invariant-violating value.
//
// TailNotCompact: for n0 >= 1 the truncated-power basis does not vanish
// beyond the horizon, so the midpoint spline must telescope to zero there
// for the closed-form frequency response used downstream to be exact.
// Equivalently the midpoint bound and its first n0 - 1 derivatives vanish
// at tau = N h.
SplineKernelBounds validate(const RawBounds& raw);

// p_{n0,k}(tau). Right-continuous at the knots (0^0 := 1), so for n0 = 0 the
// basis function is the indicator of [k h, (k+1) h).
double eval_basis(int n0, int k, double h, double tau);

// Closed form of integral_0^{N h} p_{n0,k}(tau) dtau:
//   h^{n0+1} ((N-k)^{n0+1} - (N-k-1)^{n0+1}) / (n0+1)
double integrate_basis(int n0, int k, double h, int N);

enum class BoundSide { Lower, Upper };

// Bound entry value sum_k b[i][j][k] p_{n0,k}(tau). Throws IndexOutOfRange.
double eval_bound(const SplineKernelBounds& model, BoundSide side, int i,
                  int j, double tau);

}  // namespace idstab

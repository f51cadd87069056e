#include "idstab/kernel_model.hpp"

#include <cmath>
#include <sstream>

namespace idstab {

namespace {

// (u)^n0 H(u) with the 0^0 = 1 convention at the jump.
double truncated_power(double u, int n0) {
  if (u < 0.0) return 0.0;
  if (n0 == 0) return 1.0;
  return std::pow(u, n0);
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

double eval_basis(int n0, int k, double h, double tau) {
  return truncated_power(tau - k * h, n0) -
         truncated_power(tau - (k + 1) * h, n0);
}

double integrate_basis(int n0, int k, double h, int N) {
  const double a = ipow(double(N - k), n0 + 1);
  const double b = ipow(double(N - k - 1), n0 + 1);
  return ipow(h, n0 + 1) * (a - b) / double(n0 + 1);
}

SplineKernelBounds validate(const RawBounds& raw) {
  if (raw.N < 1) fail(ErrorCode::ZeroKnots, "knot count N must be >= 1");
  if (!(raw.h > 0.0) || !std::isfinite(raw.h))
    fail(ErrorCode::NonPositiveStep, "knot spacing h must be positive");
  if (raw.n < 1) fail(ErrorCode::ShapeMismatch, "state dimension n must be >= 1");
  if (raw.n0 < 0) fail(ErrorCode::ShapeMismatch, "spline degree n0 must be >= 0");

  auto shape_of = [&](const std::vector<std::vector<std::vector<double>>>& b,
                      const char* name) {
    if ((int)b.size() != raw.n)
      fail(ErrorCode::ShapeMismatch,
           std::string(name) + ": expected " + std::to_string(raw.n) + " rows");
    for (const auto& row : b) {
      if ((int)row.size() != raw.n)
        fail(ErrorCode::ShapeMismatch,
             std::string(name) + ": expected " + std::to_string(raw.n) +
                 " columns per row");
      for (const auto& knots : row)
        if ((int)knots.size() != raw.N)
          fail(ErrorCode::ShapeMismatch,
               std::string(name) + ": expected " + std::to_string(raw.N) +
                   " knot coefficients per entry");
    }
  };
  shape_of(raw.b_upper, "b_upper");
  shape_of(raw.b_lower, "b_lower");

  for (int i = 0; i < raw.n; ++i)
    for (int j = 0; j < raw.n; ++j)
      for (int k = 0; k < raw.N; ++k) {
        const double lo = raw.b_lower[i][j][k];
        const double hi = raw.b_upper[i][j][k];
        if (!std::isfinite(lo) || !std::isfinite(hi))
          fail(ErrorCode::ShapeMismatch, "coefficients must be finite");
        if (lo > hi) {
          std::ostringstream os;
          os << "b_lower[" << i << "][" << j << "][" << k << "] = " << lo
             << " exceeds b_upper = " << hi;
          fail(ErrorCode::BoundOrderViolation, os.str());
        }
      }

  // The truncated-power basis does not vanish beyond the horizon for
  // n0 >= 1; the midpoint spline must telescope to zero there so that the
  // trigonometric closed form of its transform is exact. The tail of
  // sum_k c_k p_{n0,k} past N h vanishes iff for m = 1..n0:
  //   sum_k c_k ((k+1)^m - k^m) = 0.
  if (raw.n0 >= 1) {
    for (int i = 0; i < raw.n; ++i)
      for (int j = 0; j < raw.n; ++j)
        for (int m = 1; m <= raw.n0; ++m) {
          double moment = 0.0, scale = 0.0;
          for (int k = 0; k < raw.N; ++k) {
            const double c = 0.5 * (raw.b_upper[i][j][k] + raw.b_lower[i][j][k]);
            const double w = ipow(double(k + 1), m) - ipow(double(k), m);
            moment += c * w;
            scale += std::abs(c) * w;
          }
          if (std::abs(moment) > 1e-9 * (scale + 1e-300)) {
            std::ostringstream os;
            os << "midpoint spline of entry (" << i << "," << j
               << ") does not vanish beyond the horizon (order-" << m
               << " tail moment " << moment
               << "); the bounds must decay to zero at tau = N h for degree "
               << raw.n0;
            fail(ErrorCode::TailNotCompact, os.str());
          }
        }
  }

  SplineKernelBounds out;
  out.n_ = raw.n;
  out.n0_ = raw.n0;
  out.N_ = raw.N;
  out.h_ = raw.h;
  out.upper_.resize(raw.N);
  out.lower_.resize(raw.N);
  for (int k = 0; k < raw.N; ++k) {
    out.upper_[k].resize(raw.n, raw.n);
    out.lower_[k].resize(raw.n, raw.n);
    for (int i = 0; i < raw.n; ++i)
      for (int j = 0; j < raw.n; ++j) {
        out.upper_[k](i, j) = raw.b_upper[i][j][k];
        out.lower_[k](i, j) = raw.b_lower[i][j][k];
      }
  }
  return out;
}

double eval_bound(const SplineKernelBounds& model, BoundSide side, int i,
                  int j, double tau) {
  if (i < 0 || i >= model.n() || j < 0 || j >= model.n())
    fail(ErrorCode::IndexOutOfRange, "bound entry index out of range");
  const auto& coeff = side == BoundSide::Upper ? model.upper() : model.lower();
  double acc = 0.0;
  for (int k = 0; k < model.knots(); ++k)
    acc += coeff[k](i, j) * eval_basis(model.degree(), k, model.step(), tau);
  return acc;
}

ConcreteSplineKernel::ConcreteSplineKernel(int n, int n0, double h, int N,
                                           std::vector<Eigen::MatrixXd> coeff)
    : n_(n), n0_(n0), N_(N), h_(h), coeff_(std::move(coeff)) {}

Eigen::MatrixXd ConcreteSplineKernel::eval(double tau) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, n_);
  for (int k = 0; k < N_; ++k)
    out += coeff_[k] * eval_basis(n0_, k, h_, tau);
  return out;
}

}  // namespace idstab

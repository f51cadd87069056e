#include "idstab/trig_roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace idstab {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Parlett-Reinsch style balancing: scale row/column pairs by powers of two
// until the off-diagonal 1-norms stop improving.
void balance_in_place(Eigen::MatrixXd& a) {
  const int n = int(a.rows());
  Eigen::MatrixXd off = a;
  off.diagonal().setZero();
  const double gamma = 0.9;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      const double row_norm = off.row(i).lpNorm<1>();
      const double col_norm = off.col(i).lpNorm<1>();
      if (row_norm == 0.0 || col_norm == 0.0) continue;
      int exponent = 0;
      std::frexp(row_norm / col_norm, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col_norm, exponent);
      const double scaled_row = std::ldexp(row_norm, -exponent);
      if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
        changed = true;
        off.row(i) *= std::ldexp(1.0, -exponent);
        off.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
  off.diagonal() = a.diagonal();
  a = off;
}

// Smallest circular distance between two angles in (-pi, pi].
double angle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

}  // namespace

double TrigPolynomial::eval(double x) const {
  double acc = 0.0;
  if (parity == Parity::Odd) {
    for (int k = 1; k < f.size(); ++k) acc += f(k) * std::sin(k * x);
  } else {
    for (int k = 0; k < f.size(); ++k) acc += f(k) * std::cos(k * x);
  }
  return acc;
}

TrigPolynomial crossing_polynomial(const FrequencyModel& fm) {
  const int n0 = fm.degree();
  const int n = fm.n();
  TrigPolynomial p;
  p.parity = (n0 % 2 == 1) ? Parity::Odd : Parity::Even;
  p.h = fm.step();
  p.n0 = n0;
  const double sign = (n0 % 2 == 0) ? ((1 + n0 / 2) % 2 == 0 ? 1.0 : -1.0)
                                    : (((n0 - 1) / 2) % 2 == 0 ? 1.0 : -1.0);
  const double scale =
      factorial(n0) * std::pow(fm.step(), n0 + 1) * sign / double(2 * n);
  p.f = scale * fm.trace_d();
  return p;
}

Eigen::MatrixXd companion_matrix(const TrigPolynomial& p, double tol_coeff) {
  const bool odd = p.parity == Parity::Odd;
  // For the sine form f_0 never enters y.
  double fmax = 0.0;
  for (int k = odd ? 1 : 0; k < p.f.size(); ++k)
    fmax = std::max(fmax, std::abs(p.f(k)));
  if (fmax == 0.0)
    fail(ErrorCode::DegenerateZeroPolynomial,
         "crossing polynomial is identically zero");

  int deg = int(p.f.size()) - 1;
  while (deg >= 1 && std::abs(p.f(deg)) < tol_coeff * fmax) --deg;
  if (deg < 1)
    fail(ErrorCode::DegenerateZeroPolynomial,
         "crossing polynomial has no oscillatory coefficients above "
         "tolerance");

  const double lead = p.f(deg);
  const int m = 2 * deg;
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i + 1 < m; ++i) F(i, i + 1) = 1.0;
  if (odd) {
    // Anti-palindromic lift: f_deg z^{2deg} + ... + f_1 z^{deg+1}
    //                        - f_1 z^{deg-1} - ... - f_deg.
    // Bottom row: (f_deg, ..., f_1, 0, -f_1, ..., -f_{deg-1}) / f_deg.
    for (int k = 0; k < deg; ++k) F(m - 1, k) = p.f(deg - k) / lead;
    F(m - 1, deg) = 0.0;
    for (int k = 1; k < deg; ++k) F(m - 1, deg + k) = -p.f(k) / lead;
  } else {
    // Palindromic lift with doubled middle coefficient.
    // Bottom row: -(f_deg, ..., f_1, 2 f_0, f_1, ..., f_{deg-1}) / f_deg.
    for (int k = 0; k < deg; ++k) F(m - 1, k) = -p.f(deg - k) / lead;
    F(m - 1, deg) = -2.0 * p.f(0) / lead;
    for (int k = 1; k < deg; ++k) F(m - 1, deg + k) = -p.f(k) / lead;
  }
  return F;
}

RootSet roots_in_0_pi(const TrigPolynomial& p, const RootOptions& opts) {
  RootSet out;

  bool degenerate = false;
  Eigen::MatrixXd F;
  try {
    F = companion_matrix(p, opts.tol_coeff);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateZeroPolynomial) throw;
    degenerate = true;  // y == 0: the band center never leaves the real axis
  }

  std::vector<std::pair<double, int>> kept;  // (angle, count 1)
  if (!degenerate) {
    balance_in_place(F);
    Eigen::EigenSolver<Eigen::MatrixXd> es(F);
    if (es.info() != Eigen::Success)
      fail(ErrorCode::InconsistentState, "companion eigensolve failed");
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const std::complex<double> lambda = es.eigenvalues()(i);
      if (std::abs(std::abs(lambda) - 1.0) >= opts.tol_circle) continue;
      kept.emplace_back(std::arg(lambda), 1);
    }
  }

  std::vector<Root> roots;
  if (opts.cluster) {
    // Circular clustering over the whole circle first, so conjugate-split
    // members of a boundary root (angle 0 or pi) are not lost to the
    // half-circle filter before their multiplicity is known.
    std::sort(kept.begin(), kept.end());
    std::vector<std::vector<double>> clusters;
    for (const auto& [angle, cnt] : kept) {
      (void)cnt;
      if (!clusters.empty() &&
          angle_distance(angle, clusters.back().back()) < opts.tol_cluster)
        clusters.back().push_back(angle);
      else
        clusters.push_back({angle});
    }
    // Wrap-around: merge the first and last clusters across -pi/pi.
    if (clusters.size() > 1 &&
        angle_distance(clusters.front().front(), clusters.back().back()) <
            opts.tol_cluster) {
      for (double a : clusters.back()) clusters.front().push_back(a);
      clusters.pop_back();
    }
    for (const auto& members : clusters) {
      // Circular mean via the embedding.
      double sx = 0.0, sy = 0.0;
      for (double a : members) {
        sx += std::cos(a);
        sy += std::sin(a);
      }
      double mean = std::atan2(sy, sx);
      const bool at_zero = angle_distance(mean, 0.0) < opts.tol_cluster;
      const bool at_pi = angle_distance(mean, kPi) < opts.tol_cluster;
      if (at_zero) mean = 0.0;
      if (at_pi) mean = kPi;
      if (!at_zero && !at_pi && mean <= 0.0)
        continue;  // lower-half mirror of an interior root
      Root r;
      r.x = std::clamp(mean, 0.0, kPi);
      r.multiplicity = int(members.size());
      r.odd = (r.multiplicity % 2 == 1);
      roots.push_back(r);
    }
  } else {
    // Raw mode: keep upper-half eigenvalues individually, multiplicity 1.
    for (const auto& [angle, cnt] : kept) {
      (void)cnt;
      if (angle < 0.0 || angle > kPi) continue;
      roots.push_back({angle, 1, true});
    }
  }

  std::sort(roots.begin(), roots.end(),
            [](const Root& a, const Root& b) { return a.x < b.x; });

  out.roots = std::move(roots);
  out.alpha = 0;
  for (const auto& r : out.roots)
    if (r.odd) ++out.alpha;
  out.includes_zero = !out.roots.empty() && out.roots.front().x == 0.0 &&
                      out.roots.front().odd;

  // The center curve always sits on the real axis at omega = 0; keep that
  // visible even when the eigensolve retained no root there.
  const bool has_zero =
      !out.roots.empty() &&
      out.roots.front().x < std::max(opts.tol_cluster, 1e-12);
  if (!has_zero) {
    Root zero;
    zero.x = 0.0;
    zero.multiplicity = 0;
    zero.odd = false;
    out.roots.insert(out.roots.begin(), zero);
  }
  return out;
}

}  // namespace idstab

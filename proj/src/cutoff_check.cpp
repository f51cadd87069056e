#include "idstab/cutoff_check.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "idstab/inclusion_band.hpp"

namespace idstab {

namespace {
double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}
}  // namespace

const char* to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::RobustStable: return "robust_stable";
    case Verdict::Kind::Unstable: return "unstable";
    case Verdict::Kind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* to_string(Verdict::Reason reason) {
  switch (reason) {
    case Verdict::Reason::None: return "none";
    case Verdict::Reason::RhoTooLarge: return "rho_too_large";
    case Verdict::Reason::PlusOneInBand: return "plus_one_in_band";
  }
  return "unknown";
}

CutoffReport cutoff_frequency(const FrequencyModel& fm) {
  if (fm.rho_t() >= 2.0)
    fail(ErrorCode::RhoTooLarge,
         "uncertainty spectral radius " + std::to_string(fm.rho_t()) +
             " >= 2: band too wide for the critical point to stay outside");

  const int n = fm.n();
  const int n0 = fm.degree();
  const int N = fm.knots();
  const auto& d = fm.d_seq();

  CutoffReport rep;
  rep.d_max = d[0];
  rep.d_min = d[0];
  for (int k = 1; k <= N; ++k) {
    rep.d_max = rep.d_max.cwiseMax(d[k]);
    rep.d_min = rep.d_min.cwiseMin(d[k]);
  }
  rep.d_spread = rep.d_max - rep.d_min;
  rep.d_scalar =
      (fm.trace_d().maxCoeff() - fm.trace_d().minCoeff()) / double(2 * n);

  const Eigen::MatrixXd& ds = rep.d_spread;
  const double quad =
      (ds * ds).trace() + (ds.transpose() * ds).trace();
  const double inner =
      2.0 * rep.d_scalar +
      std::sqrt(double(2 * n - 1) / double(n) * quad);
  const double body =
      factorial(n0) * double(1 + N) / (4.0 - 2.0 * fm.rho_t()) * inner;
  rep.omega_cutoff = std::pow(body, 1.0 / double(n0 + 1));
  return rep;
}

CutoffReport check_critical_point_excluded(const FrequencyModel& fm,
                                           CutoffReport report,
                                           int grid_points) {
  if (grid_points < 2) grid_points = 2;
  report.grid_points = grid_points;
  double min_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double omega =
        report.omega_cutoff * double(i) / double(grid_points - 1);
    const BandRectangle rect = band_rectangle(fm, omega);
    const double margin =
        std::max(std::abs(rect.center.real() - 1.0) - rect.half_width_re,
                 std::abs(rect.center.imag()) - rect.half_width_im);
    min_margin = std::min(min_margin, margin);
  }
  report.min_margin = min_margin;
  report.passed = min_margin > 0.0;
  return report;
}

TraceTest trace_instability_test(const FrequencyModel& fm) {
  const double tr = fm.m_hat_zero().trace();
  const double n = double(fm.n());
  if (std::abs(tr - n) < 1e-9 * std::max(1.0, n))
    fail(ErrorCode::InconsistentState,
         "tr(m_hat(0)) equals n within tolerance; impossible once the "
         "exclusion check passed");
  return tr > n ? TraceTest::UnstableOddMultiple : TraceTest::Proceed;
}

GershgorinOutcome gershgorin_instability_test(const FrequencyModel& fm,
                                              const GershgorinOptions& opts) {
  const int n = fm.n();
  Eigen::EigenSolver<Eigen::MatrixXd> es(fm.m_hat_zero());
  if (es.info() != Eigen::Success)
    fail(ErrorCode::Defective, "eigendecomposition of m_hat(0) failed");
  const Eigen::MatrixXcd v = es.eigenvectors();
  const Eigen::VectorXcd lambda = es.eigenvalues();

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > opts.cond_threshold)
    fail(ErrorCode::Defective,
         "m_hat(0) is too close to defective (eigenvector condition number "
         "above threshold)");

  const Eigen::MatrixXcd v_inv = v.inverse();
  const Eigen::MatrixXcd jordan = v_inv * fm.m_hat_zero() * v;
  Eigen::MatrixXd r = (jordan - lambda.asDiagonal().toDenseMatrix()).cwiseAbs();
  r += v_inv.cwiseAbs() * fm.m_tilde() * v.cwiseAbs();

  int odd_count = 0;
  const double axis_tol = 1e-9 * (1.0 + lambda.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i)
    if (std::abs(lambda(i).imag()) <= axis_tol && lambda(i).real() > 1.0)
      ++odd_count;
  if (odd_count % 2 == 0) return GershgorinOutcome::NoConclusion;

  // Every circle must either lie strictly right of x = 1 or strictly avoid
  // the real ray {x < 1}.
  for (int i = 0; i < n; ++i) {
    const double radius =
        opts.column_sums ? r.col(i).sum() : r.row(i).sum();
    const double cx = lambda(i).real();
    const double cy = lambda(i).imag();
    if (cx - radius > 1.0) continue;  // strictly right of the critical point
    if (std::abs(cy) > radius) continue;  // never touches the real axis
    const double reach = std::sqrt(std::max(0.0, radius * radius - cy * cy));
    if (cx - reach >= 1.0) continue;  // axis chord stays right of 1
    return GershgorinOutcome::NoConclusion;
  }
  return GershgorinOutcome::Unstable;
}

}  // namespace idstab

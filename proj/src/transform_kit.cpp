#include "idstab/detail/transform_kit.hpp"

#include <cmath>

namespace idstab::detail {

namespace {
double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}
}  // namespace

std::vector<std::vector<Eigen::MatrixXd>> cell_polynomials(
    int n0, double h, int N, const std::vector<Eigen::MatrixXd>& coeff) {
  const int n = coeff.empty() ? 0 : int(coeff[0].rows());
  std::vector<std::vector<Eigen::MatrixXd>> cells(N);
  for (int m = 0; m < N; ++m) {
    cells[m].assign(n0 + 1, Eigen::MatrixXd::Zero(n, n));
    // k = m: only the leading truncated power is active: u^n0.
    cells[m][n0] += coeff[m];
    // k < m: (u + (m-k) h)^n0 - (u + (m-k-1) h)^n0, expanded binomially.
    for (int k = 0; k < m; ++k) {
      const double a = (m - k) * h;
      const double b = (m - k - 1) * h;
      for (int q = 0; q <= n0; ++q) {
        const double w =
            binom(n0, q) * (std::pow(a, n0 - q) - std::pow(b, n0 - q));
        if (w != 0.0) cells[m][q] += w * coeff[k];
      }
    }
  }
  return cells;
}

std::complex<double> segment_moment(int q, double len, double w) {
  const std::complex<double> jw(0.0, w);
  if (std::abs(w) * len < 0.5) {
    // sum_p (-j w)^p len^{q+p+1} / (p! (q+p+1)); leading term dominates, no
    // cancellation.
    std::complex<double> acc(0.0, 0.0);
    std::complex<double> term(1.0, 0.0);  // (-j w)^p / p!
    double lp = std::pow(len, q + 1);
    for (int p = 0; p < 80; ++p) {
      const std::complex<double> contrib = term * lp / double(q + p + 1);
      acc += contrib;
      if (std::abs(contrib) < 1e-20 * (std::abs(acc) + 1e-300)) break;
      term *= -jw / double(p + 1);
      lp *= len;
    }
    return acc;
  }
  // Integration by parts upward in q.
  const std::complex<double> e = std::exp(-jw * len);
  std::complex<double> acc = (1.0 - e) / jw;  // q = 0
  double lq = 1.0;                            // len^q
  for (int p = 1; p <= q; ++p) {
    lq *= len;
    acc = (double(p) * acc - lq * e) / jw;
  }
  return acc;
}

Eigen::MatrixXcd cell_transform(
    const std::vector<std::vector<Eigen::MatrixXd>>& cells, double h,
    double w) {
  const int N = int(cells.size());
  const int n = N ? int(cells[0][0].rows()) : 0;
  const int n0 = N ? int(cells[0].size()) - 1 : 0;
  std::vector<std::complex<double>> moments(n0 + 1);
  for (int q = 0; q <= n0; ++q) moments[q] = segment_moment(q, h, w);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int m = 0; m < N; ++m) {
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, -w * m * h));
    Eigen::MatrixXcd cell = Eigen::MatrixXcd::Zero(n, n);
    for (int q = 0; q <= n0; ++q)
      cell += cells[m][q].cast<std::complex<double>>() * moments[q];
    out += phase * cell;
  }
  return out;
}

}  // namespace idstab::detail

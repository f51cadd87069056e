#include "idstab/freq_transform.hpp"

#include <cmath>
#include <stdexcept>

#include "idstab/detail/transform_kit.hpp"
#include "idstab/inclusion_band.hpp"

namespace idstab {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Below this frequency the closed-form numerator telescopes to
// O((omega tau_max)^{n0+1}) and cancels; the per-cell quadrature branch is
// exact there. The floor keeps the relative cancellation error of the
// closed form below ~1e-10 right at the switch.
double pick_omega_switch(int n0, double horizon) {
  const double spec = 1e-3 * (n0 + 1);
  const double floor = std::pow(1e10 * 2.3e-16, 1.0 / (n0 + 1));
  return std::max(spec, floor) / horizon;
}

}  // namespace

FrequencyModel build_frequency_model(const SplineKernelBounds& model) {
  const int n = model.n();
  const int N = model.knots();

  FrequencyModel fm;
  fm.source_ = model;

  fm.m_tilde_ = Eigen::MatrixXd::Zero(n, n);
  fm.m_hat_zero_ = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < N; ++k) {
    const double ik = integrate_basis(model.degree(), k, model.step(), N);
    fm.m_tilde_ += 0.5 * (model.upper(k) - model.lower(k)) * ik;
    fm.m_hat_zero_ += model.midpoint(k) * ik;
  }

  fm.d_seq_.resize(N + 1);
  auto summed = [&](int k) -> Eigen::MatrixXd {
    return model.upper(k) + model.lower(k);
  };
  fm.d_seq_[0] = summed(0);
  for (int k = 1; k <= N - 1; ++k) fm.d_seq_[k] = summed(k) - summed(k - 1);
  fm.d_seq_[N] = -summed(N - 1);

  fm.trace_d_.resize(N + 1);
  for (int k = 0; k <= N; ++k) fm.trace_d_(k) = fm.d_seq_[k].trace();

  std::vector<Eigen::MatrixXd> mid(N);
  for (int k = 0; k < N; ++k) mid[k] = model.midpoint(k);
  fm.midpoint_cells_ =
      detail::cell_polynomials(model.degree(), model.step(), N, mid);

  fm.omega_switch_ = pick_omega_switch(model.degree(), model.horizon());
  fm.rho_t_ = rho_T(fm.m_tilde_);
  return fm;
}

Eigen::MatrixXcd m_hat_signed(const FrequencyModel& fm, double omega) {
  const int n0 = fm.degree();
  if (omega == 0.0) return fm.m_hat_zero_.cast<std::complex<double>>();
  if (std::abs(omega) < fm.omega_switch_)
    return detail::cell_transform(fm.midpoint_cells_, fm.step(), omega);

  const std::complex<double> jw(0.0, omega);
  const std::complex<double> scale =
      factorial(n0) / (2.0 * std::pow(jw, n0 + 1));
  const int n = fm.n();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < (int)fm.d_seq_.size(); ++k) {
    const std::complex<double> e =
        std::exp(std::complex<double>(0.0, -k * fm.step() * omega));
    acc += fm.d_seq_[k].cast<std::complex<double>>() * e;
  }
  return scale * acc;
}

ComplexMatrixSample m_hat_at(const FrequencyModel& fm, double omega) {
  if (!(omega >= 0.0))
    throw std::invalid_argument(
        "m_hat_at: omega must be >= 0 (negative frequencies are served by "
        "conjugate symmetry)");
  return {omega, m_hat_signed(fm, omega)};
}

bool sample_conjugate_symmetry(const FrequencyModel& fm, double omega,
                               double tol) {
  const Eigen::MatrixXcd pos = m_hat_signed(fm, omega);
  const Eigen::MatrixXcd neg = m_hat_signed(fm, -omega);
  const double scale = pos.cwiseAbs().maxCoeff() + 1.0;
  return (neg - pos.conjugate()).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace idstab

#include "idstab/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "idstab/detail/transform_kit.hpp"
#include "idstab/freq_transform.hpp"
#include "idstab/inclusion_band.hpp"

namespace idstab {

namespace {

constexpr double kPi = std::numbers::pi;

// All permutations for small n, greedy beyond; returns the assignment of
// next[j] to prev[i] minimizing total displacement, plus the cost gap to the
// runner-up (used to detect ambiguous pairings).
struct Pairing {
  std::vector<int> assign;
  double best = 0.0;
  double runner_up = 0.0;
};

Pairing pair_eigenvalues(const Eigen::VectorXcd& prev,
                         const Eigen::VectorXcd& next) {
  const int n = int(prev.size());
  Pairing out;
  if (n == 1) {
    out.assign = {0};
    out.best = std::abs(next(0) - prev(0));
    out.runner_up = std::numeric_limits<double>::infinity();
    return out;
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  if (n <= 4) {
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    std::vector<int> best_perm = perm;
    do {
      double cost = 0.0;
      for (int i = 0; i < n; ++i) cost += std::abs(next(perm[i]) - prev(i));
      if (cost < best) {
        second = best;
        best = cost;
        best_perm = perm;
      } else if (cost < second) {
        second = cost;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.assign = best_perm;
    out.best = best;
    out.runner_up = second;
    return out;
  }
  // Greedy nearest neighbor for larger n.
  std::vector<bool> used(n, false);
  out.assign.assign(n, -1);
  double cost = 0.0;
  for (int i = 0; i < n; ++i) {
    double dmin = std::numeric_limits<double>::infinity();
    int jmin = -1;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(next(j) - prev(i));
      if (d < dmin) {
        dmin = d;
        jmin = j;
      }
    }
    used[jmin] = true;
    out.assign[i] = jmin;
    cost += dmin;
  }
  out.best = cost;
  out.runner_up = std::numeric_limits<double>::infinity();
  return out;
}

Eigen::VectorXcd loci_at(const ConcreteSplineKernel& kernel, double omega) {
  const Eigen::MatrixXcd m = kernel_transform(kernel, omega);
  if (kernel.n() == 1) {
    Eigen::VectorXcd v(1);
    v(0) = m(0, 0);
    return v;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::InconsistentState, "transform eigensolve failed");
  return es.eigenvalues();
}

double max_abs_eigenvalue(const ConcreteSplineKernel& kernel, double omega) {
  return loci_at(kernel, omega).cwiseAbs().maxCoeff();
}

}  // namespace

ConcreteSplineKernel sample_admissible_kernel(const SplineKernelBounds& bounds,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Eigen::MatrixXd> coeff(bounds.knots());
  for (int k = 0; k < bounds.knots(); ++k) {
    coeff[k].resize(bounds.n(), bounds.n());
    for (int i = 0; i < bounds.n(); ++i)
      for (int j = 0; j < bounds.n(); ++j) {
        const double lo = bounds.lower(k)(i, j);
        const double hi = bounds.upper(k)(i, j);
        coeff[k](i, j) = lo + (hi - lo) * uni(rng);
      }
  }
  return {bounds.n(), bounds.degree(), bounds.step(), bounds.knots(),
          std::move(coeff)};
}

Eigen::MatrixXcd kernel_transform(const ConcreteSplineKernel& kernel,
                                  double omega) {
  const auto cells = detail::cell_polynomials(
      kernel.degree(), kernel.step(), kernel.knots(), kernel.coeff());
  return detail::cell_transform(cells, kernel.step(), omega);
}

WindingReport nyquist_winding(const ConcreteSplineKernel& kernel,
                              double omega_max, int grid_points) {
  if (grid_points < 16) grid_points = 16;

  if (omega_max <= 0.0) {
    // Push the horizon until the loci have collapsed well inside the unit
    // ball around the origin, so the tail cannot wind around +1.
    omega_max = std::max(8.0 * kPi / kernel.step(), 16.0 / kernel.horizon());
    while (max_abs_eigenvalue(kernel, omega_max) > 0.2 && omega_max < 1e9)
      omega_max *= 2.0;
  }

  WindingReport report;
  report.min_distance_to_one = std::numeric_limits<double>::infinity();

  // Positive-frequency half; the negative half mirrors by conjugation and
  // contributes the same total angle.
  std::vector<double> grid(grid_points);
  for (int i = 0; i < grid_points; ++i)
    grid[i] = omega_max * double(i) / double(grid_points - 1);

  const int n = kernel.n();
  double total_angle = 0.0;
  Eigen::VectorXcd prev = loci_at(kernel, grid[0]);
  auto note_distance = [&](const Eigen::VectorXcd& v) {
    for (int i = 0; i < n; ++i)
      report.min_distance_to_one =
          std::min(report.min_distance_to_one, std::abs(v(i) - 1.0));
  };
  note_distance(prev);

  // Walk one interval, subdividing until the pairing is unambiguous and the
  // per-branch steps are small.
  const int max_depth = 40;
  std::function<void(double, double, const Eigen::VectorXcd&,
                     const Eigen::VectorXcd&, int)>
      walk = [&](double w0, double w1, const Eigen::VectorXcd& a,
                 const Eigen::VectorXcd& b, int depth) {
        double sep = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            sep = std::min(sep, std::abs(a(i) - a(j)));
            sep = std::min(sep, std::abs(b(i) - b(j)));
          }
        const Pairing p = pair_eigenvalues(a, b);
        double max_move = 0.0;
        for (int i = 0; i < n; ++i)
          max_move = std::max(max_move, std::abs(b(p.assign[i]) - a(i)));
        const bool ambiguous = n > 1 && max_move > 0.5 * sep;
        // Keep per-step rotation about +1 small so the winding accumulates
        // unambiguously.
        double max_turn = 0.0;
        for (int i = 0; i < n; ++i) {
          const std::complex<double> za = a(i) - 1.0;
          const std::complex<double> zb = b(p.assign[i]) - 1.0;
          max_turn = std::max(max_turn, std::abs(std::arg(zb / za)));
        }
        if ((ambiguous || max_turn > 0.5) && depth < max_depth) {
          const double wm = 0.5 * (w0 + w1);
          const Eigen::VectorXcd mid = loci_at(kernel, wm);
          note_distance(mid);
          ++report.subdivisions;
          walk(w0, wm, a, mid, depth + 1);
          walk(wm, w1, mid, b, depth + 1);
          return;
        }
        if (ambiguous)
          fail(ErrorCode::PairingAmbiguity,
               "eigenvalue branches could not be disentangled after maximum "
               "subdivision");
        for (int i = 0; i < n; ++i) {
          const std::complex<double> za = a(i) - 1.0;
          const std::complex<double> zb = b(p.assign[i]) - 1.0;
          total_angle += std::arg(zb / za);
        }
      };

  for (int i = 0; i + 1 < grid_points; ++i) {
    Eigen::VectorXcd next = loci_at(kernel, grid[i + 1]);
    note_distance(next);
    // Keep branch identity along the sweep: reorder next to match prev.
    const Pairing p = pair_eigenvalues(prev, next);
    Eigen::VectorXcd next_ordered(n);
    for (int k = 0; k < n; ++k) next_ordered(k) = next(p.assign[k]);
    walk(grid[i], grid[i + 1], prev, next_ordered, 0);
    prev = next_ordered;
  }

  const double scale = 1.0 + max_abs_eigenvalue(kernel, 0.0);
  if (report.min_distance_to_one < 1e-6 * scale)
    fail(ErrorCode::DegenerateLocus,
         "an eigenlocus passes within tolerance of the critical point +1");

  // Full-line total is twice the positive half. Clockwise encirclements are
  // the negative of the accumulated counterclockwise angle.
  const double w = 2.0 * total_angle / (2.0 * kPi);
  const long rounded = std::lround(w);
  if (std::abs(w - double(rounded)) > 0.2)
    fail(ErrorCode::PairingAmbiguity,
         "winding accumulation did not settle on an integer; grid too "
         "coarse");
  report.grid = std::move(grid);
  report.winding = int(-rounded);
  return report;
}

Trajectory simulate(const ConcreteSplineKernel& kernel,
                    const std::function<Eigen::VectorXd(double)>& phi,
                    double dt, double t_end) {
  const double h = kernel.step();
  const double ratio = h / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-12 * std::max(1.0, ratio))
    fail(ErrorCode::StepTooCoarse, "dt must divide the knot spacing h");

  const double horizon = kernel.horizon();
  const int hist = int(std::round(horizon / dt));  // quadrature panels
  const int total = int(std::round(t_end / dt)) + 1;
  const int n = kernel.n();

  // Kernel samples on the quadrature grid, trapezoid weights folded in.
  std::vector<Eigen::MatrixXd> w(hist + 1);
  for (int j = 0; j <= hist; ++j) {
    const double weight = (j == 0 || j == hist) ? 0.5 * dt : dt;
    w[j] = weight * kernel.eval(j * dt);
  }

  Trajectory traj;
  traj.dt = dt;
  traj.t.resize(total);
  traj.samples.resize(total);
  for (int s = 0; s < total; ++s) traj.t[s] = s * dt;
  for (int s = 0; s <= hist && s < total; ++s) traj.samples[s] = phi(s * dt);

  for (int s = hist + 1; s < total; ++s) {
    Eigen::VectorXd past = Eigen::VectorXd::Zero(n);
    for (int j = 1; j <= hist; ++j) past += w[j] * traj.samples[s - j];
    // The j = 0 node involves the new value; two fixed-point passes resolve
    // it (contraction since dt * |A(0)| / 2 is tiny).
    Eigen::VectorXd x = traj.samples[s - 1];
    for (int pass = 0; pass < 2; ++pass) x = past + w[0] * x;
    traj.samples[s] = x;
  }

  // Exponential rate over the trailing half by least squares on log norm.
  const int start = total / 2;
  double sum_t = 0.0, sum_y = 0.0, sum_tt = 0.0, sum_ty = 0.0;
  int count = 0;
  for (int s = start; s < total; ++s) {
    const double norm = traj.samples[s].norm();
    if (norm < 1e-280) continue;
    const double y = std::log(norm);
    const double t = traj.t[s];
    sum_t += t;
    sum_y += y;
    sum_tt += t * t;
    sum_ty += t * y;
    ++count;
  }
  if (count < 2) {
    traj.growth_rate = -1e6;  // trajectory vanished
  } else {
    const double denom = count * sum_tt - sum_t * sum_t;
    traj.growth_rate =
        denom == 0.0 ? 0.0 : (count * sum_ty - sum_t * sum_y) / denom;
  }
  return traj;
}

InclusionViolations verify_inclusions(const SplineKernelBounds& bounds,
                                      int n_samples, int n_freqs,
                                      std::uint64_t seed) {
  const FrequencyModel fm = build_frequency_model(bounds);
  const int n = bounds.n();

  // Frequency spread: dense near zero, extending past several basis periods.
  std::vector<double> freqs(n_freqs);
  const double w_hi = 4.0 * kPi * (bounds.knots() + 1) / bounds.horizon();
  for (int i = 0; i < n_freqs; ++i)
    freqs[i] = w_hi * double(i) / double(std::max(1, n_freqs - 1));

  std::vector<Eigen::MatrixXcd> centers(n_freqs);
  std::vector<BandRectangle> rects(n_freqs);
  for (int i = 0; i < n_freqs; ++i) {
    const auto sample = m_hat_at(fm, freqs[i]);
    centers[i] = sample.value;
    rects[i] = band_rectangle_at(fm, sample);
  }

  InclusionViolations out;
  for (int s = 0; s < n_samples; ++s) {
    const ConcreteSplineKernel kernel =
        sample_admissible_kernel(bounds, seed + std::uint64_t(s));
    for (int i = 0; i < n_freqs; ++i) {
      const Eigen::MatrixXcd m = kernel_transform(kernel, freqs[i]);
      ++out.checks;
      const double tol = 1e-9 * (1.0 + centers[i].cwiseAbs().maxCoeff());
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          const std::complex<double> d = m(r, c) - centers[i](r, c);
          const double half = fm.m_tilde()(r, c) + tol;
          if (std::abs(d.real()) > half || std::abs(d.imag()) > half)
            ++out.square;
        }
      const Eigen::VectorXcd lambda =
          n == 1 ? Eigen::VectorXcd::Constant(1, m(0, 0))
                 : Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(m).eigenvalues();
      for (int e = 0; e < n; ++e) {
        if (std::abs(lambda(e).real() - rects[i].center.real()) >
                rects[i].half_width_re + tol ||
            std::abs(lambda(e).imag() - rects[i].center.imag()) >
                rects[i].half_width_im + tol)
          ++out.rectangle;
      }
    }
  }
  return out;
}

}  // namespace idstab

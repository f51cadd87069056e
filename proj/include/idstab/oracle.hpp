#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "idstab/kernel_model.hpp"

namespace idstab {

// Independent ground-truth machinery: admissible-kernel sampling, dense
// eigenloci winding counts, and time-domain simulation. Everything here is
// deliberately separate from the certification path so the two can check
// each other.

struct Trajectory {
  double dt = 0.0;
  std::vector<double> t;
  std::vector<Eigen::VectorXd> samples;
  double growth_rate = 0.0;  // fitted exponential rate over the trailing half
};

struct WindingReport {
  std::vector<double> grid;
  int winding = 0;  // clockwise encirclements of +1 over the full line
  double min_distance_to_one = 0.0;
  int subdivisions = 0;
};

struct InclusionViolations {
  long square = 0;     // per-entry square containment failures
  long rectangle = 0;  // eigenvalue rectangle containment failures
  long checks = 0;
};

// Uniform per-coefficient draw between the bounds; deterministic per seed.
ConcreteSplineKernel sample_admissible_kernel(const SplineKernelBounds& bounds,
                                              std::uint64_t seed);

// Exact transform integral_0^{horizon} A(tau) exp(-j omega tau) dtau of a
// concrete spline kernel (per-cell closed form; omega may be negative).
Eigen::MatrixXcd kernel_transform(const ConcreteSplineKernel& kernel,
                                  double omega);

// Clockwise winding of the eigenloci of the kernel transform about +1,
// accumulated over a dense symmetric frequency sweep with greedy branch
// pairing and automatic grid subdivision. omega_max <= 0 picks a horizon
// where the loci have collapsed near the origin. Throws DegenerateLocus if
// a locus passes within tolerance of +1, PairingAmbiguity if branches
// cannot be disentangled after the subdivision limit.
WindingReport nyquist_winding(const ConcreteSplineKernel& kernel,
                              double omega_max = 0.0, int grid_points = 4096);

// Marches x(t) = integral_0^{horizon} A(tau) x(t - tau) dtau forward by
// composite-trapezoid quadrature over the stored history. dt must divide
// the knot spacing (StepTooCoarse otherwise). phi supplies the initial
// function on [0, horizon].
Trajectory simulate(const ConcreteSplineKernel& kernel,
                    const std::function<Eigen::VectorXd(double)>& phi,
                    double dt, double t_end);

// Monte Carlo check of the two frequency-domain inclusions: every sampled
// admissible transform entry in its square, every sampled eigenvalue in its
// rectangle. Expected violation counts: zero.
InclusionViolations verify_inclusions(const SplineKernelBounds& bounds,
                                      int n_samples, int n_freqs,
                                      std::uint64_t seed);

}  // namespace idstab

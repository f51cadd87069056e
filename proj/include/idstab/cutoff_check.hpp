#pragma once

#include <Eigen/Core>
#include <string>

#include "idstab/freq_transform.hpp"

namespace idstab {

// Finite-frequency reduction: beyond omega_cutoff the critical point +1 is
// guaranteed outside the inclusion band, so the exclusion conditions only
// need sampling on [0, omega_cutoff].
struct CutoffReport {
  double omega_cutoff = 0.0;
  Eigen::MatrixXd d_max;     // elementwise max_k of the difference matrices
  Eigen::MatrixXd d_min;     // elementwise min_k
  Eigen::MatrixXd d_spread;  // d_max - d_min
  double d_scalar = 0.0;     // (max_k tr D_k - min_k tr D_k) / (2n)
  bool passed = false;
  double min_margin = 0.0;
  int grid_points = 0;
};

struct Verdict {
  enum class Kind { RobustStable, Unstable, Inconclusive };
  enum class Reason { None, RhoTooLarge, PlusOneInBand };

  Kind kind = Kind::Inconclusive;
  long zeta = 0;  // open-right-half-plane root count when kind == Unstable
  Reason reason = Reason::None;
  std::string detail;
};

const char* to_string(Verdict::Kind kind);
const char* to_string(Verdict::Reason reason);

// Computes omega_cutoff from the spread of the difference matrices (BPR
// trigonometric-sum bound). Requires rho_t < 2; throws RhoTooLarge
// otherwise, since the bound degenerates there.
CutoffReport cutoff_frequency(const FrequencyModel& fm);

// Samples an endpoint-inclusive uniform grid on [0, omega_cutoff] and
// requires, at every point, |Re center - 1| > half_width_re or
// |Im center| > half_width_im. Failure is encoded as passed = false.
CutoffReport check_critical_point_excluded(const FrequencyModel& fm,
                                           CutoffReport report,
                                           int grid_points = 4096);

enum class TraceTest { Proceed, UnstableOddMultiple };

// Quick instability test on the transform at zero frequency: if
// tr(m_hat(0)) > n the system has an odd multiple of n unstable roots.
// Equality within 1e-9 is impossible once the exclusion check passed and is
// reported as InconsistentState.
TraceTest trace_instability_test(const FrequencyModel& fm);

// Modified Gershgorin instability test on the interval matrix at zero
// frequency. Off the main analysis path; requires m_hat(0) to be
// numerically diagonalizable (throws Defective when the eigenvector
// condition number exceeds the threshold).
enum class GershgorinOutcome { Unstable, NoConclusion };

struct GershgorinOptions {
  double cond_threshold = 1e8;
  bool column_sums = false;  // radii from column sums instead of row sums
};

GershgorinOutcome gershgorin_instability_test(
    const FrequencyModel& fm, const GershgorinOptions& opts = {});

}  // namespace idstab

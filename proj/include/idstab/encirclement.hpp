#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "idstab/cutoff_check.hpp"
#include "idstab/trig_roots.hpp"

namespace idstab {

// Real-axis crossover abscissae x_i (in x = h * omega units) and the band
// center values there.
struct BaseSequence {
  std::vector<double> x;  // ascending unless a caller feeds a custom order
  std::vector<double> X;  // center value at x_i / h
};

// Extended crossover data: the base roots replicated over reflection and
// shift periods, with values scaled by the (x_g / x_i)^{n0+1} attenuation.
// Index 0 is the head (sentinel or the zero-frequency center), indices
// 1..J the extended sequence, index J+1 a final origin sentinel.
struct CrossoverData {
  Eigen::VectorXd x;
  Eigen::VectorXd X;
  Eigen::VectorXi g;   // base index feeding entry i (0 for head/tail)
  Eigen::VectorXd v;   // v_i = (X_i - 1)(X_{i+1} - 1), i = 0..J
  Eigen::VectorXd mu;  // mu_i = X_{i+1} - X_i
  int J = 0;
  int alpha = 0;
};

struct JumpRecord {
  int round = 0;
  int index = 0;
  bool ascent = false;
  int sign = 0;
};

struct RoundTrace {
  std::vector<double> z_before;
  std::vector<JumpRecord> jumps;
  int beta = 0;
  int j_prime = 0;
  int updates = 0;
  bool gamma_minus = false;
  bool gamma_plus = false;
};

struct AlgorithmTrace {
  std::vector<RoundTrace> rounds;
  long total_jumps = 0;    // signed sum
  int step10_updates = 0;  // total samples rescaled
};

struct CountOptions {
  double tol_v = 1e-9;  // scaled by (1 + max X^2); tangency guard
};

// Sorted crossover abscissae/values for the odd-multiplicity roots.
// Values use the numerically stable transform evaluator (limit at x = 0).
BaseSequence crossover_values(const FrequencyModel& fm, const RootSet& roots);

// Exact unstable-root count from the fully expanded crossover sequence.
// head_value is the chain head: 0 for the standard path (the trace test
// passed), tr(m_hat(0))/n when continuing past a failed trace test - the
// zero-frequency crossing then sits right of +1 and is its own mirror, so
// it enters the chain directly instead of through the sentinel.
// Throws TangentCrossing when a crossover value sits on +1 within
// tolerance.
std::pair<long, CrossoverData> zeta_direct(const FrequencyModel& fm,
                                           const BaseSequence& base,
                                           double head_value = 0.0,
                                           const CountOptions& opts = {});

// Same count through the iterative windowed sweep: jumps of the working
// sequence across the threshold +1 are accumulated round by round while the
// sequence is rescaled window by window until no sample magnitude exceeds 1
// at either sweep phase. The base may be fed in any order (the published
// walkthrough order is not sorted); the total is order-invariant.
std::pair<long, AlgorithmTrace> zeta_windowed(const FrequencyModel& fm,
                                              const BaseSequence& base,
                                              double head_value = 0.0,
                                              const CountOptions& opts = {});

struct AnalysisOptions {
  int grid_points = 4096;
  RootOptions roots;
  CountOptions count;
};

struct AnalysisResult {
  Verdict verdict;
  int decided_at_step = 0;  // 1 rho gate, 2 exclusion, 3 trace test,
                            // 5 no relevant crossings, 15 full count
  double rho_t = 0.0;
  double omega_cutoff = 0.0;
  double min_margin = 0.0;
  double trace_at_zero = 0.0;  // tr(m_hat(0))
  bool trace_test_unstable = false;
  bool exclusion_passed = false;
  RootSet roots;
  int alpha = 0;
  BaseSequence base;
  long zeta_direct_count = -1;
  long zeta_windowed_count = -1;
  CrossoverData crossover;
  AlgorithmTrace trace;
  int grid_points = 0;
};

// Full certification pipeline: frequency model, uncertainty gate, cutoff and
// exclusion check, trace test, crossover extraction, and both encirclement
// counters (which must agree; CounterDisagreement otherwise).
AnalysisResult analyze(const SplineKernelBounds& model,
                       const AnalysisOptions& opts = {});

}  // namespace idstab

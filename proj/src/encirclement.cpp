#include "idstab/encirclement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "idstab/inclusion_band.hpp"

namespace idstab {

namespace {

constexpr double kPi = std::numbers::pi;

double ipow(double b, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int sgn(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Horizon of the extended sequence: beyond it every attenuated value has
// magnitude below one, so no further threshold crossings are possible.
int horizon(int alpha, int n0, double max_abs_x) {
  const double root = std::pow(std::max(max_abs_x, 0.0), 1.0 / double(n0 + 1));
  return 2 * alpha * int(std::ceil((root + 1.0) / 2.0)) + alpha;
}

void check_not_tangent(double value, double tol_one) {
  if (std::abs(value - 1.0) <= tol_one)
    fail(ErrorCode::TangentCrossing,
         "crossover value " + std::to_string(value) +
             " sits on the critical point within tolerance; the sweep is "
             "tangent to +1");
}

}  // namespace

BaseSequence crossover_values(const FrequencyModel& fm, const RootSet& roots) {
  BaseSequence base;
  for (const auto& r : roots.roots) {
    if (!r.odd) continue;
    base.x.push_back(r.x);
    const auto sample = m_hat_at(fm, r.x / fm.step());
    base.X.push_back(sample.value.trace().real() / double(fm.n()));
  }
  return base;
}

std::pair<long, CrossoverData> zeta_direct(const FrequencyModel& fm,
                                           const BaseSequence& base,
                                           double head_value,
                                           const CountOptions& opts) {
  const int alpha = int(base.x.size());
  const int n0 = fm.degree();

  // Base roots must be ascending for the period extension to be sorted.
  std::vector<int> order(alpha);
  for (int i = 0; i < alpha; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return base.x[a] < base.x[b]; });
  std::vector<double> xb(alpha), Xb(alpha);
  for (int i = 0; i < alpha; ++i) {
    xb[i] = base.x[order[i]];
    Xb[i] = base.X[order[i]];
  }

  double max_abs = 0.0;
  for (double v : Xb) max_abs = std::max(max_abs, std::abs(v));
  const int J = alpha == 0 ? 0 : horizon(alpha, n0, max_abs);

  CrossoverData data;
  data.alpha = alpha;
  data.J = J;
  data.x.resize(J + 2);
  data.X.resize(J + 2);
  data.g.resize(J + 2);

  data.x(0) = 0.0;
  data.X(0) = head_value;
  data.g(0) = 0;
  for (int i = 1; i <= J; ++i) {
    const int q = (i - 1) / alpha;
    const int r = i - q * alpha;          // 1..alpha
    const int g = (q % 2 == 0) ? r : alpha + 1 - r;
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;
    const double x = sign * xb[g - 1] + 2.0 * kPi * std::ceil(q / 2.0);
    data.g(i) = g;
    data.x(i) = x;
    if (q == 0) {
      data.X(i) = Xb[g - 1];
    } else if (xb[g - 1] == 0.0) {
      data.X(i) = 0.0;  // shifted copies of the zero root: the numerator
                        // vanishes at whole periods
    } else {
      data.X(i) = ipow(sign * xb[g - 1] / x, n0 + 1) * Xb[g - 1];
    }
  }
  // Closing sentinel: the loci collapse to the origin as omega -> infinity.
  data.x(J + 1) = data.x(J) + 1.0;
  data.X(J + 1) = 0.0;
  data.g(J + 1) = 0;

  const double tol = opts.tol_v * (1.0 + max_abs * max_abs);
  for (int i = 1; i <= J; ++i) check_not_tangent(data.X(i), tol);
  if (head_value != 0.0) check_not_tangent(head_value, tol);

  data.v.resize(J + 1);
  data.mu.resize(J + 1);
  long sum = 0;
  for (int i = 0; i <= J; ++i) {
    data.v(i) = (data.X(i) - 1.0) * (data.X(i + 1) - 1.0);
    data.mu(i) = data.X(i + 1) - data.X(i);
    if (data.v(i) < -tol) {
      const int term = ((i % 2 == 0) ? 1 : -1) * sgn(data.mu(i));
      sum += term;
    }
  }
  const long zeta = fm.n() * std::labs(sum);
  return {zeta, std::move(data)};
}

std::pair<long, AlgorithmTrace> zeta_windowed(const FrequencyModel& fm,
                                              const BaseSequence& base,
                                              double head_value,
                                              const CountOptions& opts) {
  const int alpha = int(base.x.size());
  const int n0 = fm.degree();
  AlgorithmTrace trace;

  if (alpha == 0) {
    // No crossovers: only the zero-frequency point can matter, and it does
    // only in the continuation past a failed trace test.
    trace.total_jumps = head_value > 1.0 ? 1 : 0;
    return {fm.n() * trace.total_jumps, std::move(trace)};
  }

  double max_abs = 0.0;
  for (double v : base.X) max_abs = std::max(max_abs, std::abs(v));
  const double tol = opts.tol_v * (1.0 + max_abs * max_abs);
  for (double v : base.X) check_not_tangent(v, tol);
  if (head_value != 0.0) check_not_tangent(head_value, tol);

  std::vector<double> z(alpha + 1);
  z[0] = head_value;
  for (int i = 1; i <= alpha; ++i) z[i] = base.X[i - 1];

  int beta = 1;
  int j_prime = 1;
  bool gamma_minus = false, gamma_plus = false;
  long sum = 0;
  const int round_limit = 10 * horizon(alpha, n0, max_abs) + 16;

  for (int round = 1;; ++round) {
    if (round > round_limit)
      fail(ErrorCode::NonTermination,
           "windowed sweep exceeded the round limit; this indicates an "
           "implementation bug");
    RoundTrace rt;
    rt.z_before = z;
    rt.beta = beta;
    rt.j_prime = j_prime;

    // Count threshold crossings of the working sequence. The parity of
    // i + (1 - beta) alpha / 2 fixes the jump sign.
    const int offset = ((1 - beta) / 2) * alpha;
    for (int i = 0; i < alpha; ++i) {
      const double a = z[i], b = z[i + 1];
      const bool a_low = a < 1.0 - tol, a_high = a > 1.0 + tol;
      const bool b_low = b < 1.0 - tol, b_high = b > 1.0 + tol;
      if ((!a_low && !a_high && (b_low || b_high)) ||
          (!b_low && !b_high && (a_low || a_high)))
        check_not_tangent(!a_low && !a_high ? a : b, tol);
      int sign = 0;
      bool ascent = false;
      if (a_high && b_low) {  // descent through 1
        sign = ((i + offset) % 2 == 0) ? -1 : 1;
      } else if (a_low && b_high) {  // ascent through 1
        ascent = true;
        sign = ((i + offset) % 2 == 0) ? 1 : -1;
      } else {
        continue;
      }
      sum += sign;
      rt.jumps.push_back({round, i, ascent, sign});
    }

    z[0] = z[alpha];
    if (beta == -1) std::reverse(z.begin() + 1, z.end());
    int updates = 0;
    for (int i = 1; i <= alpha; ++i) {
      if (std::abs(z[i]) > 1.0) {
        const double xi = base.x[i - 1];
        z[i] = base.X[i - 1] *
               ipow(xi / (xi - 2.0 * kPi * beta * j_prime), n0 + 1);
        ++updates;
      }
    }
    if (beta == 1) std::reverse(z.begin() + 1, z.end());
    beta = -beta;
    j_prime += (1 + beta) / 2;

    bool any_large = false;
    for (double v : z) any_large = any_large || std::abs(v) > 1.0;
    if (!any_large) (beta == -1 ? gamma_minus : gamma_plus) = true;

    rt.updates = updates;
    rt.gamma_minus = gamma_minus;
    rt.gamma_plus = gamma_plus;
    trace.rounds.push_back(std::move(rt));
    trace.step10_updates += updates;

    if (gamma_minus && gamma_plus) break;
  }

  trace.total_jumps = sum;
  return {fm.n() * std::labs(sum), std::move(trace)};
}

AnalysisResult analyze(const SplineKernelBounds& model,
                       const AnalysisOptions& opts) {
  AnalysisResult res;
  res.grid_points = opts.grid_points;

  const FrequencyModel fm = build_frequency_model(model);
  res.rho_t = fm.rho_t();
  res.trace_at_zero = fm.m_hat_zero().trace();

  if (fm.rho_t() >= 2.0) {
    res.verdict = {Verdict::Kind::Inconclusive, 0,
                   Verdict::Reason::RhoTooLarge,
                   "uncertainty spectral radius >= 2"};
    res.decided_at_step = 1;
    return res;
  }

  CutoffReport rep = cutoff_frequency(fm);
  rep = check_critical_point_excluded(fm, std::move(rep), opts.grid_points);
  res.omega_cutoff = rep.omega_cutoff;
  res.min_margin = rep.min_margin;
  res.exclusion_passed = rep.passed;
  if (!rep.passed) {
    res.verdict = {Verdict::Kind::Inconclusive, 0,
                   Verdict::Reason::PlusOneInBand,
                   "the critical point +1 is not excluded from the "
                   "eigenvalue inclusion band"};
    res.decided_at_step = 2;
    return res;
  }

  const TraceTest trace_test = trace_instability_test(fm);
  res.trace_test_unstable = trace_test == TraceTest::UnstableOddMultiple;

  const TrigPolynomial poly = crossing_polynomial(fm);
  RootOptions root_opts = opts.roots;
  res.roots = roots_in_0_pi(poly, root_opts);
  res.alpha = res.roots.alpha;
  res.base = crossover_values(fm, res.roots);

  const double center_zero = fm.center_at_zero();
  double max_abs = 0.0;
  for (double v : res.base.X) max_abs = std::max(max_abs, std::abs(v));

  if (!res.trace_test_unstable && (res.alpha == 0 || max_abs < 1.0)) {
    res.verdict = {Verdict::Kind::RobustStable, 0, Verdict::Reason::None, ""};
    res.decided_at_step = 5;
    return res;
  }

  // Past a failed trace test the zero-frequency crossing sits right of +1
  // and is its own mirror image; it enters the sweep through the head slot
  // instead of the origin sentinel.
  const double head = res.trace_test_unstable ? center_zero : 0.0;

  try {
    auto [zd, data] = zeta_direct(fm, res.base, head, opts.count);
    auto [zw, trace] = zeta_windowed(fm, res.base, head, opts.count);
    res.zeta_direct_count = zd;
    res.zeta_windowed_count = zw;
    res.crossover = std::move(data);
    res.trace = std::move(trace);
    if (zd != zw) {
      std::ostringstream os;
      os << "encirclement counters disagree: sequence count " << zd
         << " vs windowed count " << zw;
      fail(ErrorCode::CounterDisagreement, os.str());
    }
    if (zd == 0) {
      if (res.trace_test_unstable)
        fail(ErrorCode::InconsistentState,
             "trace test reports instability but the encirclement count is "
             "zero");
      res.verdict = {Verdict::Kind::RobustStable, 0, Verdict::Reason::None,
                     ""};
      res.decided_at_step = 15;
    } else {
      res.verdict = {Verdict::Kind::Unstable, zd, Verdict::Reason::None, ""};
      res.decided_at_step = res.trace_test_unstable ? 3 : 15;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TangentCrossing) throw;
    res.verdict = {Verdict::Kind::Inconclusive, 0,
                   Verdict::Reason::PlusOneInBand, e.what()};
    res.decided_at_step = 15;
  }
  return res;
}

}  // namespace idstab

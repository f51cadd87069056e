#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "idstab/freq_transform.hpp"
#include "support.hpp"

using namespace idstab;

namespace {
FrequencyModel build(const RawBounds& raw) {
  return build_frequency_model(validate(raw));
}
}  // namespace

TEST_CASE("no-uncertainty example: difference sequence and zero-frequency value") {
  const auto fm = build(testkit::example3());
  REQUIRE(fm.d_seq().size() == 3);
  CHECK(fm.d_seq()[0](0, 0) == doctest::Approx(-60.0));
  CHECK(fm.d_seq()[1](0, 0) == doctest::Approx(120.0));
  CHECK(fm.d_seq()[2](0, 0) == doctest::Approx(-60.0));
  CHECK(fm.trace_d().sum() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fm.m_tilde()(0, 0) == doctest::Approx(0.0));
  CHECK(fm.m_hat_zero()(0, 0) == doctest::Approx(-7.5));
}

TEST_CASE("equal bounds give zero square half-widths") {
  const auto fm = build(testkit::figure1());
  // figure-1 gaps are 0.2 everywhere, basis measures 0.375 + 0.125
  CHECK(fm.m_tilde()(0, 0) == doctest::Approx(0.05));
  const auto fm3 = build(testkit::example3());
  CHECK(fm3.m_tilde().cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("staircase example square half-widths") {
  const auto fm = build(testkit::example1());
  CHECK(fm.m_tilde()(0, 0) == doctest::Approx(0.1));
  CHECK(fm.m_tilde()(0, 1) == doctest::Approx(0.025));
  CHECK(fm.m_tilde()(1, 0) == doctest::Approx(0.1));
  CHECK(fm.m_tilde()(1, 1) == doctest::Approx(0.1));
}

TEST_CASE("transform at and near zero frequency") {
  const auto fm = build(testkit::example3());
  CHECK(m_hat_at(fm, 0.0).value(0, 0).real() == doctest::Approx(-7.5));
  CHECK(m_hat_at(fm, 0.0).value(0, 0).imag() == doctest::Approx(0.0));
  // just below and above the branch switch
  const double ws = fm.omega_switch();
  const auto below = m_hat_at(fm, 0.9 * ws).value(0, 0);
  const auto above = m_hat_at(fm, 1.1 * ws).value(0, 0);
  CHECK(below.real() == doctest::Approx(-7.5).epsilon(1e-4));
  CHECK(above.real() == doctest::Approx(-7.5).epsilon(1e-4));
}

TEST_CASE("published crossover value at x = pi") {
  const auto fm = build(testkit::example3());
  const double omega = 2.0 * std::numbers::pi;  // x = h omega = pi
  const auto v = m_hat_at(fm, omega).value(0, 0);
  CHECK(v.real() == doctest::Approx(3.0396).epsilon(2e-4));
  CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("branches agree across the switch point") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + int(rng() % 2);
    const int n0 = int(rng() % 3);
    const int N = n0 + 2 + int(rng() % 3);
    const auto fm = build(testkit::random_bounds(rng, n, n0, N,
                                  0.2 + 0.8 * uni(rng), 1.0, 0.3));
    const double ws = fm.omega_switch();
    for (double factor : {1.0, 1.3, 1.9}) {
      const double omega = ws * factor;
      const Eigen::MatrixXcd closed = m_hat_at(fm, omega).value;
      const Eigen::MatrixXcd series =
          testkit::midpoint_transform_oracle(fm.source(), omega);
      const double scale = closed.cwiseAbs().maxCoeff() + 1e-30;
      CHECK((closed - series).cwiseAbs().maxCoeff() / scale < 1e-8);
    }
  }
}

TEST_CASE("closed form matches the quadrature oracle across frequencies") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + int(rng() % 2);
    const int n0 = int(rng() % 4);
    const int N = n0 + 2 + int(rng() % 3);
    const auto fm = build(testkit::random_bounds(rng, n, n0, N,
                                  0.2 + 0.8 * uni(rng), 1.0, 0.3));
    for (double omega : {0.1, 1.0, 10.0, 100.0}) {
      if (omega < fm.omega_switch()) continue;
      const Eigen::MatrixXcd lib = m_hat_at(fm, omega).value;
      const Eigen::MatrixXcd ref =
          testkit::midpoint_transform_oracle(fm.source(), omega);
      const double scale = ref.cwiseAbs().maxCoeff() + 1e-30;
      CHECK((lib - ref).cwiseAbs().maxCoeff() / scale < 1e-8);
    }
  }
}

TEST_CASE("difference matrices telescope to zero") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + int(rng() % 3);
    const int n0 = int(rng() % 2);
    const int N = n0 + 2 + int(rng() % 6);
    const auto fm = build(testkit::random_bounds(rng, n, n0, N,
                                  0.2 + 0.8 * uni(rng), 5.0, 1.0));
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    double max_tr = 0.0;
    for (const auto& d : fm.d_seq()) {
      sum += d;
      max_tr = std::max(max_tr, std::abs(d.trace()));
    }
    CHECK(std::abs(sum.trace()) < 1e-9 * (max_tr + 1e-30));
  }
}

TEST_CASE("transform decays at high frequency") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int tested = 0;
  for (int trial = 0; trial < 20 && tested < 10; ++trial) {
    const int n0 = int(rng() % 2);
    const auto fm = build(testkit::random_bounds(rng, 1 + int(rng() % 2), n0,
                                  n0 + 2 + int(rng() % 3),
                                  0.2 + 0.8 * uni(rng), 1.0, 0.3));
    const double at_zero = fm.m_hat_zero().cwiseAbs().maxCoeff();
    if (at_zero < 1e-3) continue;
    ++tested;
    const double far = m_hat_at(fm, 1e6).value.cwiseAbs().maxCoeff();
    CHECK(far < 1e-3 * at_zero);
  }
  CHECK(tested >= 5);
}

TEST_CASE("conjugate symmetry") {
  const auto fm3 = build(testkit::example3());
  CHECK(sample_conjugate_symmetry(fm3, 1.0));
  const auto fmf = build(testkit::figure1());
  CHECK(sample_conjugate_symmetry(fmf, 3.7));

  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto fm = build(testkit::random_bounds(rng, 2, 1, 4, 0.4, 1.0, 0.3));
  for (int i = 0; i < 100; ++i)
    CHECK(sample_conjugate_symmetry(fm, 200.0 * uni(rng)));
}

TEST_CASE("negative frequency is rejected by the public evaluator") {
  const auto fm = build(testkit::example3());
  CHECK_THROWS_AS((void)m_hat_at(fm, -1.0), std::invalid_argument);
}

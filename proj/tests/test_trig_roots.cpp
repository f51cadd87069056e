#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <numbers>
#include <random>

#include "idstab/trig_roots.hpp"
#include "support.hpp"

using namespace idstab;

namespace {
constexpr double kPi = std::numbers::pi;

FrequencyModel build(const RawBounds& raw) {
  return build_frequency_model(validate(raw));
}
}  // namespace

TEST_CASE("crossing polynomial coefficients") {
  SUBCASE("no-uncertainty example, frozen values") {
    const auto p = crossing_polynomial(build(testkit::example3()));
    CHECK(p.parity == Parity::Odd);
    REQUIRE(p.f.size() == 3);
    CHECK(p.f(0) == doctest::Approx(-7.5));
    CHECK(p.f(1) == doctest::Approx(15.0));
    CHECK(p.f(2) == doctest::Approx(-7.5));
  }
  SUBCASE("all-zero bounds") {
    auto raw = testkit::example1();
    for (auto& row : raw.b_upper)
      for (auto& e : row) std::fill(e.begin(), e.end(), 0.0);
    raw.b_lower = raw.b_upper;
    const auto p = crossing_polynomial(build(raw));
    CHECK(p.f.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  }
  SUBCASE("linearity under scaling") {
    auto raw = testkit::example3();
    const auto p1 = crossing_polynomial(build(raw));
    for (double& b : raw.b_upper[0][0]) b *= 2.5;
    raw.b_lower = raw.b_upper;
    const auto p2 = crossing_polynomial(build(raw));
    for (int k = 0; k < p1.f.size(); ++k)
      CHECK(p2.f(k) == doctest::Approx(2.5 * p1.f(k)));
  }
}

TEST_CASE("companion matrix structure and eigenvalues") {
  SUBCASE("published 4x4 case") {
    const auto p = crossing_polynomial(build(testkit::example3()));
    const Eigen::MatrixXd F = companion_matrix(p);
    REQUIRE(F.rows() == 4);
    CHECK(F(3, 0) == doctest::Approx(1.0));
    CHECK(F(3, 1) == doctest::Approx(-2.0));
    CHECK(F(3, 2) == doctest::Approx(0.0));
    CHECK(F(3, 3) == doctest::Approx(2.0));
    CHECK(F(0, 1) == doctest::Approx(1.0));
    CHECK(F(1, 2) == doctest::Approx(1.0));

    Eigen::EigenSolver<Eigen::MatrixXd> es(F);
    int near_minus_one = 0, near_plus_one = 0;
    for (int i = 0; i < 4; ++i) {
      const auto l = es.eigenvalues()(i);
      if (std::abs(l - std::complex<double>(-1.0, 0.0)) < 1e-6)
        ++near_minus_one;
      if (std::abs(l - std::complex<double>(1.0, 0.0)) < 1e-3) ++near_plus_one;
    }
    CHECK(near_minus_one == 1);
    CHECK(near_plus_one == 3);  // numerically split triple root
  }
  SUBCASE("pure cosine") {
    TrigPolynomial p;
    p.f = Eigen::Vector2d(0.0, 1.0);
    p.parity = Parity::Even;
    p.h = 1.0;
    p.n0 = 0;
    const Eigen::MatrixXd F = companion_matrix(p);
    REQUIRE(F.rows() == 2);
    const auto roots = roots_in_0_pi(p);
    REQUIRE(roots.alpha == 1);
    bool found = false;
    for (const auto& r : roots.roots)
      if (r.odd) {
        CHECK(r.x == doctest::Approx(kPi / 2));
        found = true;
      }
    CHECK(found);
  }
  SUBCASE("degenerate zero polynomial") {
    TrigPolynomial p;
    p.f = Eigen::Vector3d::Zero();
    p.parity = Parity::Odd;
    p.h = 1.0;
    p.n0 = 1;
    CHECK_THROWS_AS((void)companion_matrix(p), Error);
  }
}

TEST_CASE("root extraction on the published systems") {
  SUBCASE("clustered: triple root collapses") {
    const auto p = crossing_polynomial(build(testkit::example3()));
    const auto roots = roots_in_0_pi(p);
    CHECK(roots.alpha == 2);
    CHECK(roots.includes_zero);
    REQUIRE(roots.roots.size() == 2);
    CHECK(roots.roots[0].x == doctest::Approx(0.0));
    CHECK(roots.roots[0].multiplicity == 3);
    CHECK(roots.roots[0].odd);
    CHECK(roots.roots[1].x == doctest::Approx(kPi));
    CHECK(roots.roots[1].multiplicity == 1);
  }
  SUBCASE("raw: numerically split roots kept individually") {
    RootOptions opts;
    opts.cluster = false;
    const auto p = crossing_polynomial(build(testkit::example3()));
    const auto roots = roots_in_0_pi(p, opts);
    CHECK(roots.alpha == 3);
    int tiny = 0, at_pi = 0;
    for (const auto& r : roots.roots) {
      if (r.odd && r.x < 1e-4) ++tiny;
      if (r.odd && std::abs(r.x - kPi) < 1e-6) ++at_pi;
    }
    CHECK(tiny == 2);  // one at ~0 and the split copy a few 1e-6 away
    CHECK(at_pi == 1);
  }
  SUBCASE("controller example: only an even root at zero") {
    const auto p =
        crossing_polynomial(build(testkit::example2(2.0, 2.0 / 3.0, 0.1439)));
    const auto roots = roots_in_0_pi(p);
    CHECK(roots.alpha == 0);
    CHECK_FALSE(roots.includes_zero);
    REQUIRE(!roots.roots.empty());
    CHECK(roots.roots.front().x == doctest::Approx(0.0));
    CHECK(roots.roots.front().multiplicity % 2 == 0);
  }
}

TEST_CASE("sine polynomial has simple endpoint roots") {
  TrigPolynomial p;
  p.f = Eigen::Vector2d(0.0, 1.0);
  p.parity = Parity::Odd;
  p.h = 1.0;
  p.n0 = 1;
  const auto roots = roots_in_0_pi(p);
  REQUIRE(roots.alpha == 2);
  CHECK(roots.roots[0].x == doctest::Approx(0.0));
  CHECK(roots.roots[0].multiplicity == 1);
  CHECK(roots.roots[1].x == doctest::Approx(kPi));
  CHECK(roots.roots[1].multiplicity == 1);
  CHECK(roots.includes_zero);
}

TEST_CASE("returned roots have small residuals and mirror properties") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + int(rng() % 2);
    const int n0 = int(rng() % 2);
    const int N = n0 + 2 + int(rng() % 4);
    const auto fm = build(testkit::random_bounds(
        rng, n, n0, N, 0.2 + 0.6 * uni(rng), 1.0, 0.2));
    const auto p = crossing_polynomial(fm);
    if (p.f.cwiseAbs().maxCoeff() < 1e-12) continue;
    const auto roots = roots_in_0_pi(p);
    const double fmax = p.f.cwiseAbs().maxCoeff();
    for (const auto& r : roots.roots) {
      if (!r.odd) continue;
      CHECK(std::abs(p.eval(r.x)) < 1e-6 * fmax);
      CHECK(std::abs(p.eval(2.0 * kPi - r.x)) < 1e-6 * fmax);
      CHECK(std::abs(p.eval(r.x + 2.0 * kPi)) < 1e-6 * fmax);
    }
  }
}

TEST_CASE("companion roots agree with a dense sign-change scan") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const int n0 = int(rng() % 2);
    const int N = n0 + 2 + int(rng() % 4);
    const auto fm = build(testkit::random_bounds(
        rng, 1 + int(rng() % 2), n0, N, 0.2 + 0.6 * uni(rng), 1.0, 0.2));
    const auto p = crossing_polynomial(fm);
    if (p.f.cwiseAbs().maxCoeff() < 1e-12) continue;
    const auto roots = roots_in_0_pi(p);

    const int samples = 100000;
    std::vector<double> scan_roots;
    double prev = p.eval(1e-9);
    for (int i = 1; i <= samples; ++i) {
      const double x = kPi * double(i) / samples;
      const double cur = p.eval(x);
      if (prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0))
        scan_roots.push_back(x - 0.5 * kPi / samples);
      prev = cur;
    }
    // every sign change must be near a returned odd root, and every interior
    // returned odd root must be near a sign change
    for (double sx : scan_roots) {
      bool matched = false;
      for (const auto& r : roots.roots)
        if (r.odd && std::abs(r.x - sx) < 1e-3) matched = true;
      CHECK(matched);
    }
    for (const auto& r : roots.roots) {
      if (!r.odd || r.x < 1e-6 || r.x > kPi - 1e-6) continue;
      bool matched = false;
      for (double sx : scan_roots)
        if (std::abs(r.x - sx) < 1e-3) matched = true;
      CHECK(matched);
    }
  }
}

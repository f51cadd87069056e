#pragma once

#include <Eigen/Core>
#include <vector>

#include "idstab/freq_transform.hpp"

namespace idstab {

enum class Parity { Even, Odd };

// Trigonometric polynomial whose zeros in x = h * omega locate the real-axis
// crossings of the band center:
//   y(x) = sum_{k=1}^N f_k sin(k x)   (n0 odd)
//   y(x) = sum_{k=0}^N f_k cos(k x)   (n0 even)
struct TrigPolynomial {
  Eigen::VectorXd f;  // f_0..f_N
  Parity parity = Parity::Even;
  double h = 0.0;
  int n0 = 0;

  double eval(double x) const;
};

struct Root {
  double x = 0.0;        // in [0, pi]
  int multiplicity = 0;  // algebraic (cluster size from the eigensolve)
  bool odd = false;      // retained for crossover analysis
};

struct RootSet {
  std::vector<Root> roots;  // ascending in x; always carries an x = 0 entry
  int alpha = 0;            // number of odd-multiplicity roots
  bool includes_zero = false;  // x = 0 is among the odd-multiplicity roots
};

struct RootOptions {
  double tol_circle = 1e-4;   // |abs(eigenvalue) - 1| filter
  double tol_cluster = 1e-4;  // clustering window on the angle (radians)
  double tol_coeff = 1e-12;   // relative trailing-coefficient trim
  bool cluster = true;        // off reproduces raw split multiple roots
};

TrigPolynomial crossing_polynomial(const FrequencyModel& fm);

// Companion matrix in CCM form whose unit-circle eigenvalue angles are the
// zeros of y. Trailing coefficients below tol_coeff * max|f| are trimmed
// first. Throws DegenerateZeroPolynomial when y is identically zero.
Eigen::MatrixXd companion_matrix(const TrigPolynomial& p,
                                 double tol_coeff = 1e-12);

// Extracts the zeros of y on [0, pi] with odd algebraic multiplicity from
// the companion eigensolve. With clustering on, eigenvalues within
// tol_cluster of each other count as one root with their total multiplicity
// (numerically split multiple roots collapse); with clustering off every
// kept eigenvalue is a simple root, reproducing raw eigensolver output.
// x = 0 is appended (with its actual even multiplicity) when not retained,
// so the crossing at zero frequency is always visible to callers.
RootSet roots_in_0_pi(const TrigPolynomial& p, const RootOptions& opts = {});

}  // namespace idstab

#pragma once

#include <cstddef>
#include <optional>

#include "tds/linalg.hpp"
#include "tds/rational.hpp"
#include "tds/seidel.hpp"

namespace tds {

/// n unit vectors with pairwise inner products +-alpha, stored as the sign
/// pattern and the angle: Gram = I + alpha * signs.
struct EquiangularSystem {
  SeidelMatrix signs;
  double alpha;
  std::optional<Rational> alpha_exact;
  std::size_t dim;

  std::size_t size() const noexcept { return signs.order(); }
  Eigen::MatrixXd gram() const;
  /// Throws DomainError when the angle is irrational.
  SymMatrix gram_exact() const;
};

/// b = ((1 - alpha) a + 2 alpha) / (1 + alpha) together with the admissibility
/// flags of the a + b < 0 branch.
struct FamilyParam {
  Rational alpha;
  Rational a;
  Rational b;
  bool a_at_least_minus_one;
  bool a_less_than_b;
  bool sum_negative;
  bool b_less_than_one;

  bool admissible() const noexcept { return a_at_least_minus_one && a_less_than_b && sum_negative && b_less_than_one; }
};

FamilyParam family_param(const Rational& alpha, const Rational& a);

/// Lines from a Seidel matrix whose smallest eigenvalue lambda0 < -1:
/// Gram = I - S / lambda0, alpha = -1/lambda0, dim = n - mult(lambda0).
EquiangularSystem seidel_to_lines(const SeidelMatrix& s, double tol = kDefaultTol);

/// Spherical two-distance set with a + b < 0 to n equiangular lines one
/// dimension up, alpha = (b - a)/(2 - a - b).
EquiangularSystem spherical_to_equiangular(const SymMatrix& g, const Rational& a, const Rational& b,
                                           double tol = kDefaultTol);

/// G = ((b - a) S - (a + b - 2) I + (a + b) J) / 2 with b = family_param(alpha, a).b.
/// G = (1 - c) G' + c J for the line Gram G' and c = (a + b)/2 < 0, so it is
/// PSD only when 1 lies in the column space of G' and 1^T G'^+ 1 <= (1 - c)/(-c).
/// Its rank is dim - 1 at equality and dim otherwise. Throws when G is not PSD.
SymMatrix equiangular_to_spherical(const EquiangularSystem& sys, const Rational& a);

/// Equiangular system read back from a Gram matrix with unit diagonal and
/// off-diagonal entries +-alpha for a single rational alpha.
EquiangularSystem equiangular_from_gram(const SymMatrix& g, double tol = kDefaultTol);

}  // namespace tds

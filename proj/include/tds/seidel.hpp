#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tds/configurations.hpp"
#include "tds/linalg.hpp"
#include "tds/rational.hpp"

namespace tds {

/// Symmetric integer matrix with zero diagonal and +-1 off the diagonal.
/// The invariant is checked exactly on construction.
class SeidelMatrix {
 public:
  SeidelMatrix(std::size_t order, std::vector<std::int8_t> entries);

  /// Throws DomainError("entry not +-1", ...) unless `m` is exactly a Seidel matrix.
  static SeidelMatrix from_sym(const SymMatrix& m);

  std::size_t order() const noexcept { return order_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

  SymMatrix to_sym() const;
  Eigen::MatrixXd to_float() const;

  long long trace() const;
  long long trace_of_square() const;
  /// Exact integer product Q*Q, row-major.
  std::vector<long long> square() const;

  friend bool operator==(const SeidelMatrix&, const SeidelMatrix&) = default;

 private:
  std::size_t order_;
  std::vector<std::int8_t> entries_;
};

struct EuclideanSeidelParams {
  std::size_t n;  // number of points; the Seidel matrix has order n - 1
  std::size_t d;
  Rational delta_sq;
  std::size_t h;
};

struct SphericalSeidelParams {
  std::size_t n;
  std::size_t d;
  Rational a;
  Rational b;
};

/// Eigenvalues of the auxiliary block matrix D: {a2, 0^(zero_multiplicity), a1}.
/// `a1 = p + sqrt(radicand)`, `a2 = p - sqrt(radicand)` when both blocks are
/// nonempty; with a single block one of a1/a2 is the block eigenvalue and the
/// other is an extra zero.
struct DSpectrum {
  double a1;
  double a2;
  std::size_t zero_multiplicity;
  bool two_block;
  Rational p;
  Rational radicand;

  std::vector<double> eigenvalues() const;  // ascending, n - 1 values
};

struct EuclideanSeidel {
  SeidelMatrix seidel;
  EuclideanSeidelParams params;
  /// Original point index of each row; base point last.
  std::vector<std::size_t> permutation;
  /// Cayley-Menger matrix of the rescaled, permuted distances.
  SymMatrix cayley_menger;
  SymMatrix d_matrix;
  /// Factor applied to the input squared distances so the smaller one is 1.
  Rational scale;
};

struct StructureReport {
  double smallest_eig = 0.0;
  std::size_t smallest_mult = 0;
  double target_value = 0.0;
  std::size_t target_mult = 0;
  std::size_t required_mult = 0;
  /// Eigenvalues strictly below the target value (beyond tolerance).
  std::size_t below_target = 0;
  bool passes = false;
  bool vacuous = false;
  std::string note;
};

/// (c_in^2 + c_jn^2 - c_ij^2) on the first n-1 points, from squared distances.
SymMatrix cayley_menger(const SymMatrix& dist_sq);

SymMatrix build_D(const EuclideanSeidelParams& params);

DSpectrum spectrum_D_closed_form(const EuclideanSeidelParams& params);

/// Rescales the two squared distances to {1, delta^2} with delta > 1, orders
/// the unit-distance neighbours of the base point first and assembles
/// S = (2M + D - (1 + delta^2) I) / (delta^2 - 1) exactly. When
/// `expected_delta_sq` is given it must match the data (either convention).
EuclideanSeidel seidel_euclidean(const SymMatrix& dist_sq, std::optional<Rational> expected_delta_sq = std::nullopt,
                                 double tol = kDefaultTol);

/// S = ((G - I) - (a+b)/2 J + (a+b)/2 I) / ((b - a)/2), i.e. -1 where G has a
/// and +1 where G has b.
SeidelMatrix seidel_spherical(const SymMatrix& g, const Rational& a, const Rational& b);

StructureReport check_structure_euclidean(const SeidelMatrix& s, std::size_t d, const Rational& delta_sq,
                                          double tol = kDefaultTol);

StructureReport check_structure_spherical(const SeidelMatrix& s, std::size_t d, const Rational& a, const Rational& b,
                                          double tol = kDefaultTol);

// Named Seidel matrices with exactly two eigenvalues.

/// Symmetric conference matrix of the Paley construction for a prime q = 1 mod 4
/// (order q + 1). q = 5 gives the six diagonals of the icosahedron.
SeidelMatrix paley_conference_seidel(unsigned q = 5);

/// J - I - 2A for the Clebsch graph (folded 5-cube): spectrum {-3^10, 5^6}.
SeidelMatrix clebsch_seidel();

/// +1 between 2-subsets of {0..m-1} that meet, -1 between disjoint ones.
/// m = 8 gives 28 equiangular lines in R^7 with spectrum {-3^21, 9^7}.
SeidelMatrix triangular_seidel(unsigned m = 8);

/// +1 between cells of the cyclic Latin square of order m sharing a row,
/// column or symbol. m = 6 gives 36 lines in R^15 with spectrum {-5^21, 7^15}.
SeidelMatrix latin_square_seidel(unsigned m = 6);

void write_seidel(std::ostream& out, const SeidelMatrix& s);
SeidelMatrix read_seidel(std::istream& in);

}  // namespace tds

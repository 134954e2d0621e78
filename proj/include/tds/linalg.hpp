#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "tds/rational.hpp"

namespace tds {

/// Relative tolerance used for multiplicities and numeric rank. Eigenvalues are
/// compared after scaling by max(1, spectral radius).
inline constexpr double kDefaultTol = 1e-7;

/// Dense symmetric matrix with exact rational entries.
///
/// Symmetry is checked once at construction; afterwards the value is
/// immutable apart from whole-value assignment.
class SymMatrix {
 public:
  /// Row-major entries of an order x order matrix. Throws std::invalid_argument
  /// when the entry count is wrong, the order is zero, or the data is not symmetric.
  SymMatrix(std::size_t order, std::vector<Rational> entries);

  static SymMatrix zero(std::size_t order);
  static SymMatrix identity(std::size_t order);
  static SymMatrix ones(std::size_t order);
  static SymMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  /// Every double is converted exactly; non-finite entries are rejected.
  static SymMatrix from_float(const Eigen::MatrixXd& m, double symmetry_tol = 0.0);

  std::size_t order() const noexcept { return order_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

  Eigen::MatrixXd to_float() const;
  Rational trace() const;
  /// tr(M^2) = sum of squared entries for symmetric M.
  Rational trace_of_square() const;
  Rational max_abs() const;

  /// Submatrix on the given index list (rows and columns in that order).
  SymMatrix permuted(std::span<const std::size_t> perm) const;

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(const Rational& s, const SymMatrix& m);
  friend SymMatrix operator/(const SymMatrix& m, const Rational& s);
  friend bool operator==(const SymMatrix& a, const SymMatrix& b) = default;

 private:
  SymMatrix(std::size_t order, std::vector<Rational> entries, bool trusted);

  std::size_t order_;
  std::vector<Rational> entries_;
};

struct SpectrumCluster {
  double value;
  std::size_t multiplicity;
};

/// Eigenvalues grouped into ascending (value, multiplicity) clusters.
struct Spectrum {
  std::vector<SpectrumCluster> clusters;
  double tol = 0.0;

  std::size_t order() const;
  /// Multiplicity of the cluster within `tol` of `value`, 0 when absent.
  std::size_t multiplicity_of(double value, double tol) const;
  /// Flat ascending list with each value repeated by its multiplicity.
  std::vector<double> expand() const;
};

struct PsdReport {
  bool is_psd;
  std::size_t numeric_rank;
  double min_eigenvalue;
};

struct WeylCheck {
  std::size_t index;  // 1-based, eigenvalues in descending order
  double lower;
  double value;
  double upper;
  bool holds;
};

struct WeylReport {
  bool all_hold;
  std::vector<WeylCheck> checks;
};

/// All eigenvalues of the float view, ascending.
std::vector<double> eig_sym(const SymMatrix& m);
std::vector<double> eig_sym(const Eigen::MatrixXd& m);

/// Greedy left-to-right clustering of an ascending list; a value joins the
/// current cluster iff it lies within `tol` of the cluster's running mean.
Spectrum group_spectrum(std::span<const double> eigs, double tol);

double spectral_radius(std::span<const double> eigs);

/// Eigensolve plus clustering with `tol` scaled by max(1, spectral radius).
Spectrum spectrum_of(const SymMatrix& m, double tol = kDefaultTol);
Spectrum spectrum_of(const Eigen::MatrixXd& m, double tol = kDefaultTol);

PsdReport psd_rank(const SymMatrix& m, double tol = kDefaultTol);
PsdReport psd_rank(const Eigen::MatrixXd& m, double tol = kDefaultTol);

/// Checks lambda_i(N) + lambda_min(R) <= lambda_i(N + R) <= lambda_i(N) + lambda_max(R).
WeylReport verify_weyl(const SymMatrix& n, const SymMatrix& r, double tol = kDefaultTol);
WeylReport verify_weyl(const Eigen::MatrixXd& n, const Eigen::MatrixXd& r, double tol = kDefaultTol);

/// Rank over the rationals (Gaussian elimination, no tolerance).
std::size_t exact_rank(const SymMatrix& m);

/// Positive semidefiniteness over the rationals: symmetric elimination on
/// diagonal pivots. A negative pivot, or a zero pivot with a nonzero row, fails.
bool exact_is_psd(const SymMatrix& m);

/// Exact multiplicity of a rational eigenvalue: order - rank(M - lambda I).
std::size_t exact_multiplicity(const SymMatrix& m, const Rational& lambda);

// Matrix text format: first line is the order, then `order` rows of
// whitespace-separated rationals ("p/q" or integers).
SymMatrix read_matrix(std::istream& in);
SymMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const SymMatrix& m);
void write_matrix_csv(std::ostream& out, const SymMatrix& m);

}  // namespace tds

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tds/linalg.hpp"
#include "tds/rational.hpp"

namespace tds {

enum class Flavor { euclidean, spherical };

std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& text);

using Point = std::vector<Rational>;

/// n labeled points of equal coordinate count. Spherical configurations have
/// unit squared norms (exactly, or within 1e-9 when `exact` is false).
class PointConfiguration {
 public:
  PointConfiguration(Flavor flavor, std::vector<Point> points, std::optional<std::size_t> affine_rank = std::nullopt,
                     bool exact = true);

  Flavor flavor() const noexcept { return flavor_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t ambient_dim() const noexcept { return points_.front().size(); }
  /// Declared affine rank when present (simplex midpoints live in a hyperplane), else the ambient dimension.
  std::size_t dim() const noexcept { return affine_rank_.value_or(ambient_dim()); }
  bool exact() const noexcept { return exact_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }

 private:
  Flavor flavor_;
  std::vector<Point> points_;
  std::optional<std::size_t> affine_rank_;
  bool exact_;
};

/// Output of two-distance certification.
///
/// For Euclidean input `values` are the two squared distances (ascending);
/// for spherical input they are the inner products a < b. Labels are stored
/// for i < j in row-major order of the upper triangle.
struct TwoDistanceCertificate {
  bool ok = false;
  Flavor flavor = Flavor::euclidean;
  std::size_t n = 0;
  Rational values[2];
  std::vector<std::uint8_t> pair_labels;
  /// Euclidean only: points at values[0] from the base point (the last point).
  std::size_t h = 0;
  /// Euclidean only: non-base points at values[0] first, then the rest, base last.
  std::vector<std::size_t> permutation;

  std::uint8_t label(std::size_t i, std::size_t j) const;
};

struct RealizationResult {
  PointConfiguration points;
  double residual;
};

SymMatrix distance_sq_matrix(const PointConfiguration& cfg);

/// Exact Gram matrix of a spherical configuration; throws DomainError
/// "not on unit sphere" for any point whose squared norm is not 1.
SymMatrix gram(const PointConfiguration& cfg);

/// Exact configurations are clustered by equality and `tol` is ignored;
/// float-imported ones are clustered with `tol` relative to the largest value.
TwoDistanceCertificate certify_two_distance(const PointConfiguration& cfg, double tol = kDefaultTol);

/// Certification of a squared-distance matrix (base point = last index).
TwoDistanceCertificate certify_distance_matrix(const SymMatrix& dist_sq, bool exact = true, double tol = kDefaultTol);

/// Certification of a spherical Gram matrix (unit diagonal required).
TwoDistanceCertificate certify_gram(const SymMatrix& g, bool exact = true, double tol = kDefaultTol);

/// Edge midpoints of the regular simplex on e_1..e_{d+1}, in ambient R^{d+1}
/// with declared affine rank d.
PointConfiguration simplex_midpoints(std::size_t d);

/// The 2d points +-e_i, ordered e_1, -e_1, e_2, -e_2, ...
PointConfiguration cross_polytope(std::size_t d);

/// Exact Gram matrix of simplex_midpoints(d) after centering at the centroid
/// and scaling to the unit sphere in R^d. Coordinates would carry an
/// irrational common scale, so only the Gram matrix is returned.
SymMatrix midpoint_sphere_gram(std::size_t d);

/// Points whose Gram matrix reproduces `g` (top-`target_rank` eigenpairs).
RealizationResult realize_gram(const SymMatrix& g, std::size_t target_rank, double tol = kDefaultTol);

/// Embeddability test on a squared-distance matrix: the Cayley-Menger matrix
/// anchored at the last point must be PSD with rank at most `d`.
bool lisonek_realizable(const SymMatrix& dist_sq, std::size_t d, double tol = kDefaultTol);

// Point set file: {"flavor": "euclidean"|"spherical", "dim": d,
// "points": [["p/q", ...], ...]} with optional "affine_rank".
PointConfiguration read_point_set_json(std::istream& in);
PointConfiguration read_point_set_file(const std::string& path);
void write_point_set_json(std::ostream& out, const PointConfiguration& cfg);

/// Plain float point cloud, one point per line, comma separated.
PointConfiguration read_point_csv(std::istream& in, Flavor flavor);

}  // namespace tds

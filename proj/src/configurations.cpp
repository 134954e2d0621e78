#include "tds/configurations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tds/seidel.hpp"

namespace tds {

std::string to_string(Flavor f) { return f == Flavor::euclidean ? "euclidean" : "spherical"; }

Flavor parse_flavor(const std::string& text) {
  if (text == "euclidean") return Flavor::euclidean;
  if (text == "spherical") return Flavor::spherical;
  throw ParseError("unknown flavor '" + text + "'");
}

namespace {

Rational dot(const Point& x, const Point& y) {
  Rational s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

Rational dist_sq(const Point& x, const Point& y) {
  Rational s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Rational diff = x[k] - y[k];
    s += diff * diff;
  }
  return s;
}

constexpr double kUnitNormTol = 1e-9;

bool is_unit(const Rational& norm_sq, bool exact) {
  return exact ? norm_sq == 1 : std::abs(norm_sq.get_d() - 1.0) <= kUnitNormTol;
}

std::string list_values(const std::vector<Rational>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ", ";
    out += to_string(v);
  }
  return out;
}

// Clusters the off-diagonal values of a symmetric matrix. Exact input is
// grouped by equality; float input greedily, relative to the largest magnitude.
struct PairClusters {
  std::vector<Rational> representatives;
  std::vector<std::uint8_t> labels;
};

PairClusters cluster_pairs(const SymMatrix& values, bool exact, double tol) {
  const std::size_t n = values.order();
  std::vector<Rational> distinct;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) distinct.push_back(values(i, j));
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  // Map every distinct value to a cluster index.
  std::vector<std::size_t> cluster_of(distinct.size());
  PairClusters out;
  if (exact) {
    out.representatives = distinct;
    for (std::size_t k = 0; k < distinct.size(); ++k) cluster_of[k] = k;
  } else {
    double scale = 1.0;
    for (const auto& v : distinct) scale = std::max(scale, std::abs(v.get_d()));
    const double within = tol * scale;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < distinct.size(); ++k) {
      const double x = distinct[k].get_d();
      if (count > 0 && std::abs(x - sum / double(count)) <= within) {
        sum += x;
        ++count;
      } else {
        if (count > 0) out.representatives.push_back(from_double(sum / double(count)));
        sum = x;
        count = 1;
      }
      cluster_of[k] = out.representatives.size();
    }
    if (count > 0) out.representatives.push_back(from_double(sum / double(count)));
  }

  if (out.representatives.size() <= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto it = std::lower_bound(distinct.begin(), distinct.end(), values(i, j));
        out.labels.push_back(static_cast<std::uint8_t>(cluster_of[std::size_t(it - distinct.begin())]));
      }
    }
  }
  return out;
}

TwoDistanceCertificate certify_values(const SymMatrix& values, Flavor flavor, bool exact, double tol) {
  const std::size_t n = values.order();
  if (n < 2) throw DomainError("too few points", "need at least 2 points");
  PairClusters clusters = cluster_pairs(values, exact, tol);
  if (clusters.representatives.size() == 1) {
    throw DomainError("equidistant set, not two-distance", "single value " + to_string(clusters.representatives[0]));
  }
  if (clusters.representatives.size() > 2) {
    throw DomainError("not a two-distance set", "values: " + list_values(clusters.representatives));
  }

  TwoDistanceCertificate cert;
  cert.ok = true;
  cert.flavor = flavor;
  cert.n = n;
  cert.values[0] = clusters.representatives[0];
  cert.values[1] = clusters.representatives[1];
  cert.pair_labels = std::move(clusters.labels);

  if (flavor == Flavor::spherical) {
    if (!exact && std::abs(cert.values[0].get_d() + 1.0) <= tol) cert.values[0] = -1;
    if (cert.values[0] < -1 || cert.values[1] >= (exact ? 1.0 : 1.0 - tol)) {
      throw DomainError("not a spherical two-distance set",
                        "inner products " + to_string(cert.values[0]) + ", " + to_string(cert.values[1]) +
                            " outside [-1, 1)");
    }
    return cert;
  }

  const std::size_t base = n - 1;
  std::vector<std::size_t> near, far;
  for (std::size_t i = 0; i < base; ++i) (cert.label(i, base) == 0 ? near : far).push_back(i);
  cert.h = near.size();
  cert.permutation = near;
  cert.permutation.insert(cert.permutation.end(), far.begin(), far.end());
  cert.permutation.push_back(base);
  return cert;
}

}  // namespace

PointConfiguration::PointConfiguration(Flavor flavor, std::vector<Point> points, std::optional<std::size_t> affine_rank,
                                       bool exact)
    : flavor_(flavor), points_(std::move(points)), affine_rank_(affine_rank), exact_(exact) {
  if (points_.size() < 2) throw DomainError("too few points", "a configuration needs n >= 2");
  const std::size_t dim = points_.front().size();
  if (dim == 0) throw DomainError("dimension mismatch", "points must have at least one coordinate");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != dim) {
      throw DomainError("dimension mismatch", "point " + std::to_string(i) + " has " +
                                                  std::to_string(points_[i].size()) + " coordinates, expected " +
                                                  std::to_string(dim));
    }
  }
  if (affine_rank_ && *affine_rank_ > dim) throw DomainError("dimension mismatch", "affine rank exceeds ambient dimension");
  if (flavor_ == Flavor::spherical) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!is_unit(dot(points_[i], points_[i]), exact_)) {
        throw DomainError("not on unit sphere", "point " + std::to_string(i));
      }
    }
  }
}

std::uint8_t TwoDistanceCertificate::label(std::size_t i, std::size_t j) const {
  if (i == j) throw std::invalid_argument("no label on the diagonal");
  if (i > j) std::swap(i, j);
  // Row i of the strict upper triangle starts after sum_{r<i} (n - 1 - r) entries.
  const std::size_t offset = i * (2 * n - i - 1) / 2;
  return pair_labels[offset + (j - i - 1)];
}

SymMatrix distance_sq_matrix(const PointConfiguration& cfg) {
  const std::size_t n = cfg.size();
  std::vector<Rational> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      entries[i * n + j] = entries[j * n + i] = dist_sq(cfg[i], cfg[j]);
    }
  }
  return SymMatrix(n, std::move(entries));
}

SymMatrix gram(const PointConfiguration& cfg) {
  const std::size_t n = cfg.size();
  std::vector<Rational> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational norm_sq = dot(cfg[i], cfg[i]);
    if (!is_unit(norm_sq, cfg.exact())) throw DomainError("not on unit sphere", "point " + std::to_string(i));
    entries[i * n + i] = cfg.exact() ? norm_sq : Rational(1);
    for (std::size_t j = i + 1; j < n; ++j) entries[i * n + j] = entries[j * n + i] = dot(cfg[i], cfg[j]);
  }
  return SymMatrix(n, std::move(entries));
}

TwoDistanceCertificate certify_distance_matrix(const SymMatrix& dist_sq, bool exact, double tol) {
  for (std::size_t i = 0; i < dist_sq.order(); ++i) {
    if (dist_sq(i, i) != 0) throw DomainError("invalid distance matrix", "nonzero diagonal");
  }
  return certify_values(dist_sq, Flavor::euclidean, exact, tol);
}

TwoDistanceCertificate certify_gram(const SymMatrix& g, bool exact, double tol) {
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (!is_unit(g(i, i), exact)) throw DomainError("not on unit sphere", "Gram diagonal entry " + std::to_string(i));
  }
  return certify_values(g, Flavor::spherical, exact, tol);
}

TwoDistanceCertificate certify_two_distance(const PointConfiguration& cfg, double tol) {
  if (cfg.flavor() == Flavor::spherical) return certify_gram(gram(cfg), cfg.exact(), tol);
  return certify_distance_matrix(distance_sq_matrix(cfg), cfg.exact(), tol);
}

PointConfiguration simplex_midpoints(std::size_t d) {
  if (d < 2) throw DomainError("invalid dimension", "simplex_midpoints needs d >= 2");
  const std::size_t ambient = d + 1;
  std::vector<Point> points;
  points.reserve(ambient * d / 2);
  for (std::size_t i = 0; i < ambient; ++i) {
    for (std::size_t j = i + 1; j < ambient; ++j) {
      Point p(ambient, Rational(0));
      p[i] = Rational(1, 2);
      p[j] = Rational(1, 2);
      points.push_back(std::move(p));
    }
  }
  return PointConfiguration(Flavor::euclidean, std::move(points), d);
}

PointConfiguration cross_polytope(std::size_t d) {
  if (d < 2) throw DomainError("invalid dimension", "cross_polytope needs d >= 2");
  std::vector<Point> points;
  points.reserve(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (int sign : {1, -1}) {
      Point p(d, Rational(0));
      p[i] = sign;
      points.push_back(std::move(p));
    }
  }
  return PointConfiguration(Flavor::spherical, std::move(points));
}

SymMatrix midpoint_sphere_gram(std::size_t d) {
  const PointConfiguration mid = simplex_midpoints(d);
  const std::size_t n = mid.size();
  const Rational centroid_coord(1, d + 1);
  std::vector<Point> centered = mid.points();
  for (auto& p : centered) {
    for (auto& x : p) x -= centroid_coord;
  }
  // All centered points have the same norm by symmetry.
  const Rational norm_sq = dot(centered[0], centered[0]);
  std::vector<Rational> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    entries[i * n + i] = 1;
    for (std::size_t j = i + 1; j < n; ++j) entries[i * n + j] = entries[j * n + i] = dot(centered[i], centered[j]) / norm_sq;
  }
  return SymMatrix(n, std::move(entries));
}

RealizationResult realize_gram(const SymMatrix& g, std::size_t target_rank, double tol) {
  if (target_rank == 0) throw DomainError("rank exceeds target dimension", "target dimension must be positive");
  const Eigen::MatrixXd gf = g.to_float();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gf);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver did not converge");
  const Eigen::VectorXd& values = solver.eigenvalues();
  const auto n = gf.rows();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  if (values(0) < -tol * scale) {
    throw DomainError("indefinite Gram", "smallest eigenvalue " + std::to_string(values(0)));
  }
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(values(k)) > tol * scale) ++rank;
  }
  if (rank > target_rank) {
    throw DomainError("rank exceeds target dimension",
                      "numeric rank " + std::to_string(rank) + " > " + std::to_string(target_rank));
  }

  // Coordinates from the largest target_rank eigenpairs: X = Q_k Lambda_k^{1/2}.
  const auto k = static_cast<Eigen::Index>(std::min<std::size_t>(target_rank, std::size_t(n)));
  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, Eigen::Index(target_rank));
  for (Eigen::Index c = 0; c < k; ++c) {
    const Eigen::Index src = n - 1 - c;
    coords.col(c) = solver.eigenvectors().col(src) * std::sqrt(std::max(0.0, values(src)));
  }
  const double residual = (coords * coords.transpose() - gf).cwiseAbs().maxCoeff();

  bool unit_diagonal = true;
  for (std::size_t i = 0; i < g.order(); ++i) unit_diagonal = unit_diagonal && g(i, i) == 1;

  std::vector<Point> points(static_cast<std::size_t>(n), Point(target_rank));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd row = coords.row(i);
    // Snap onto the sphere so the spherical invariant holds after rounding.
    if (unit_diagonal && row.norm() > 0) row /= row.norm();
    for (Eigen::Index c = 0; c < Eigen::Index(target_rank); ++c) points[std::size_t(i)][std::size_t(c)] = from_double(row(c));
  }
  return {PointConfiguration(unit_diagonal ? Flavor::spherical : Flavor::euclidean, std::move(points), std::nullopt,
                             false),
          residual};
}

namespace {

SymMatrix cayley_menger_any(const SymMatrix& c) {
  const std::size_t n = c.order();
  const std::size_t m = n - 1;
  std::vector<Rational> entries(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) entries[i * m + j] = c(i, n - 1) + c(j, n - 1) - c(i, j);
  }
  return SymMatrix(m, std::move(entries));
}

}  // namespace

bool lisonek_realizable(const SymMatrix& dist_sq, std::size_t d, double tol) {
  for (std::size_t i = 0; i < dist_sq.order(); ++i) {
    if (dist_sq(i, i) != 0) throw DomainError("invalid distance matrix", "nonzero diagonal");
    for (std::size_t j = 0; j < dist_sq.order(); ++j) {
      if (dist_sq(i, j) < 0) throw DomainError("negative distance entry", std::to_string(i) + "," + std::to_string(j));
    }
  }
  if (dist_sq.order() < 2) return true;
  const PsdReport report = psd_rank(cayley_menger_any(dist_sq), tol);
  return report.is_psd && report.numeric_rank <= d;
}

namespace {

Rational json_rational(const nlohmann::json& v, bool& exact) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
  if (v.is_number_float()) {
    exact = false;
    return from_double(v.get<double>());
  }
  throw ParseError("coordinate must be a rational string or a number");
}

}  // namespace

PointConfiguration read_point_set_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw ParseError("point set must be an object with a 'points' array");
  }
  const Flavor flavor = parse_flavor(doc.value("flavor", std::string("euclidean")));
  bool exact = true;
  std::vector<Point> points;
  for (const auto& row : doc["points"]) {
    if (!row.is_array()) throw ParseError("each point must be an array of coordinates");
    Point p;
    for (const auto& v : row) p.push_back(json_rational(v, exact));
    points.push_back(std::move(p));
  }
  if (doc.contains("dim") && !points.empty() && doc["dim"].get<std::size_t>() != points.front().size()) {
    throw ParseError("'dim' does not match the coordinate count");
  }
  std::optional<std::size_t> affine_rank;
  if (doc.contains("affine_rank")) affine_rank = doc["affine_rank"].get<std::size_t>();
  return PointConfiguration(flavor, std::move(points), affine_rank, exact);
}

PointConfiguration read_point_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open point set file '" + path + "'");
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return read_point_csv(in, Flavor::euclidean);
  return read_point_set_json(in);
}

void write_point_set_json(std::ostream& out, const PointConfiguration& cfg) {
  nlohmann::json doc;
  doc["flavor"] = to_string(cfg.flavor());
  doc["dim"] = cfg.ambient_dim();
  if (cfg.dim() != cfg.ambient_dim()) doc["affine_rank"] = cfg.dim();
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : cfg.points()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : p) row.push_back(to_string(x));
    points.push_back(std::move(row));
  }
  doc["points"] = std::move(points);
  out << doc.dump(2) << '\n';
}

PointConfiguration read_point_csv(std::istream& in, Flavor flavor) {
  std::vector<Point> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream cells(line);
    std::string cell;
    Point p;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        const double x = std::stod(cell, &used);
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
        p.push_back(from_double(x));
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": invalid number '" + cell + "'");
      }
    }
    points.push_back(std::move(p));
  }
  return PointConfiguration(flavor, std::move(points), std::nullopt, false);
}

}  // namespace tds

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tds/bounds.hpp"
#include "tds/linalg.hpp"
#include "tds/seidel.hpp"

namespace tds {

enum class Existence { yes, no, unknown };

std::string to_string(Existence e);

struct EtfRecord {
  std::size_t n_vectors;
  std::size_t dim;
  Existence exists;
  std::string provenance;
};

/// Existence catalog of real equiangular tight frames, keyed by (n_vectors, dim).
class EtfCatalog {
 public:
  EtfCatalog() = default;
  explicit EtfCatalog(std::vector<EtfRecord> records);

  /// Entries attested in-repo: (6,3), (16,6), (28,7), (36,15) exist by
  /// construction of their Seidel matrices; (76,19) is a known nonexistence.
  static EtfCatalog bundled();

  /// Absent pairs come back with exists = unknown.
  EtfRecord query(std::size_t n_vectors, std::size_t dim) const;

  bool empty() const noexcept { return records_.empty(); }
  std::size_t size() const noexcept { return records_.size(); }
  const std::vector<EtfRecord>& records() const noexcept { return records_; }

 private:
  std::vector<EtfRecord> records_;
};

/// CSV: `n_vectors,dim,exists,provenance` with an optional header line.
/// Malformed rows raise ParseError naming the line.
EtfCatalog catalog_parse(std::istream& in);
EtfCatalog catalog_load(const std::string& path);
void write_catalog(std::ostream& out, const EtfCatalog& catalog);

struct EtfTestResult {
  bool is_two_eigenvalue = false;
  /// Q^2 - (n-1) I = mu Q off the diagonal, decided in integer arithmetic.
  std::optional<long long> mu;
  double rho1 = 0.0;
  double rho2 = 0.0;
  std::size_t mult1 = 0;
  std::size_t mult2 = 0;
  /// Multiplicity of rho1: dimension of the frame. 0 when not two-eigenvalue.
  std::size_t inferred_dim = 0;
  /// Number of eigenvalue clusters from the independent float eigensolve.
  std::size_t spectral_clusters = 0;
};

EtfTestResult etf_signature_test(const SeidelMatrix& q, double tol = kDefaultTol);

/// Drops an integral Euclidean bound n by one when no ETF with n-1 vectors in R^{d+1} exists.
BoundResult refine_euclidean(std::size_t d, const Rational& gamma, const EtfCatalog& catalog);

enum class SphericalBranch { pos, neg };

/// pos: integral bound n with no ETF of n vectors in R^d drops to n-1.
/// neg: integral bound n with no ETF of n vectors in R^{d+1} drops to n-1.
BoundResult refine_spherical(std::size_t d, const Rational& gamma, const EtfCatalog& catalog, SphericalBranch branch);

}  // namespace tds

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tds/rational.hpp"

namespace tds {

enum class BoundKind { euclidean, spherical_pos, spherical_neg, ls_max_euclidean, ls_max_spherical };

std::string to_string(BoundKind k);
BoundKind parse_bound_kind(const std::string& text);

/// The spectral parameter gamma > 1: the Seidel matrix carries the eigenvalue -gamma.
struct GammaParam {
  enum class Source { euclidean, spherical, direct };

  Rational gamma;
  Source source = Source::direct;
  std::optional<Rational> delta_sq;
  std::optional<Rational> a;
  std::optional<Rational> b;
};

/// gamma = (1 + delta^2) / |1 - delta^2|; invariant under delta^2 -> 1/delta^2.
GammaParam gamma_of_euclidean(const Rational& delta_sq);
/// gamma = (2 - a - b) / (b - a).
GammaParam gamma_of_spherical(const Rational& a, const Rational& b);
/// gamma = 2k - 1 for the integer k with delta^2 = (k-1)/k.
GammaParam gamma_of_k(unsigned k);

struct BoundResult {
  BoundKind kind = BoundKind::euclidean;
  std::size_t d = 0;
  std::optional<Rational> gamma;
  std::optional<unsigned> m;
  Rational exact_value;
  Integer cardinality_bound;
  bool valid = false;
  bool refined = false;
  std::string note;
};

/// n <= (d+1)(gamma^2 - 1)/(gamma^2 - (d+1)) + 1, valid iff gamma^2 > d + 1.
BoundResult bound_euclidean(std::size_t d, const Rational& gamma);
/// n <= d(gamma^2 - 1)/(gamma^2 - d) for a + b >= 0, valid iff gamma^2 > d.
BoundResult bound_spherical_pos(std::size_t d, const Rational& gamma);
/// n <= (d+1)(gamma^2 - 1)/(gamma^2 - (d+1)) for a + b < 0, valid iff gamma^2 > d + 1.
BoundResult bound_spherical_neg(std::size_t d, const Rational& gamma);

BoundResult bound_for(BoundKind kind, std::size_t d, const Rational& gamma);

enum class LrsKind { euclidean, spherical };

struct LrsResult {
  bool applies;  // n beyond 2d+4 (Euclidean) or 2d+2 (spherical)
  bool odd_ok;   // gamma is an odd integer
  std::optional<Integer> k;
};

LrsResult lrs_check(const Rational& gamma, std::size_t n, std::size_t d, LrsKind kind);

/// Bound over all odd gamma > 2m+1: (d+1) 4m(m+1)/(4m^2+4m-d) + 1 (Euclidean)
/// or 4dm(m+1)/((2m+1)^2-d) (spherical). Requires (2m+1)^2 > d > 3, and
/// (2m+1)^2 > d+1 for the Euclidean kind.
BoundResult ls_max_bound(std::size_t d, unsigned m, BoundKind kind);

/// One eigenvalue sign * sqrt(radicand) with its multiplicity.
struct ExactEigenvalue {
  int sign;
  Rational radicand;
  std::size_t multiplicity;

  double value() const;
  /// The eigenvalue as a rational when the radicand is a perfect square.
  std::optional<Rational> rational() const;
};

struct ExactSpectrum {
  std::size_t order;
  std::vector<ExactEigenvalue> eigenvalues;  // ascending

  /// sum(lambda * mult) == 0, decided exactly.
  bool trace_is_zero() const;
  /// sum(lambda^2 * mult), exact.
  Rational trace_of_square() const;
};

/// Spectrum a Seidel matrix must have when the relative bound is attained:
/// Euclidean (order n - 1) {-sqrt((n-2)(d+1)/(n-d-2))^(n-d-2), sqrt((n-2)(n-d-2)/(d+1))^(d+1)},
/// spherical (order n) {-sqrt(d(n-1)/(n-d))^(n-d), sqrt((n-1)(n-d)/d)^d}.
ExactSpectrum equality_spectrum(std::size_t n, std::size_t d, LrsKind kind);

}  // namespace tds

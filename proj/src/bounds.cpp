#include "tds/bounds.hpp"

#include <cmath>

namespace tds {

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::euclidean: return "euclidean";
    case BoundKind::spherical_pos: return "spherical_pos";
    case BoundKind::spherical_neg: return "spherical_neg";
    case BoundKind::ls_max_euclidean: return "ls_max_euclidean";
    case BoundKind::ls_max_spherical: return "ls_max_spherical";
  }
  return "unknown";
}

BoundKind parse_bound_kind(const std::string& text) {
  for (BoundKind k : {BoundKind::euclidean, BoundKind::spherical_pos, BoundKind::spherical_neg,
                      BoundKind::ls_max_euclidean, BoundKind::ls_max_spherical}) {
    if (to_string(k) == text) return k;
  }
  throw ParseError("unknown bound kind '" + text + "'");
}

GammaParam gamma_of_euclidean(const Rational& delta_sq) {
  if (delta_sq <= 0) throw DomainError("invalid parameters", "delta^2 must be positive");
  if (delta_sq == 1) throw DomainError("invalid parameters", "delta^2 = 1 gives a one-distance set");
  GammaParam g;
  g.gamma = (1 + delta_sq) / abs(Rational(1 - delta_sq));
  g.source = GammaParam::Source::euclidean;
  g.delta_sq = delta_sq;
  return g;
}

GammaParam gamma_of_spherical(const Rational& a, const Rational& b) {
  if (b >= 1) throw DomainError("invalid parameters", "need b < 1");
  if (!(a < b)) throw DomainError("invalid parameters", "need a < b");
  if (a < -1) throw DomainError("invalid parameters", "need a >= -1");
  GammaParam g;
  g.gamma = (2 - a - b) / (b - a);
  g.source = GammaParam::Source::spherical;
  g.a = a;
  g.b = b;
  return g;
}

GammaParam gamma_of_k(unsigned k) {
  if (k < 2) throw DomainError("invalid parameters", "k must be at least 2");
  GammaParam g;
  g.gamma = Rational(2 * static_cast<unsigned long>(k) - 1);
  return g;
}

namespace {

BoundResult relative_bound(BoundKind kind, std::size_t d, const Rational& gamma, const Rational& dimension,
                           const Rational& offset) {
  if (gamma <= 0) throw DomainError("invalid parameters", "gamma must be positive");
  BoundResult r;
  r.kind = kind;
  r.d = d;
  r.gamma = gamma;
  const Rational g2 = gamma * gamma;
  if (g2 <= dimension) {
    r.valid = false;
    r.note = "bound vacuous (gamma^2 <= " + to_string(dimension) + ")";
    return r;
  }
  r.valid = true;
  r.exact_value = dimension * (g2 - 1) / (g2 - dimension) + offset;
  r.cardinality_bound = floor(r.exact_value);
  return r;
}

Rational as_rational(std::size_t x) { return Rational(static_cast<unsigned long>(x)); }

}  // namespace

BoundResult bound_euclidean(std::size_t d, const Rational& gamma) {
  return relative_bound(BoundKind::euclidean, d, gamma, as_rational(d + 1), 1);
}

BoundResult bound_spherical_pos(std::size_t d, const Rational& gamma) {
  return relative_bound(BoundKind::spherical_pos, d, gamma, as_rational(d), 0);
}

BoundResult bound_spherical_neg(std::size_t d, const Rational& gamma) {
  return relative_bound(BoundKind::spherical_neg, d, gamma, as_rational(d + 1), 0);
}

BoundResult bound_for(BoundKind kind, std::size_t d, const Rational& gamma) {
  switch (kind) {
    case BoundKind::euclidean: return bound_euclidean(d, gamma);
    case BoundKind::spherical_pos: return bound_spherical_pos(d, gamma);
    case BoundKind::spherical_neg: return bound_spherical_neg(d, gamma);
    default: throw DomainError("invalid parameters", "maximum bounds take m, not gamma");
  }
}

LrsResult lrs_check(const Rational& gamma, std::size_t n, std::size_t d, LrsKind kind) {
  const std::size_t threshold = kind == LrsKind::euclidean ? 2 * d + 4 : 2 * d + 2;
  LrsResult r{n > threshold, false, std::nullopt};
  if (is_integer(gamma) && gamma > 0 && mpz_odd_p(gamma.get_num_mpz_t())) {
    r.odd_ok = true;
    r.k = Integer((gamma.get_num() + 1) / 2);
  }
  return r;
}

BoundResult ls_max_bound(std::size_t d, unsigned m, BoundKind kind) {
  if (kind != BoundKind::ls_max_euclidean && kind != BoundKind::ls_max_spherical) {
    throw DomainError("invalid parameters", "ls_max_bound needs an ls_max kind");
  }
  const Rational mm(static_cast<unsigned long>(m));
  const Rational dd = as_rational(d);
  const Rational odd = 2 * mm + 1;
  if (m == 0 || !(odd * odd > dd) || d <= 3) {
    throw DomainError("invalid parameters", "need (2m+1)^2 > d > 3");
  }
  if (kind == BoundKind::ls_max_euclidean && !(odd * odd > dd + 1)) {
    throw DomainError("invalid parameters", "need (2m+1)^2 > d + 1");
  }
  BoundResult r;
  r.kind = kind;
  r.d = d;
  r.m = m;
  r.valid = true;
  if (kind == BoundKind::ls_max_euclidean) {
    r.exact_value = (dd + 1) * 4 * mm * (mm + 1) / (odd * odd - (dd + 1)) + 1;
  } else {
    r.exact_value = 4 * dd * mm * (mm + 1) / (odd * odd - dd);
  }
  r.cardinality_bound = floor(r.exact_value);
  return r;
}

double ExactEigenvalue::value() const { return sign * std::sqrt(radicand.get_d()); }

std::optional<Rational> ExactEigenvalue::rational() const {
  if (radicand < 0) return std::nullopt;
  Integer num_root, den_root;
  if (!mpz_perfect_square_p(radicand.get_num_mpz_t()) || !mpz_perfect_square_p(radicand.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_sqrt(num_root.get_mpz_t(), radicand.get_num_mpz_t());
  mpz_sqrt(den_root.get_mpz_t(), radicand.get_den_mpz_t());
  Rational q(num_root, den_root);
  q.canonicalize();
  return sign < 0 ? Rational(-q) : q;
}

bool ExactSpectrum::trace_is_zero() const {
  // sum over positive terms equals sum over negative terms; with at most one
  // value of each sign this reduces to comparing squares.
  Rational pos_sq = 0, neg_sq = 0;
  std::size_t pos_count = 0, neg_count = 0;
  for (const auto& e : eigenvalues) {
    const Rational mult(static_cast<unsigned long>(e.multiplicity));
    const Rational sq = mult * mult * e.radicand;
    if (e.radicand == 0) continue;
    if (e.sign > 0) {
      pos_sq = sq;
      ++pos_count;
    } else {
      neg_sq = sq;
      ++neg_count;
    }
  }
  if (pos_count > 1 || neg_count > 1) throw std::logic_error("trace_is_zero supports one value per sign");
  return pos_sq == neg_sq;
}

Rational ExactSpectrum::trace_of_square() const {
  Rational t = 0;
  for (const auto& e : eigenvalues) t += Rational(static_cast<unsigned long>(e.multiplicity)) * e.radicand;
  return t;
}

ExactSpectrum equality_spectrum(std::size_t n, std::size_t d, LrsKind kind) {
  const Rational nn = as_rational(n);
  const Rational dd = as_rational(d);
  if (kind == LrsKind::euclidean) {
    if (n <= d + 2) throw DomainError("invalid parameters", "multiplicity n - d - 2 must be positive");
    const Rational low = (nn - 2) * (dd + 1) / (nn - dd - 2);
    const Rational high = (nn - 2) * (nn - dd - 2) / (dd + 1);
    return {n - 1, {{-1, low, n - d - 2}, {1, high, d + 1}}};
  }
  if (n <= d || d == 0) throw DomainError("invalid parameters", "multiplicity n - d must be positive");
  const Rational low = dd * (nn - 1) / (nn - dd);
  const Rational high = (nn - 1) * (nn - dd) / dd;
  return {n, {{-1, low, n - d}, {1, high, d}}};
}

}  // namespace tds

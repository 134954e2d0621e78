#include "tds/seidel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>

namespace tds {

SeidelMatrix::SeidelMatrix(std::size_t order, std::vector<std::int8_t> entries)
    : order_(order), entries_(std::move(entries)) {
  if (order_ == 0) throw DomainError("not a Seidel matrix", "order must be positive");
  if (entries_.size() != order_ * order_) throw DomainError("not a Seidel matrix", "entry count does not match order");
  for (std::size_t i = 0; i < order_; ++i) {
    if (entries_[i * order_ + i] != 0) throw DomainError("not a Seidel matrix", "nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = i + 1; j < order_; ++j) {
      const int x = entries_[i * order_ + j];
      if (x != 1 && x != -1) {
        throw DomainError("entry not +-1", "at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (x != entries_[j * order_ + i]) {
        throw DomainError("not a Seidel matrix", "asymmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

SeidelMatrix SeidelMatrix::from_sym(const SymMatrix& m) {
  const std::size_t n = m.order();
  std::vector<std::int8_t> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = m(i, j);
      if (i == j) {
        if (x != 0) throw DomainError("not a Seidel matrix", "nonzero diagonal at " + std::to_string(i));
        continue;
      }
      if (x == 1) {
        entries[i * n + j] = 1;
      } else if (x == -1) {
        entries[i * n + j] = -1;
      } else {
        throw DomainError("entry not +-1",
                          "(" + std::to_string(i) + ", " + std::to_string(j) + ") = " + to_string(x));
      }
    }
  }
  return SeidelMatrix(n, std::move(entries));
}

SymMatrix SeidelMatrix::to_sym() const {
  std::vector<Rational> entries(entries_.size());
  for (std::size_t k = 0; k < entries_.size(); ++k) entries[k] = int(entries_[k]);
  return SymMatrix(order_, std::move(entries));
}

Eigen::MatrixXd SeidelMatrix::to_float() const {
  const auto n = Eigen::Index(order_);
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = entries_[std::size_t(i * n + j)];
  }
  return out;
}

long long SeidelMatrix::trace() const {
  long long t = 0;
  for (std::size_t i = 0; i < order_; ++i) t += entries_[i * order_ + i];
  return t;
}

long long SeidelMatrix::trace_of_square() const {
  long long t = 0;
  for (auto x : entries_) t += x * x;
  return t;
}

std::vector<long long> SeidelMatrix::square() const {
  const std::size_t n = order_;
  std::vector<long long> out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const long long a = entries_[i * n + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += a * entries_[k * n + j];
    }
  }
  return out;
}

std::vector<double> DSpectrum::eigenvalues() const {
  std::vector<double> out;
  out.push_back(a2);
  out.insert(out.end(), zero_multiplicity, 0.0);
  out.push_back(a1);
  std::sort(out.begin(), out.end());
  return out;
}

SymMatrix cayley_menger(const SymMatrix& dist_sq) {
  const std::size_t n = dist_sq.order();
  if (n < 3) throw DomainError("distance matrix too small", "Cayley-Menger assembly needs n >= 3");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist_sq(i, i) != 0) throw DomainError("invalid distance matrix", "nonzero diagonal");
  }
  const std::size_t m = n - 1;
  std::vector<Rational> entries(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) entries[i * m + j] = dist_sq(i, m) + dist_sq(j, m) - dist_sq(i, j);
  }
  return SymMatrix(m, std::move(entries));
}

namespace {

void validate(const EuclideanSeidelParams& p) {
  if (p.n < 3) throw DomainError("invalid parameters", "need n >= 3");
  if (p.h > p.n - 1) throw DomainError("invalid parameters", "h must lie in [0, n-1]");
  if (p.delta_sq <= 0 || p.delta_sq == 1) throw DomainError("invalid parameters", "delta^2 must be positive and != 1");
}

}  // namespace

SymMatrix build_D(const EuclideanSeidelParams& params) {
  validate(params);
  const std::size_t m = params.n - 1;
  const std::size_t h = params.h;
  const Rational& ds = params.delta_sq;
  const Rational near_block = ds - 3;
  const Rational cross_block = -(1 + ds);
  const Rational far_block = 1 - 3 * ds;
  std::vector<Rational> entries(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const bool near_i = i < h;
      const bool near_j = j < h;
      entries[i * m + j] = near_i && near_j ? near_block : (!near_i && !near_j ? far_block : cross_block);
    }
  }
  return SymMatrix(m, std::move(entries));
}

DSpectrum spectrum_D_closed_form(const EuclideanSeidelParams& params) {
  validate(params);
  const Rational& ds = params.delta_sq;
  const Rational m(static_cast<unsigned long>(params.n - 1));
  const Rational h(static_cast<unsigned long>(params.h));

  if (params.h == 0 || params.h == params.n - 1) {
    // Single block c * J_m: eigenvalues {c m, 0^(m-1)}.
    const Rational coefficient = params.h == 0 ? Rational(1 - 3 * ds) : Rational(ds - 3);
    const double value = Rational(coefficient * m).get_d();
    DSpectrum s{std::max(value, 0.0), std::min(value, 0.0), params.n - 3, false, coefficient * m, 0};
    return s;
  }

  const Rational half = (1 - 3 * ds) / 2;
  const Rational p = -2 * (1 - ds) * h + half * m;
  const Rational radicand = 2 * m * h * (1 - ds) * (1 + ds) + m * m * half * half;
  if (radicand < 0) throw std::logic_error("negative radicand in the spectrum of D");
  const double root = std::sqrt(radicand.get_d());
  const double pd = p.get_d();
  return DSpectrum{pd + root, pd - root, params.n - 3, true, p, radicand};
}

EuclideanSeidel seidel_euclidean(const SymMatrix& dist_sq, std::optional<Rational> expected_delta_sq, double tol) {
  if (dist_sq.order() < 3) throw DomainError("distance matrix too small", "need at least 3 points");
  TwoDistanceCertificate cert;
  try {
    cert = certify_distance_matrix(dist_sq, true, tol);
  } catch (const DomainError& e) {
    throw DomainError("not two-distance", e.what());
  }
  if (cert.values[0] <= 0) throw DomainError("not two-distance", "coincident points");

  const Rational scale = 1 / cert.values[0];
  const Rational delta_sq = cert.values[1] * scale;
  if (expected_delta_sq && *expected_delta_sq != delta_sq && *expected_delta_sq != 1 / delta_sq) {
    throw DomainError("delta mismatch", "data has delta^2 = " + to_string(delta_sq) + ", expected " +
                                            to_string(*expected_delta_sq));
  }

  const SymMatrix rescaled = scale * dist_sq.permuted(cert.permutation);
  SymMatrix m = cayley_menger(rescaled);
  const std::size_t d = psd_rank(m, tol).numeric_rank;
  EuclideanSeidelParams params{dist_sq.order(), d, delta_sq, cert.h};
  SymMatrix dm = build_D(params);

  const std::size_t order = m.order();
  const SymMatrix numerator = Rational(2) * m + dm - (1 + delta_sq) * SymMatrix::identity(order);
  SeidelMatrix s = SeidelMatrix::from_sym(numerator / (delta_sq - 1));
  return EuclideanSeidel{std::move(s), params, cert.permutation, std::move(m), std::move(dm), scale};
}

SeidelMatrix seidel_spherical(const SymMatrix& g, const Rational& a, const Rational& b) {
  if (!(a < b)) throw DomainError("invalid parameters", "need a < b");
  const std::size_t n = g.order();
  std::vector<std::int8_t> entries(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (g(i, i) != 1) throw DomainError("not a spherical two-distance Gram matrix", "diagonal entry " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (g(i, j) == a) {
        entries[i * n + j] = -1;
      } else if (g(i, j) == b) {
        entries[i * n + j] = 1;
      } else {
        throw DomainError("not a spherical two-distance Gram matrix",
                          "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") = " + to_string(g(i, j)));
      }
    }
  }
  return SeidelMatrix(n, std::move(entries));
}

namespace {

StructureReport measure(const SeidelMatrix& s, double target, double tol) {
  const auto eigs = eig_sym(s.to_float());
  const double within = tol * std::max(1.0, spectral_radius(eigs));
  const Spectrum spec = group_spectrum(eigs, within);
  StructureReport r;
  r.smallest_eig = spec.clusters.front().value;
  r.smallest_mult = spec.clusters.front().multiplicity;
  r.target_value = target;
  for (double x : eigs) {
    if (std::abs(x - target) <= within) ++r.target_mult;
    if (x < target - within) ++r.below_target;
  }
  return r;
}

std::size_t required(long long value) { return value > 0 ? std::size_t(value) : 0; }

}  // namespace

StructureReport check_structure_euclidean(const SeidelMatrix& s, std::size_t d, const Rational& delta_sq, double tol) {
  if (delta_sq <= 0 || delta_sq == 1) throw DomainError("invalid parameters", "delta^2 must be positive and != 1");
  const Rational canonical = delta_sq > 1 ? delta_sq : Rational(1 / delta_sq);
  const double target = Rational((1 + canonical) / (1 - canonical)).get_d();
  StructureReport r = measure(s, target, tol);
  const long long n = static_cast<long long>(s.order()) + 1;
  r.required_mult = required(n - static_cast<long long>(d) - 3);
  if (r.required_mult == 0) {
    r.vacuous = true;
    r.passes = true;
    r.note = "vacuous: n - d - 3 <= 0";
    return r;
  }
  r.passes = r.target_mult >= r.required_mult && r.below_target <= 1;
  if (!r.passes) r.note = "eigenvalue structure does not match the Cayley-Menger rank argument";
  return r;
}

StructureReport check_structure_spherical(const SeidelMatrix& s, std::size_t d, const Rational& a, const Rational& b,
                                          double tol) {
  if (!(a < b)) throw DomainError("invalid parameters", "need a < b");
  const double target = Rational((a + b - 2) / (b - a)).get_d();
  StructureReport r = measure(s, target, tol);
  r.required_mult = required(static_cast<long long>(s.order()) - static_cast<long long>(d) - 1);
  if (r.required_mult == 0) {
    r.vacuous = true;
    r.passes = true;
    r.note = "vacuous: n - d - 1 <= 0";
    return r;
  }
  if (a + b < 0) {
    r.passes = r.target_mult >= r.required_mult && r.below_target == 0;
    r.note = "a + b < 0: target is the smallest eigenvalue";
  } else {
    r.passes = r.target_mult >= r.required_mult && r.below_target <= 1;
    r.note = "a + b >= 0: at most one eigenvalue below the target";
  }
  return r;
}

namespace {

bool is_prime(unsigned q) {
  if (q < 2) return false;
  for (unsigned k = 2; k * k <= q; ++k) {
    if (q % k == 0) return false;
  }
  return true;
}

SeidelMatrix from_sign_rule(std::size_t n, auto&& positive) {
  std::vector<std::int8_t> entries(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) entries[i * n + j] = positive(i, j) ? 1 : -1;
    }
  }
  return SeidelMatrix(n, std::move(entries));
}

}  // namespace

SeidelMatrix paley_conference_seidel(unsigned q) {
  if (!is_prime(q) || q % 4 != 1) throw DomainError("invalid parameters", "Paley construction needs a prime q = 1 mod 4");
  std::vector<bool> square(q, false);
  for (unsigned x = 1; x < q; ++x) square[(x * x) % q] = true;
  return from_sign_rule(q + 1, [&](std::size_t i, std::size_t j) {
    if (i == 0 || j == 0) return true;
    return bool(square[(j + q - i) % q]);
  });
}

SeidelMatrix clebsch_seidel() {
  return from_sign_rule(16, [](std::size_t i, std::size_t j) {
    const int weight = std::popcount(static_cast<unsigned>(i ^ j));
    return !(weight == 1 || weight == 4);
  });
}

SeidelMatrix triangular_seidel(unsigned m) {
  if (m < 3) throw DomainError("invalid parameters", "triangular construction needs m >= 3");
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  }
  return from_sign_rule(pairs.size(), [&](std::size_t x, std::size_t y) {
    const auto [a, b] = pairs[x];
    const auto [c, d] = pairs[y];
    return a == c || a == d || b == c || b == d;
  });
}

SeidelMatrix latin_square_seidel(unsigned m) {
  if (m < 2) throw DomainError("invalid parameters", "Latin square construction needs m >= 2");
  return from_sign_rule(std::size_t(m) * m, [m](std::size_t x, std::size_t y) {
    const std::size_t r1 = x / m, c1 = x % m, r2 = y / m, c2 = y % m;
    return r1 == r2 || c1 == c2 || (r1 + c1) % m == (r2 + c2) % m;
  });
}

void write_seidel(std::ostream& out, const SeidelMatrix& s) {
  out << s.order() << '\n';
  for (std::size_t i = 0; i < s.order(); ++i) {
    for (std::size_t j = 0; j < s.order(); ++j) {
      if (j) out << ' ';
      out << s(i, j);
    }
    out << '\n';
  }
}

SeidelMatrix read_seidel(std::istream& in) { return SeidelMatrix::from_sym(read_matrix(in)); }

}  // namespace tds

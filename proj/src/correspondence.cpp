#include "tds/correspondence.hpp"

#include <cmath>

namespace tds {

Eigen::MatrixXd EquiangularSystem::gram() const {
  const auto n = Eigen::Index(size());
  return Eigen::MatrixXd::Identity(n, n) + alpha * signs.to_float();
}

SymMatrix EquiangularSystem::gram_exact() const {
  if (!alpha_exact) throw DomainError("irrational angle", "the common angle has no exact rational value");
  return SymMatrix::identity(size()) + *alpha_exact * signs.to_sym();
}

FamilyParam family_param(const Rational& alpha, const Rational& a) {
  if (alpha <= 0 || alpha >= 1) throw DomainError("invalid parameters", "need 0 < alpha < 1");
  FamilyParam f{alpha, a, ((1 - alpha) * a + 2 * alpha) / (1 + alpha), false, false, false, false};
  f.a_at_least_minus_one = a >= -1;
  f.a_less_than_b = a < f.b;
  f.sum_negative = a + f.b < 0;
  f.b_less_than_one = f.b < 1;
  return f;
}

EquiangularSystem seidel_to_lines(const SeidelMatrix& s, double tol) {
  const auto eigs = eig_sym(s.to_float());
  const double within = tol * std::max(1.0, spectral_radius(eigs));
  const double lambda0 = eigs.front();
  if (lambda0 >= -1 - within) {
    throw DomainError("no equiangular realization at this eigenvalue",
                      "smallest eigenvalue " + std::to_string(lambda0) + " is not below -1");
  }

  const std::size_t n = s.order();
  // Integer smallest eigenvalue: decide alpha and the multiplicity exactly.
  const double rounded = std::round(lambda0);
  if (std::abs(lambda0 - rounded) <= within) {
    const Rational lambda(static_cast<long>(rounded));
    const std::size_t mult = exact_multiplicity(s.to_sym(), lambda);
    if (mult > 0) {
      const Rational alpha = -1 / lambda;
      return EquiangularSystem{s, alpha.get_d(), alpha, n - mult};
    }
  }

  const Spectrum spec = group_spectrum(eigs, within);
  return EquiangularSystem{s, -1.0 / lambda0, std::nullopt, n - spec.clusters.front().multiplicity};
}

EquiangularSystem spherical_to_equiangular(const SymMatrix& g, const Rational& a, const Rational& b, double tol) {
  if (a + b >= 0) {
    throw DomainError("wrong sign branch; use the a + b >= 0 bound",
                      "a + b = " + to_string(Rational(a + b)) + " is not negative");
  }
  SeidelMatrix s = seidel_spherical(g, a, b);
  const Rational alpha = (b - a) / (2 - a - b);
  // -1/alpha = (a + b - 2)/(b - a) is rational, so the rank of I + alpha S is exact.
  const std::size_t mult = exact_multiplicity(s.to_sym(), Rational(-1 / alpha));
  EquiangularSystem sys{std::move(s), alpha.get_d(), alpha, g.order() - mult};
  const PsdReport psd = psd_rank(sys.gram(), tol);
  if (!psd.is_psd) throw DomainError("indefinite Gram", "equiangular Gram has eigenvalue " + std::to_string(psd.min_eigenvalue));
  return sys;
}

SymMatrix equiangular_to_spherical(const EquiangularSystem& sys, const Rational& a) {
  if (!sys.alpha_exact) throw DomainError("irrational angle", "the family parameter needs a rational angle");
  const FamilyParam f = family_param(*sys.alpha_exact, a);
  if (!f.admissible()) {
    throw DomainError("inadmissible a", "need -1 <= a < " + to_string(Rational(-*sys.alpha_exact)) + " so that a + b < 0; got a = " +
                                            to_string(a) + ", b = " + to_string(f.b));
  }
  const std::size_t n = sys.size();
  const SymMatrix scaled = (f.b - f.a) * sys.signs.to_sym() - (f.a + f.b - 2) * SymMatrix::identity(n) +
                           (f.a + f.b) * SymMatrix::ones(n);
  SymMatrix g = scaled / 2;
  if (!exact_is_psd(g)) {
    throw DomainError("no spherical realization",
                      "G = ((b - a) S - (a + b - 2) I + (a + b) J) / 2 is not positive semidefinite for a = " +
                          to_string(a) + " and this switching of S");
  }
  return g;
}

EquiangularSystem equiangular_from_gram(const SymMatrix& g, double tol) {
  const std::size_t n = g.order();
  if (n < 2) throw DomainError("not an equiangular Gram matrix", "need at least two vectors");
  const Rational alpha = abs(g(0, 1));
  if (alpha <= 0 || alpha >= 1) throw DomainError("not an equiangular Gram matrix", "angle outside (0, 1)");
  std::vector<std::int8_t> entries(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (g(i, i) != 1) throw DomainError("not an equiangular Gram matrix", "diagonal entry " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (g(i, j) == alpha) {
        entries[i * n + j] = 1;
      } else if (g(i, j) == -alpha) {
        entries[i * n + j] = -1;
      } else {
        throw DomainError("not an equiangular Gram matrix",
                          "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") = " + to_string(g(i, j)));
      }
    }
  }
  SeidelMatrix s(n, std::move(entries));
  const std::size_t mult = exact_multiplicity(s.to_sym(), Rational(-1 / alpha));
  EquiangularSystem sys{std::move(s), alpha.get_d(), alpha, n - mult};
  const PsdReport psd = psd_rank(sys.gram(), tol);
  if (!psd.is_psd) throw DomainError("indefinite Gram", "smallest eigenvalue " + std::to_string(psd.min_eigenvalue));
  return sys;
}

}  // namespace tds

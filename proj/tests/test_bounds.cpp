#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "frac.hpp"
#include "tds/bounds.hpp"

using tds::BoundKind;
using tds::Rational;

TEST(Gamma, Euclidean) {
  EXPECT_EQ(tds::gamma_of_euclidean(2).gamma, 3);
  EXPECT_EQ(tds::gamma_of_euclidean(Rational(1, 2)).gamma, 3);
  EXPECT_EQ(tds::gamma_of_euclidean(Rational(3, 2)).gamma, 5);
  EXPECT_THROW(tds::gamma_of_euclidean(1), tds::DomainError);
  EXPECT_THROW(tds::gamma_of_euclidean(0), tds::DomainError);
}

TEST(Gamma, NormalizationInvariance) {
  std::mt19937 rng(41);
  for (int t = 0; t < 200; ++t) {
    const long p = 1 + rng() % 50;
    long q = 1 + rng() % 50;
    if (p == q) ++q;
    const Rational ds = frac(p, q);
    const Rational inv = frac(q, p);
    EXPECT_EQ(tds::gamma_of_euclidean(ds).gamma, tds::gamma_of_euclidean(inv).gamma);
    EXPECT_GT(tds::gamma_of_euclidean(ds).gamma, 1);
  }
}

TEST(Gamma, SphericalAndK) {
  EXPECT_EQ(tds::gamma_of_spherical(-1, 0).gamma, 3);
  EXPECT_EQ(tds::gamma_of_spherical(Rational(-1, 7), Rational(3, 7)).gamma, 3);
  EXPECT_EQ(tds::gamma_of_spherical(Rational(-1, 3), Rational(1, 3)).gamma, 3);
  EXPECT_THROW(tds::gamma_of_spherical(0, 1), tds::DomainError);
  EXPECT_THROW(tds::gamma_of_spherical(Rational(1, 2), 0), tds::DomainError);
  EXPECT_THROW(tds::gamma_of_spherical(-2, 0), tds::DomainError);
  for (unsigned k = 2; k <= 9; ++k) {
    const auto g = tds::gamma_of_k(k);
    EXPECT_EQ(g.gamma, 2 * long(k) - 1);
    // delta^2 = (k-1)/k yields the same gamma.
    EXPECT_EQ(tds::gamma_of_euclidean(Rational(long(k) - 1, long(k))).gamma, g.gamma);
  }
}

TEST(Bounds, Examples) {
  const auto e = tds::bound_euclidean(15, 5);
  EXPECT_TRUE(e.valid);
  EXPECT_EQ(e.exact_value, Rational(131, 3));
  EXPECT_EQ(e.cardinality_bound, 43);
  EXPECT_EQ(tds::bound_euclidean(5, 3).cardinality_bound, 17);
  EXPECT_EQ(tds::bound_euclidean(7, 3).cardinality_bound, 65);
  EXPECT_EQ(tds::bound_euclidean(18, 5).cardinality_bound, 77);
  EXPECT_EQ(tds::bound_euclidean(23, 5).cardinality_bound, 577);
  EXPECT_EQ(tds::bound_euclidean(33, 9).cardinality_bound, 58);
  EXPECT_EQ(tds::bound_spherical_pos(7, 3).exact_value, 28);
  EXPECT_EQ(tds::bound_spherical_pos(17, 5).cardinality_bound, 51);
  EXPECT_EQ(tds::bound_spherical_pos(28, 9).cardinality_bound, 42);
  EXPECT_EQ(tds::bound_spherical_neg(10, 5).exact_value, Rational(132, 7));
  EXPECT_EQ(tds::bound_spherical_neg(10, 5).cardinality_bound, 18);
}

TEST(Bounds, Vacuous) {
  const auto e = tds::bound_euclidean(8, 3);
  EXPECT_FALSE(e.valid);
  EXPECT_NE(e.note.find("vacuous"), std::string::npos);
  EXPECT_FALSE(tds::bound_spherical_pos(9, 3).valid);
  EXPECT_TRUE(tds::bound_spherical_pos(8, 3).valid);
  EXPECT_FALSE(tds::bound_spherical_neg(8, 3).valid);
}

TEST(Bounds, FloorOfExactValue) {
  for (std::size_t d = 2; d <= 40; ++d) {
    for (long g = 2; g <= 12; ++g) {
      for (auto kind : {BoundKind::euclidean, BoundKind::spherical_pos, BoundKind::spherical_neg}) {
        const auto r = tds::bound_for(kind, d, g);
        if (r.valid) EXPECT_EQ(r.cardinality_bound, tds::floor(r.exact_value));
      }
    }
  }
}

TEST(Bounds, StrictlyDecreasingInGamma) {
  for (std::size_t d = 5; d <= 33; ++d) {
    for (auto kind : {BoundKind::euclidean, BoundKind::spherical_pos, BoundKind::spherical_neg}) {
      std::optional<Rational> previous;
      for (int step = 0; step < 60; ++step) {
        const Rational gamma = Rational(3) + frac(step, 4);
        const auto r = tds::bound_for(kind, d, gamma);
        if (!r.valid) {
          EXPECT_FALSE(previous.has_value());
          continue;
        }
        if (previous) EXPECT_LT(r.exact_value, *previous);
        previous = r.exact_value;
      }
    }
  }
}

TEST(LsMax, IdentityAtOddGamma) {
  for (std::size_t d = 4; d <= 40; ++d) {
    for (unsigned m = 1; m <= 4; ++m) {
      if ((2 * m + 1) * (2 * m + 1) <= d) continue;
      const Rational gamma(2 * long(m) + 1);
      const auto s = tds::ls_max_bound(d, m, BoundKind::ls_max_spherical);
      EXPECT_EQ(s.exact_value, tds::bound_spherical_pos(d, gamma).exact_value);
      if (gamma * gamma > d + 1) {
        const auto e = tds::ls_max_bound(d, m, BoundKind::ls_max_euclidean);
        EXPECT_EQ(e.exact_value, tds::bound_euclidean(d, gamma).exact_value);
      }
    }
  }
  EXPECT_EQ(tds::ls_max_bound(5, 1, BoundKind::ls_max_euclidean).exact_value, 17);
  EXPECT_EQ(tds::ls_max_bound(7, 1, BoundKind::ls_max_euclidean).cardinality_bound, 65);
  EXPECT_EQ(tds::ls_max_bound(8, 1, BoundKind::ls_max_spherical).exact_value, 64);
  EXPECT_THROW(tds::ls_max_bound(8, 1, BoundKind::ls_max_euclidean), tds::DomainError);
  EXPECT_THROW(tds::ls_max_bound(3, 1, BoundKind::ls_max_euclidean), tds::DomainError);
  EXPECT_THROW(tds::ls_max_bound(9, 1, BoundKind::ls_max_spherical), tds::DomainError);
}

TEST(Lrs, Check) {
  const auto a = tds::lrs_check(5, 40, 15, tds::LrsKind::euclidean);
  EXPECT_TRUE(a.applies);
  EXPECT_TRUE(a.odd_ok);
  EXPECT_EQ(a.k, 3);
  const auto b = tds::lrs_check(4, 10, 5, tds::LrsKind::euclidean);
  EXPECT_FALSE(b.applies);
  EXPECT_FALSE(b.odd_ok);
  EXPECT_FALSE(b.k.has_value());
  EXPECT_TRUE(tds::lrs_check(3, 13, 5, tds::LrsKind::spherical).applies);
  EXPECT_FALSE(tds::lrs_check(3, 12, 5, tds::LrsKind::spherical).applies);
  EXPECT_FALSE(tds::lrs_check(Rational(7, 2), 40, 5, tds::LrsKind::spherical).odd_ok);
}

TEST(EqualitySpectrum, TraceIdentities) {
  for (std::size_t d = 2; d <= 20; ++d) {
    for (std::size_t n = d + 1; n <= d + 40; ++n) {
      const auto sph = tds::equality_spectrum(n, d, tds::LrsKind::spherical);
      EXPECT_EQ(sph.order, n);
      EXPECT_TRUE(sph.trace_is_zero());
      EXPECT_EQ(sph.trace_of_square(), Rational(long(n * (n - 1))));
      if (n > d + 2) {
        const auto euc = tds::equality_spectrum(n, d, tds::LrsKind::euclidean);
        EXPECT_EQ(euc.order, n - 1);
        EXPECT_TRUE(euc.trace_is_zero());
        EXPECT_EQ(euc.trace_of_square(), Rational(long((n - 1) * (n - 2))));
      }
    }
  }
}

TEST(EqualitySpectrum, Examples) {
  const auto s = tds::equality_spectrum(28, 7, tds::LrsKind::spherical);
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_EQ(s.eigenvalues[0].rational(), Rational(-3));
  EXPECT_EQ(s.eigenvalues[0].multiplicity, 21u);
  EXPECT_EQ(s.eigenvalues[1].rational(), Rational(9));
  EXPECT_EQ(s.eigenvalues[1].multiplicity, 7u);
  // n = d + 3: a single negative eigenvalue -(d + 1).
  const auto e = tds::equality_spectrum(9, 6, tds::LrsKind::euclidean);
  EXPECT_EQ(e.eigenvalues[0].rational(), Rational(-7));
  EXPECT_EQ(e.eigenvalues[0].multiplicity, 1u);
  EXPECT_EQ(e.eigenvalues[1].multiplicity, 7u);
  EXPECT_FALSE(tds::equality_spectrum(6, 3, tds::LrsKind::spherical).eigenvalues[0].rational().has_value());
  EXPECT_THROW(tds::equality_spectrum(5, 3, tds::LrsKind::euclidean), tds::DomainError);
}

TEST(BoundKind, Names) {
  for (auto k : {BoundKind::euclidean, BoundKind::spherical_pos, BoundKind::spherical_neg, BoundKind::ls_max_euclidean,
                 BoundKind::ls_max_spherical}) {
    EXPECT_EQ(tds::parse_bound_kind(tds::to_string(k)), k);
  }
  EXPECT_THROW(tds::parse_bound_kind("hyperbolic"), tds::ParseError);
}

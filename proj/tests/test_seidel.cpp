#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tds/configurations.hpp"
#include "tds/seidel.hpp"

using tds::Rational;
using tds::SeidelMatrix;
using tds::SymMatrix;

namespace {

// Seidel sign from distances alone: +1 at the smaller squared distance.
void expect_sign_rule(const tds::EuclideanSeidel& es, const SymMatrix& dist_sq) {
  const std::size_t m = es.seidel.order();
  Rational small = -1;
  for (std::size_t i = 0; i < dist_sq.order(); ++i) {
    for (std::size_t j = i + 1; j < dist_sq.order(); ++j) {
      if (small < 0 || dist_sq(i, j) < small) small = dist_sq(i, j);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const bool near = dist_sq(es.permutation[i], es.permutation[j]) == small;
      EXPECT_EQ(es.seidel(i, j), near ? 1 : -1);
    }
  }
}

SymMatrix euclid_dist(const tds::PointConfiguration& cfg) {
  return tds::distance_sq_matrix(tds::PointConfiguration(tds::Flavor::euclidean, cfg.points(), cfg.dim()));
}

}  // namespace

TEST(SeidelMatrix, Validation) {
  EXPECT_THROW(SeidelMatrix(2, {0, 2, 2, 0}), tds::DomainError);
  EXPECT_THROW(SeidelMatrix(2, {1, 1, 1, 0}), tds::DomainError);
  EXPECT_THROW(SeidelMatrix(2, {0, 1, -1, 0}), tds::DomainError);
  EXPECT_NO_THROW(SeidelMatrix(2, {0, -1, -1, 0}));
  try {
    SeidelMatrix::from_sym(SymMatrix::from_rows({{0, Rational(1, 2)}, {Rational(1, 2), 0}}));
    FAIL();
  } catch (const tds::DomainError& e) {
    EXPECT_EQ(e.error(), "entry not +-1");
  }
}

TEST(SeidelMatrix, SquareIsExact) {
  const SeidelMatrix q = tds::triangular_seidel(5);
  const auto sq = q.square();
  const SymMatrix m = q.to_sym();
  for (std::size_t i = 0; i < q.order(); ++i) {
    for (std::size_t j = 0; j < q.order(); ++j) {
      long long s = 0;
      for (std::size_t k = 0; k < q.order(); ++k) s += q(i, k) * q(k, j);
      EXPECT_EQ(sq[i * q.order() + j], s);
    }
  }
  EXPECT_EQ(q.trace_of_square(), static_cast<long long>(q.order() * (q.order() - 1)));
  EXPECT_EQ(m.trace(), 0);
}

TEST(CayleyMenger, Square) {
  // Square with base point (0,1) last: entries c_in^2 + c_jn^2 - c_ij^2.
  const SymMatrix d = SymMatrix::from_rows({{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
  const SymMatrix m = tds::cayley_menger(d);
  EXPECT_EQ(m, SymMatrix::from_rows({{2, 2, 0}, {2, 4, 2}, {0, 2, 2}}));
  EXPECT_EQ(tds::exact_rank(m), 2u);
  EXPECT_THROW(tds::cayley_menger(SymMatrix::from_rows({{0, 1}, {1, 0}})), tds::DomainError);
}

TEST(BuildD, Blocks) {
  const tds::EuclideanSeidelParams p{6, 2, 2, 2};
  const SymMatrix d = tds::build_D(p);
  ASSERT_EQ(d.order(), 5u);
  EXPECT_EQ(d(0, 1), -1);  // delta^2 - 3
  EXPECT_EQ(d(0, 4), -3);  // -(1 + delta^2)
  EXPECT_EQ(d(3, 4), -5);  // 1 - 3 delta^2
  EXPECT_EQ(d(2, 2), -5);
  EXPECT_THROW(tds::build_D({6, 2, 1, 2}), tds::DomainError);
  EXPECT_THROW(tds::build_D({6, 2, 2, 6}), tds::DomainError);
}

TEST(BuildD, ClosedFormMatchesOracleOnRandomParameters) {
  std::mt19937 rng(31);
  const Rational deltas[] = {Rational(3, 2), Rational(5, 3), Rational(2), Rational(3), Rational(1, 2)};
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 3 + rng() % 38;
    const std::size_t h = 1 + rng() % (n - 2);
    const tds::EuclideanSeidelParams p{n, 2, deltas[rng() % 5], h};
    const auto closed = tds::spectrum_D_closed_form(p);
    const auto dense = oracle::jacobi_eigenvalues(tds::build_D(p));
    EXPECT_LT(oracle::max_relative_gap(closed.eigenvalues(), dense), 1e-8) << "n=" << n << " h=" << h;
    EXPECT_TRUE(closed.two_block);
    EXPECT_EQ(closed.zero_multiplicity, n - 3);
    EXPECT_LT(closed.a2, 0.0);
    EXPECT_GT(closed.a1, 0.0);
  }
}

TEST(BuildD, BoundaryBlocks) {
  for (std::size_t h : {std::size_t(0), std::size_t(7)}) {
    const tds::EuclideanSeidelParams p{8, 2, 2, h};
    const auto closed = tds::spectrum_D_closed_form(p);
    EXPECT_FALSE(closed.two_block);
    const auto dense = oracle::jacobi_eigenvalues(tds::build_D(p));
    EXPECT_LT(oracle::max_relative_gap(closed.eigenvalues(), dense), 1e-10);
    // Single block c J_7 with c = 1 - 3*2 or 2 - 3.
    EXPECT_NEAR(dense.front(), h == 0 ? -35.0 : -7.0, 1e-10);
  }
}

TEST(SeidelEuclidean, SimplexMidpointsInvariants) {
  for (std::size_t d = 3; d <= 10; ++d) {
    const auto cfg = tds::simplex_midpoints(d);
    const SymMatrix dist = tds::distance_sq_matrix(cfg);
    const auto es = tds::seidel_euclidean(dist);
    const std::size_t m = es.seidel.order();
    EXPECT_EQ(m, cfg.size() - 1);
    EXPECT_EQ(es.params.delta_sq, 2);
    EXPECT_EQ(es.params.d, d);
    EXPECT_EQ(es.scale, 2);
    EXPECT_EQ(es.seidel.trace(), 0);
    EXPECT_EQ(es.seidel.trace_of_square(), static_cast<long long>(m * (m - 1)));
    expect_sign_rule(es, dist);
    // The base point is adjacent (distance 1/2) to the 2(d-1) midpoints sharing a vertex.
    EXPECT_EQ(es.params.h, 2 * (d - 1));
  }
}

TEST(SeidelEuclidean, CrossPolytopes) {
  for (std::size_t d = 2; d <= 8; ++d) {
    const SymMatrix dist = euclid_dist(tds::cross_polytope(d));
    const auto es = tds::seidel_euclidean(dist, Rational(2));
    EXPECT_EQ(es.params.delta_sq, 2);
    EXPECT_EQ(es.params.d, d);
    EXPECT_EQ(es.seidel.trace(), 0);
    expect_sign_rule(es, dist);
    const auto report = tds::check_structure_euclidean(es.seidel, d, es.params.delta_sq);
    EXPECT_TRUE(report.passes) << d;
  }
}

TEST(SeidelEuclidean, Errors) {
  const SymMatrix dist = tds::distance_sq_matrix(tds::simplex_midpoints(4));
  EXPECT_NO_THROW(tds::seidel_euclidean(dist, Rational(1, 2)));
  try {
    tds::seidel_euclidean(dist, Rational(3));
    FAIL();
  } catch (const tds::DomainError& e) {
    EXPECT_EQ(e.error(), "delta mismatch");
  }
  const SymMatrix line = SymMatrix::from_rows({{0, 1, 9}, {1, 0, 4}, {9, 4, 0}});
  try {
    tds::seidel_euclidean(line);
    FAIL();
  } catch (const tds::DomainError& e) {
    EXPECT_EQ(e.error(), "not two-distance");
  }
}

TEST(SeidelSpherical, CrossPolytopeSpectrum) {
  // d = 4: spectrum {-3^3, 1^4, 5^1}.
  const SeidelMatrix s = tds::seidel_spherical(tds::gram(tds::cross_polytope(4)), -1, 0);
  const auto poly = oracle::char_poly(s.to_sym());
  EXPECT_EQ(oracle::root_multiplicity(poly, -3), 3u);
  EXPECT_EQ(oracle::root_multiplicity(poly, 1), 4u);
  EXPECT_EQ(oracle::root_multiplicity(poly, 5), 1u);
  for (std::size_t d = 2; d <= 8; ++d) {
    const SeidelMatrix sd = tds::seidel_spherical(tds::gram(tds::cross_polytope(d)), -1, 0);
    EXPECT_EQ(sd.trace(), 0);
    EXPECT_EQ(sd.trace_of_square(), static_cast<long long>(2 * d * (2 * d - 1)));
    const auto r = tds::check_structure_spherical(sd, d, -1, 0);
    EXPECT_TRUE(r.passes);
    EXPECT_NEAR(r.smallest_eig, -3.0, 1e-9);
    EXPECT_EQ(r.smallest_mult, d - 1);
  }
}

TEST(SeidelSpherical, SignRuleAndErrors) {
  const SymMatrix g = tds::midpoint_sphere_gram(7);
  const SeidelMatrix s = tds::seidel_spherical(g, Rational(-1, 3), Rational(1, 3));
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (std::size_t j = 0; j < g.order(); ++j) {
      if (i != j) EXPECT_EQ(s(i, j), g(i, j) == Rational(1, 3) ? 1 : -1);
    }
  }
  EXPECT_EQ(s, tds::triangular_seidel(8));
  try {
    tds::seidel_spherical(g, Rational(-1, 3), Rational(1, 4));
    FAIL();
  } catch (const tds::DomainError& e) {
    EXPECT_EQ(e.error(), "not a spherical two-distance Gram matrix");
  }
  EXPECT_THROW(tds::seidel_spherical(g, Rational(1, 3), Rational(-1, 3)), tds::DomainError);
}

TEST(Structure, MidpointSphereSets) {
  for (std::size_t d = 5; d <= 15; ++d) {
    const SymMatrix g = tds::midpoint_sphere_gram(d);
    const auto cert = tds::certify_gram(g);
    const SeidelMatrix s = tds::seidel_spherical(g, cert.values[0], cert.values[1]);
    const auto r = tds::check_structure_spherical(s, d, cert.values[0], cert.values[1], 1e-6);
    EXPECT_TRUE(r.passes) << d;
    EXPECT_GE(r.target_mult, r.required_mult);
  }
}

TEST(Structure, Vacuous) {
  const auto es = tds::seidel_euclidean(tds::distance_sq_matrix(tds::simplex_midpoints(3)));
  // n = 6, d = 3: n - d - 3 = 0.
  const auto r = tds::check_structure_euclidean(es.seidel, 3, 2);
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.passes);
}

TEST(Fixtures, SpectraByCharacteristicPolynomial) {
  struct Case {
    SeidelMatrix s;
    long lo;
    std::size_t lo_mult;
    long hi;
    std::size_t hi_mult;
  };
  for (const auto& c : {Case{tds::clebsch_seidel(), -3, 10, 5, 6}, Case{tds::triangular_seidel(8), -3, 21, 9, 7}}) {
    const auto poly = oracle::char_poly(c.s.to_sym());
    EXPECT_EQ(oracle::root_multiplicity(poly, c.lo), c.lo_mult);
    EXPECT_EQ(oracle::root_multiplicity(poly, c.hi), c.hi_mult);
  }
  // Paley q = 5: det(xI - S) = (x^2 - 5)^3 = x^6 - 15 x^4 + 75 x^2 - 125.
  const auto paley = oracle::char_poly(tds::paley_conference_seidel(5).to_sym());
  const std::vector<Rational> expected{1, 0, -15, 0, 75, 0, -125};
  EXPECT_EQ(paley, expected);
}

TEST(Fixtures, LatinSquareSpectrum) {
  const SeidelMatrix s = tds::latin_square_seidel(6);
  const auto eigs = oracle::jacobi_eigenvalues(s.to_sym());
  std::size_t low = 0, high = 0;
  for (double e : eigs) {
    low += std::abs(e + 5) < 1e-8;
    high += std::abs(e - 7) < 1e-8;
  }
  EXPECT_EQ(low, 21u);
  EXPECT_EQ(high, 15u);
  EXPECT_EQ(tds::exact_multiplicity(s.to_sym(), -5), 21u);
}

TEST(Fixtures, PaleyNeedsPrimeOneModFour) {
  EXPECT_THROW(tds::paley_conference_seidel(7), tds::DomainError);
  EXPECT_EQ(tds::paley_conference_seidel(13).order(), 14u);
}

TEST(Weyl, CayleyMengerAndD) {
  for (std::size_t d = 3; d <= 8; ++d) {
    const auto es = tds::seidel_euclidean(tds::distance_sq_matrix(tds::simplex_midpoints(d)));
    EXPECT_TRUE(tds::verify_weyl(Rational(2) * es.cayley_menger, es.d_matrix).all_hold);
  }
}

TEST(SeidelText, RoundTrip) {
  std::stringstream buffer;
  tds::write_seidel(buffer, tds::clebsch_seidel());
  EXPECT_EQ(tds::read_seidel(buffer), tds::clebsch_seidel());
  std::istringstream bad("2\n0 2\n2 0\n");
  EXPECT_THROW(tds::read_seidel(bad), tds::DomainError);
}

#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "tds/bounds.hpp"
#include "tds/configurations.hpp"
#include "tds/correspondence.hpp"
#include "tds/etf.hpp"
#include "tds/seidel.hpp"
#include "tds/tables.hpp"

using namespace tds;

namespace {

struct Check {
  std::string name;
  std::function<std::string()> run;  // empty string on success, else a reason
};

std::string expect(bool ok, const std::string& reason) { return ok ? std::string() : reason; }

// Both eigenvalues are integers, so the spectrum is decided by exact ranks.
std::string two_eigenvalues(const SeidelMatrix& s, long lo, std::size_t lo_mult, long hi, std::size_t hi_mult) {
  const SymMatrix m = s.to_sym();
  const std::size_t got_lo = exact_multiplicity(m, Rational(lo));
  const std::size_t got_hi = exact_multiplicity(m, Rational(hi));
  return expect(got_lo == lo_mult && got_hi == hi_mult,
                "multiplicities " + std::to_string(got_lo) + ", " + std::to_string(got_hi));
}

std::vector<Check> checks() {
  std::vector<Check> list;
  list.push_back({"conference matrix squares to 5I", [] {
                    const auto s = paley_conference_seidel(5);
                    const auto sq = s.square();
                    for (std::size_t i = 0; i < 6; ++i) {
                      for (std::size_t j = 0; j < 6; ++j) {
                        if (sq[i * 6 + j] != (i == j ? 5 : 0)) return std::string("entry mismatch");
                      }
                    }
                    return std::string();
                  }});
  list.push_back({"Clebsch Seidel spectrum {-3^10, 5^6}", [] { return two_eigenvalues(clebsch_seidel(), -3, 10, 5, 6); }});
  list.push_back({"T(8) Seidel spectrum {-3^21, 9^7}", [] { return two_eigenvalues(triangular_seidel(8), -3, 21, 9, 7); }});
  list.push_back(
      {"Latin square Seidel spectrum {-5^21, 7^15}", [] { return two_eigenvalues(latin_square_seidel(6), -5, 21, 7, 15); }});
  list.push_back({"T(8) two-eigenvalue test gives mu = 6", [] {
                    const auto r = etf_signature_test(triangular_seidel(8));
                    return expect(r.is_two_eigenvalue && r.mu == 6 && r.inferred_dim == 7, "unexpected ETF signature");
                  }});
  list.push_back({"simplex midpoints d=5: eigenvalue -3 with multiplicity >= 7", [] {
                    const auto es = seidel_euclidean(distance_sq_matrix(simplex_midpoints(5)));
                    const auto r = check_structure_euclidean(es.seidel, 5, es.params.delta_sq);
                    return expect(r.passes && std::abs(r.target_value + 3) < 1e-9 && r.target_mult >= 7,
                                  "multiplicity " + std::to_string(r.target_mult));
                  }});
  list.push_back({"cross polytope d=6: smallest eigenvalue -3 with multiplicity 5", [] {
                    const auto cfg = cross_polytope(6);
                    const auto s = seidel_spherical(gram(cfg), -1, 0);
                    const auto r = check_structure_spherical(s, 6, -1, 0);
                    return expect(r.passes && std::abs(r.smallest_eig + 3) < 1e-9 && r.smallest_mult == 5,
                                  "multiplicity " + std::to_string(r.smallest_mult));
                  }});
  list.push_back({"closed-form spectrum of D on 60 random parameter sets", [] {
                    std::mt19937 rng(7);
                    const Rational deltas[] = {Rational(3, 2), Rational(5, 3), Rational(2), Rational(3)};
                    for (int t = 0; t < 60; ++t) {
                      const std::size_t n = 3 + rng() % 30;
                      const std::size_t h = 1 + rng() % (n - 2);
                      const EuclideanSeidelParams p{n, 2, deltas[rng() % 4], h};
                      const auto dense = eig_sym(build_D(p));
                      const auto closed = spectrum_D_closed_form(p).eigenvalues();
                      const double scale = std::max(1.0, spectral_radius(dense));
                      for (std::size_t i = 0; i < dense.size(); ++i) {
                        if (std::abs(dense[i] - closed[i]) > 1e-8 * scale) return "n=" + std::to_string(n);
                      }
                    }
                    return std::string();
                  }});
  list.push_back({"Weyl inequalities on 30 random pairs", [] {
                    std::mt19937 rng(11);
                    std::uniform_int_distribution<int> entry(-9, 9);
                    for (int t = 0; t < 30; ++t) {
                      const std::size_t n = 2 + rng() % 9;
                      Eigen::MatrixXd a(n, n), b(n, n);
                      for (std::size_t i = 0; i < n; ++i) {
                        for (std::size_t j = i; j < n; ++j) {
                          a(i, j) = a(j, i) = entry(rng) / 3.0;
                          b(i, j) = b(j, i) = entry(rng) / 7.0;
                        }
                      }
                      if (!verify_weyl(a, b).all_hold) return "pair " + std::to_string(t);
                    }
                    return std::string();
                  }});
  list.push_back({"table cells (15,3)=43, (17,3)=51, table4 d=18 refined", [] {
                    const auto g = bound_euclidean(15, 5);
                    const auto m = bound_spherical_pos(17, 5);
                    const auto cat = EtfCatalog::bundled();
                    const auto g5 = refine_euclidean(18, 5, cat);
                    const auto m5 = refine_spherical(18, 5, cat, SphericalBranch::neg);
                    return expect(g.cardinality_bound == 43 && m.cardinality_bound == 51 && g5.cardinality_bound == 76 &&
                                      m5.cardinality_bound == 75,
                                  "cell mismatch");
                  }});
  list.push_back({"equiangular round trip on the cross polytope", [] {
                    const SymMatrix g = gram(cross_polytope(4));
                    const auto sys = spherical_to_equiangular(g, -1, 0);
                    return expect(sys.alpha_exact == Rational(1, 3) && equiangular_to_spherical(sys, -1) == g,
                                  "round trip failed");
                  }});
  list.push_back({"octahedron realizable in R^3, not in R^2", [] {
                    const auto dist = distance_sq_matrix(cross_polytope(3));
                    return expect(lisonek_realizable(dist, 3) && !lisonek_realizable(dist, 2), "wrong verdict");
                  }});
  return list;
}

}  // namespace

bool run_selftest(std::ostream& out, bool json) {
  bool all = true;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& check : checks()) {
    std::string failure;
    try {
      failure = check.run();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    all = all && failure.empty();
    if (json) {
      results.push_back({{"check", check.name}, {"pass", failure.empty()}, {"detail", failure}});
    } else {
      out << (failure.empty() ? "PASS " : "FAIL ") << check.name;
      if (!failure.empty()) out << " (" << failure << ')';
      out << '\n';
    }
  }
  if (json) out << nlohmann::ordered_json{{"pass", all}, {"checks", results}}.dump(2) << '\n';
  return all;
}

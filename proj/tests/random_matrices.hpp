#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "frac.hpp"
#include "tds/linalg.hpp"

namespace testing_util {

// Symmetric matrix with entries p/den, p uniform in [-range, range].
inline tds::SymMatrix random_symmetric(std::mt19937& rng, std::size_t n, int range = 9, long den = 4) {
  std::uniform_int_distribution<int> entry(-range, range);
  std::vector<tds::Rational> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      e[i * n + j] = e[j * n + i] = frac(entry(rng), den);
    }
  }
  return tds::SymMatrix(n, std::move(e));
}

// Gram matrix X X^T of n random integer vectors in Z^r: PSD of rank <= r.
inline tds::SymMatrix random_gram(std::mt19937& rng, std::size_t n, std::size_t r) {
  std::uniform_int_distribution<int> entry(-3, 3);
  std::vector<std::vector<long>> x(n, std::vector<long>(r));
  for (auto& row : x) {
    for (auto& v : row) v = entry(rng);
  }
  std::vector<tds::Rational> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long s = 0;
      for (std::size_t k = 0; k < r; ++k) s += x[i][k] * x[j][k];
      e[i * n + j] = s;
    }
  }
  return tds::SymMatrix(n, std::move(e));
}

}  // namespace testing_util

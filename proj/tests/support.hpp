#pragma once

#include <random>
#include <vector>

#include "poissonkit/exactlin/matrix.hpp"
#include "poissonkit/exactlin/subspace.hpp"

namespace pktest {

using poissonkit::exactlin::ExactSubspace;
using poissonkit::exactlin::Matrix;
using poissonkit::exactlin::Scalar;

inline Scalar random_scalar(std::mt19937_64& rng, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 3);
  return Scalar(num(rng), den(rng));
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int range = 3) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar(rng, range);
  return m;
}

/// Random rows, some of them deliberately dependent.
inline Matrix random_generators(std::mt19937_64& rng, std::size_t rows, std::size_t n) {
  Matrix g = random_matrix(rng, rows, n);
  std::uniform_int_distribution<int> coin(0, 3);
  for (std::size_t i = 1; i < rows; ++i)
    if (coin(rng) == 0)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = g(0, j) * Scalar(2) - g(i - 1, j);
  return g;
}

inline Matrix random_skew(std::mt19937_64& rng, std::size_t n, int range = 3) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = random_scalar(rng, range);
      m(j, i) = -m(i, j);
    }
  return m;
}

/// Standard symplectic matrix with pairs (q_i, p_i) in consecutive slots.
inline Matrix canonical_pi(std::size_t pairs) {
  Matrix m(2 * pairs, 2 * pairs);
  for (std::size_t k = 0; k < pairs; ++k) {
    m(2 * k, 2 * k + 1) = Scalar(1);
    m(2 * k + 1, 2 * k) = Scalar(-1);
  }
  return m;
}

inline ExactSubspace span_rows(std::size_t n, std::initializer_list<std::initializer_list<Scalar>> rows) {
  return ExactSubspace::span(n, Matrix(rows));
}

}  // namespace pktest

#pragma once

// Shared helpers for the unit tests: seeded generators and small oracles
// that do not go through the library code under test.

#include <cstdint>
#include <random>
#include <vector>

#include "froblen/ff.hpp"
#include "froblen/matrix.hpp"

namespace testing_support {

inline std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
  std::vector<bool> composite(bound, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < bound; j += i) composite[j] = true;
  }
  return out;
}

// Row m of Pascal's triangle mod p, for every m < rows.
inline std::vector<std::vector<std::uint32_t>> pascal_mod(std::uint64_t rows, std::uint32_t p) {
  std::vector<std::vector<std::uint32_t>> t(rows);
  for (std::uint64_t m = 0; m < rows; ++m) {
    t[m].assign(m + 1, 1 % p);
    for (std::uint64_t k = 1; k < m; ++k) t[m][k] = (t[m - 1][k - 1] + t[m - 1][k]) % p;
  }
  return t;
}

inline std::uint64_t exact_binom(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (m - k + i) / i;
  return r;
}

template <class D>
froblen::Matrix<typename D::value_type> random_matrix(const D& dom, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, dom.size() - 1);
  froblen::Matrix<typename D::value_type> a(n, n, dom.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = dom.element(pick(rng));
  return a;
}

template <class D>
froblen::Matrix<typename D::value_type> random_invertible(const D& dom, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    auto a = random_matrix(dom, n, rng);
    if (froblen::rank(a) == n) return a;
  }
}

template <class D>
froblen::Vec<typename D::value_type> random_vector(const D& dom, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, dom.size() - 1);
  froblen::Vec<typename D::value_type> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(dom.element(pick(rng)));
  return v;
}

}  // namespace testing_support

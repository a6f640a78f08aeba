#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "froblen/errors.hpp"
#include "froblen/lengths.hpp"
#include "support.hpp"

using namespace froblen;
using testing_support::primes_below;

namespace {

// Sum over ordered j-tuples, deduplicated by sorting, of (sum of degrees + 1)^n - 1.
std::uint64_t brute_bernstein(std::uint64_t n, const std::vector<std::uint64_t>& deg, std::uint64_t j) {
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> idx(j, 0);
  std::uint64_t total = 0;
  for (;;) {
    auto key = idx;
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) {
      std::uint64_t s = 1, v = 1;
      for (auto i : key) s += deg[i];
      for (std::uint64_t k = 0; k < n; ++k) v *= s;
      total += v;
    }
    std::size_t pos = 0;
    while (pos < j && ++idx[pos] == deg.size()) idx[pos++] = 0;
    if (pos == j) break;
  }
  return total - 1;
}

SparsePoly fermat_cy(unsigned n, std::uint64_t p) {
  std::string text;
  for (unsigned i = 0; i < n; ++i) {
    if (i) text += "+";
    text += std::string(1, static_cast<char>('a' + i)) + "^" + std::to_string(n);
  }
  return SparsePoly::parse(text, p);
}

}  // namespace

TEST_CASE("hypersurface_bound") {
  CHECK(hypersurface_bound(3, 7) == 511);
  CHECK(hypersurface_bound(1, 1) == 1);
  CHECK(hypersurface_bound(2, 1) == 3);
  CHECK_THROWS_AS(hypersurface_bound(2, 0), ArgumentError);
  CHECK_THROWS_AS(hypersurface_bound(0, 3), ArgumentError);
  CHECK(hypersurface_bound(63, 1) == (std::uint64_t{1} << 63) - 1);
  CHECK_THROWS_AS(hypersurface_bound(64, 2), ResourceError);
}

TEST_CASE("bernstein_bound: examples") {
  CHECK(bernstein_bound(3, {7}, 1) == 511);
  CHECK(bernstein_bound(2, {1, 1}, 1) == 7);
  CHECK(bernstein_bound(2, {1, 1}, 2) == 26);
  CHECK_THROWS_AS(bernstein_bound(2, {1, 1}, 3), ArgumentError);
  CHECK_THROWS_AS(bernstein_bound(2, {1, 1}, 0), ArgumentError);
  CHECK_THROWS_AS(bernstein_bound(40, {1000, 1000}, 2), ResourceError);
}

TEST_CASE("bernstein_bound matches brute-force multiset enumeration") {
  for (std::uint64_t n = 1; n <= 4; ++n)
    for (std::uint64_t d1 = 1; d1 <= 4; ++d1)
      for (std::uint64_t d2 = 1; d2 <= 3; ++d2) {
        const std::vector<std::uint64_t> deg{d1, d2, d1 + d2};
        for (std::uint64_t j = 1; j <= 3; ++j) CHECK(bernstein_bound(n, deg, j) == brute_bernstein(n, deg, j));
        CHECK(bernstein_bound(n, {d1}, 1) == hypersurface_bound(n, d1));
      }
}

TEST_CASE("d_length_isolated and thm47_upper") {
  CHECK(d_length_isolated(6, 1) == 7);
  CHECK(d_length_isolated(0, 1) == 1);
  CHECK(d_length_isolated(15, 1) == 16);
  CHECK(thm47_upper(1, {}, 6) == 7);
  CHECK(thm47_upper(1, {6, 6}, 0) == 13);
  CHECK(thm47_upper(2, {1}, 3) == 6);
}

TEST_CASE("fermat7_lengths: examples") {
  struct Row {
    std::uint64_t p, l_f, l_finf, l_d;
  };
  for (const Row& r : {Row{29, 16, 16, 16}, Row{67, 7, 7, 7}, Row{11, 5, 7, 7}, Row{13, 1, 1, 1}}) {
    const auto rep = fermat7_lengths(r.p);
    CHECK(*rep.l_F == r.l_f);
    CHECK(*rep.l_Finf == r.l_finf);
    CHECK(*rep.l_D == r.l_d);
    CHECK(*rep.table_match);
    CHECK(rep.n == 7);
    CHECK(rep.d == 2);
    CHECK(rep.c == 1);
    CHECK(!rep.evidence.empty());
  }
  CHECK_THROWS_AS(fermat7_lengths(7), ArgumentError);
}

TEST_CASE("fermat7_lengths over every prime below 300") {
  for (auto p : primes_below(300)) {
    if (p == 7) continue;
    const auto rep = fermat7_lengths(p);
    const auto want = fermat7_expected(p);
    CHECK_MESSAGE(*rep.table_match, "p = " << p);
    CHECK(*rep.l_F == want.l_F);
    CHECK(*rep.l_Finf == want.l_Finf);
    CHECK(*rep.l_D == want.l_D);
    CHECK(rep.chain_holds());
    CHECK(*rep.l_D == *rep.stable_dim + 1);
    if (p % 3 == 1 || *rep.stable_dim == 0 || *rep.stable_dim == 15) CHECK(*rep.l_F == *rep.l_Finf);
    for (const auto& [e, v] : rep.l_Fe) CHECK(v <= *rep.l_Finf);
  }
}

TEST_CASE("prop75_lengths") {
  for (std::uint64_t p : {11u, 53u}) {
    const auto rep = prop75_lengths(p, 300, 7);
    REQUIRE(rep.l_F.has_value());
    CHECK(*rep.l_F == 3);
    CHECK(*rep.l_Finf == 7);
    CHECK(*rep.l_D == 7);
    CHECK(rep.l_Fe.at(3) == 7);
    CHECK(rep.chain_holds());
    bool labelled = false;
    for (const auto& e : rep.evidence)
      labelled = labelled || e.result == "certified under dominance verification + randomized sampling";
    CHECK(labelled);
  }
  CHECK_THROWS_AS(prop75_lengths(13, 10), ArgumentError);
  CHECK_THROWS_AS(prop75_lengths(11, 0), ArgumentError);
}

TEST_CASE("chain_holds detects a broken chain") {
  LengthReport r;
  r.l_F = 3;
  r.l_Finf = 7;
  r.l_D = 7;
  CHECK(r.chain_holds());
  r.l_Fe[2] = 8;
  CHECK_FALSE(r.chain_holds());
  r.l_Fe.clear();
  r.l_D = 6;
  CHECK_FALSE(r.chain_holds());
  r.l_Finf.reset();
  CHECK(r.chain_holds());
}

TEST_CASE("calabi_yau_d_length") {
  CHECK(calabi_yau_d_length(SparsePoly::parse("x^3+y^3+z^3", 7), 7) == 2);
  CHECK(calabi_yau_d_length(SparsePoly::parse("x^3+y^3+z^3", 5), 5) == 1);
  CHECK(calabi_yau_d_length(SparsePoly::parse("x^4+y^4+z^4+w^4", 5), 5) == 2);
  CHECK_THROWS_AS(calabi_yau_d_length(SparsePoly::parse("x^4+y^4+z^4", 5), 5), ArgumentError);
  for (unsigned n : {3u, 4u, 5u}) {
    for (auto p : primes_below(100)) {
      if (n % p == 0) continue;
      CHECK(calabi_yau_d_length(fermat_cy(n, p), p) == (p % n == 1 ? 2u : 1u));
    }
  }
}

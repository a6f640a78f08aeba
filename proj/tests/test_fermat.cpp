#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "froblen/errors.hpp"
#include "froblen/fermat.hpp"
#include "support.hpp"

using namespace froblen;
using testing_support::exact_binom;
using testing_support::primes_below;

namespace {

// (x0^c / prod x_i^a_i)^p with x0^n = -(x_1^n + ... + x_d^n), expanded over
// every composition j of N = floor(cp/n); a term survives when every
// denominator exponent a_i p - n j_i stays positive.
std::map<std::vector<unsigned>, std::uint64_t> expand_power(const InverseMonomial& m, unsigned n,
                                                            std::uint64_t p) {
  const std::uint64_t big_n = m.c * p / n;
  const std::size_t d = m.a.size();
  std::map<std::vector<unsigned>, std::uint64_t> out;
  std::vector<std::uint64_t> j(d, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
    if (i + 1 == d) {
      j[i] = left;
      std::vector<unsigned> denom;
      for (std::size_t t = 0; t < d; ++t) {
        const std::int64_t e = static_cast<std::int64_t>(m.a[t] * p) - static_cast<std::int64_t>(n * j[t]);
        if (e < 1) return;
        denom.push_back(static_cast<unsigned>(e));
      }
      // multinomial(N; j) as a product of binomials mod p.
      std::uint64_t coeff = 1, total = 0;
      for (auto k : j) {
        total += k;
        coeff = coeff * (binom_mod_p(total, k, p).value()) % p;
      }
      if (big_n % 2 == 1) coeff = (p - coeff) % p;
      out[denom] = (out[denom] + coeff) % p;
      return;
    }
    for (std::uint64_t k = 0; k <= left; ++k) {
      j[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, big_n);
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::vector<unsigned> exponent_map(const std::vector<unsigned>& a, unsigned r, unsigned n) {
  std::vector<unsigned> out;
  for (auto x : a) out.push_back(x * r % n);
  return out;
}

InverseMonomial im(std::vector<unsigned> a) {
  return InverseMonomial{std::accumulate(a.begin(), a.end(), 0u), std::move(a)};
}

}  // namespace

TEST_CASE("FermatContext preconditions") {
  CHECK_THROWS_AS(FermatContext(6, 2, 3), ArgumentError);
  CHECK_THROWS_AS(FermatContext(7, 2, 7), ArgumentError);
  CHECK_THROWS_AS(FermatContext(1, 2, 5), ArgumentError);
  CHECK_THROWS_AS(FermatContext(7, 2, 9), ArgumentError);
  const FermatContext ctx(7, 2, 11);
  CHECK(ctx.r() == 4);
  const FermatContext curve(5, 1, 3);
  CHECK(basis(curve).size() == 4);
  CHECK_THROWS_AS(frobenius_is_injective(curve), ArgumentError);
  CHECK_THROWS_AS(frobenius_is_nilpotent(curve), ArgumentError);
  try {
    FermatContext(6, 2, 3);
  } catch (const ArgumentError& e) {
    CHECK(std::string(e.what()).find("p divides n") != std::string::npos);
  }
}

TEST_CASE("basis: examples and counts") {
  CHECK(basis(FermatContext(7, 2, 11)).size() == 15);
  const auto b3 = basis(FermatContext(3, 2, 5));
  REQUIRE(b3.size() == 1);
  CHECK(b3[0].c == 2);
  CHECK(b3[0].a == std::vector<unsigned>{1, 1});
  CHECK(to_string(b3[0]) == "z^2/(x*y)");
  CHECK(basis(FermatContext(5, 2, 3)).size() == 6);
  for (unsigned n = 2; n <= 12; ++n) {
    const std::uint64_t p = n % 13 == 0 ? 17 : 13;
    for (unsigned d = 1; d < n; ++d) {
      const auto b = basis(FermatContext(n, d, p));
      CHECK(b.size() == exact_binom(n - 1, d));
      CHECK(std::is_sorted(b.begin(), b.end(), [](const auto& x, const auto& y) { return x.a < y.a; }));
      for (const auto& m : b) {
        CHECK(m.c == std::accumulate(m.a.begin(), m.a.end(), 0u));
        CHECK(m.c <= n - 1);
      }
    }
  }
}

TEST_CASE("to_string naming") {
  CHECK(to_string(im({2, 1})) == "z^3/(x^2*y)");
  CHECK(to_string(im({1, 4})) == "z^5/(x*y^4)");
  CHECK(to_string(im({1, 1, 2})) == "x0^4/(x1*x2*x3^2)");
  CHECK(to_string(WeightedMonomial{5, 1, 2, 1}) == "z^5/(t*x^2*y)");
}

TEST_CASE("frobenius_image: examples") {
  const FermatContext ctx(7, 2, 11);
  const auto img = frobenius_image(im({2, 1}), ctx);
  REQUIRE(img.has_value());
  CHECK(img->coeff.value() == 4);
  CHECK(img->image == im({1, 4}));
  CHECK(to_string(img->image) == "z^5/(x*y^4)");
  CHECK_FALSE(frobenius_image(im({1, 5}), ctx).has_value());
  CHECK_THROWS_AS(frobenius_image(im({3, 4}), ctx), ArgumentError);
  CHECK_THROWS_AS(frobenius_image(InverseMonomial{2, {2, 0}}, ctx), ArgumentError);

  const FermatContext one(7, 2, 29);
  for (const auto& b : basis(one)) {
    const auto x = frobenius_image(b, one);
    REQUIRE(x.has_value());
    CHECK(x->image == b);
    CHECK(!x->coeff.is_zero());
  }
}

TEST_CASE("frobenius_image agrees with a full multinomial expansion") {
  for (unsigned n = 2; n <= 9; ++n) {
    for (unsigned d : {2u, 3u}) {
      if (d >= n) continue;
      for (auto p : primes_below(50)) {
        if (n % p == 0) continue;
        const FermatContext ctx(n, d, p);
        for (const auto& b : basis(ctx)) {
          const auto want = expand_power(b, n, p);
          const auto got = frobenius_image(b, ctx);
          REQUIRE(want.size() <= 1);
          CHECK(got.has_value() == !want.empty());
          if (got && !want.empty()) {
            CHECK(got->image.a == want.begin()->first);
            CHECK(got->coeff.value() == want.begin()->second);
            CHECK(got->image.a == exponent_map(b.a, ctx.r(), n));
            CHECK(got->image.c == b.c * ctx.r() % n);
          }
        }
      }
    }
  }
}

TEST_CASE("stable_dim_by_count: examples") {
  CHECK(stable_dim_by_count(FermatContext(7, 2, 11)) == 6);
  CHECK(stable_dim_by_count(FermatContext(7, 2, 29)) == 15);
  CHECK(stable_dim_by_count(FermatContext(7, 2, 17)) == 0);
  CHECK(stable_dim_by_count(FermatContext(5, 2, 11)) == 6);
}

TEST_CASE("counting formula equals the rank-stabilised matrix computation") {
  for (unsigned n = 2; n <= 9; ++n) {
    for (unsigned d : {2u, 3u}) {
      if (d >= n) continue;
      for (auto p : primes_below(50)) {
        if (n % p == 0) continue;
        const FermatContext ctx(n, d, p);
        CHECK_MESSAGE(stable_dim_by_count(ctx) == stable_subspace(full_matrix(ctx)).dim(),
                      "n=" << n << " d=" << d << " p=" << p);
      }
    }
  }
}

TEST_CASE("full_matrix is monomial and follows the exponent map") {
  for (unsigned n : {5u, 7u, 8u, 9u}) {
    for (auto p : primes_below(40)) {
      if (n % p == 0) continue;
      const FermatContext ctx(n, 2, p);
      const auto b = basis(ctx);
      const auto m = full_matrix(ctx);
      CHECK(m.twist() == 1);
      REQUIRE(m.dim() == b.size());
      for (std::size_t j = 0; j < b.size(); ++j) {
        int nonzero = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
          if (m.matrix()(i, j).is_zero()) continue;
          ++nonzero;
          CHECK(b[i].a == exponent_map(b[j].a, ctx.r(), n));
        }
        CHECK(nonzero <= 1);
      }
    }
  }
  CHECK_THROWS_AS(full_matrix(FermatContext(12, 5, 7)), ResourceError);
}

TEST_CASE("full_matrix at n = 7, p = 11: the cycle block has every nonzero entry 4") {
  const FermatContext ctx(7, 2, 11);
  const auto b = basis(ctx);
  const auto m = full_matrix(ctx);
  std::vector<std::size_t> on_cycle;
  for (const auto& o : cycles(ctx))
    for (const auto& x : o.members) on_cycle.push_back(std::find(b.begin(), b.end(), x) - b.begin());
  REQUIRE(on_cycle.size() == 6);
  int nonzero = 0;
  for (auto i : on_cycle)
    for (auto j : on_cycle)
      if (!m.matrix()(i, j).is_zero()) {
        ++nonzero;
        CHECK(m.matrix()(i, j).value() == 4);
      }
  CHECK(nonzero == 6);
}

TEST_CASE("injective iff p = 1 mod n; p^h = -1 mod n forces nilpotence") {
  for (unsigned n = 2; n <= 9; ++n) {
    for (unsigned d : {2u, 3u}) {
      if (d >= n) continue;
      for (auto p : primes_below(50)) {
        if (n % p == 0) continue;
        const FermatContext ctx(n, d, p);
        CHECK(frobenius_is_injective(ctx) == (p % n == 1));
        bool minus_one = false;
        std::uint64_t x = 1;
        for (std::uint64_t h = 1; h <= euler_phi(n); ++h) {
          x = x * p % n;
          minus_one = minus_one || x == n - 1;
        }
        if (minus_one) CHECK(frobenius_is_nilpotent(ctx));
        CHECK(frobenius_is_nilpotent(ctx) == is_nilpotent(full_matrix(ctx)));
      }
    }
  }
  CHECK(frobenius_is_nilpotent(FermatContext(7, 2, 13)));
  CHECK(full_matrix(FermatContext(3, 2, 7)).matrix().is_diagonal());
  CHECK(full_matrix(FermatContext(7, 3, 29)).matrix().is_diagonal());
}

TEST_CASE("n = 11, d = 2: stable part is 0 unless p = 1 mod 11, then 45") {
  for (auto p : primes_below(200)) {
    if (p == 11) continue;
    const auto dim = stable_dim_by_count(FermatContext(11, 2, p));
    CHECK(dim == (p % 11 == 1 ? 45u : 0u));
  }
  CHECK(stable_dim_by_count(FermatContext(11, 2, 23)) == 45);
}

TEST_CASE("cycles: examples") {
  for (std::uint64_t p : {11u, 53u}) {  // p = 4 mod 7
    const FermatContext ctx(7, 2, p);
    const auto cyc = cycles(ctx);
    REQUIRE(cyc.size() == 2);
    CHECK(cyc[0].members == std::vector<InverseMonomial>{im({2, 1}), im({1, 4}), im({4, 2})});
    CHECK(to_string(cyc[0].members[2]) == "z^6/(x^4*y^2)");
    CHECK(cyc[1].members.size() == 3);
  }
  for (std::uint64_t p : {2u, 23u}) {  // p = 2 mod 7
    const FermatContext ctx(7, 2, p);
    const auto cyc = cycles(ctx);
    REQUIRE(cyc.size() == 2);
    CHECK(cyc[0].members == std::vector<InverseMonomial>{im({2, 1}), im({4, 2}), im({1, 4})});
  }
  const FermatContext one(7, 2, 29);
  const auto fixed = cycles(one);
  CHECK(fixed.size() == 15);
  for (const auto& o : fixed) CHECK(o.members.size() == 1);
  CHECK(cycles(FermatContext(7, 2, 13)).empty());
}

TEST_CASE("orbit invariants") {
  for (unsigned n = 3; n <= 9; ++n) {
    for (unsigned d : {2u, 3u}) {
      if (d >= n) continue;
      for (auto p : primes_below(50)) {
        if (n % p == 0) continue;
        const FermatContext ctx(n, d, p);
        const auto cyc = cycles(ctx);
        std::size_t total = 0;
        std::set<InverseMonomial> seen;
        const auto ord = multiplicative_order(ctx.r(), n);
        for (const auto& o : cyc) {
          const std::size_t len = o.members.size();
          total += len;
          CHECK(ord % len == 0);
          REQUIRE(o.coefficients.size() == len);
          for (std::size_t i = 0; i < len; ++i) {
            CHECK(seen.insert(o.members[i]).second);
            CHECK(!o.coefficients[i].is_zero());
            CHECK(o.members[(i + 1) % len].a == exponent_map(o.members[i].a, ctx.r(), n));
            const auto img = frobenius_image(o.members[i], ctx);
            REQUIRE(img.has_value());
            CHECK(img->coeff == o.coefficients[i]);
          }
          const auto cm = cycle_matrix(o, ctx);
          for (std::size_t i = 0; i < len; ++i) CHECK(cm.matrix()((i + 1) % len, i) == o.coefficients[i]);
        }
        CHECK(total == stable_dim_by_count(ctx));
      }
    }
  }
}

TEST_CASE("weighted family: degree-0 basis by enumeration") {
  // z^i / (t^a x^b y^c) with i < 7 (z^7 reduces) and a, b, c >= 1.
  std::set<WeightedMonomial> want;
  for (unsigned z = 0; z < 7; ++z)
    for (unsigned t = 1; t < 4; ++t)
      for (unsigned x = 1; x < 20; ++x)
        for (unsigned y = 1; y < 20; ++y) {
          const WeightedMonomial w{z, t, x, y};
          if (w.degree() == 0) want.insert(w);
        }
  const auto got = weighted75_deg0_basis(11);
  CHECK(got.size() == 6);
  CHECK(std::set<WeightedMonomial>(got.begin(), got.end()) == want);
  CHECK_THROWS_AS(weighted75_deg0_basis(13), ArgumentError);
}

TEST_CASE("weighted family: Frobenius images and nilpotence") {
  for (auto p : primes_below(400)) {
    if (p % 7 != 4) continue;
    for (const auto& w : weighted75_deg0_basis(p)) {
      // Independent expansion of (-t (x^7 + y^7))^N.
      const std::uint64_t n = w.z * p / 7;
      std::map<WeightedMonomial, std::uint64_t> want;
      for (std::uint64_t i = 0; i <= n; ++i) {
        const std::int64_t te = static_cast<std::int64_t>(w.t * p) - static_cast<std::int64_t>(n);
        const std::int64_t xe = static_cast<std::int64_t>(w.x * p) - static_cast<std::int64_t>(7 * i);
        const std::int64_t ye = static_cast<std::int64_t>(w.y * p) - static_cast<std::int64_t>(7 * (n - i));
        if (te < 1 || xe < 1 || ye < 1) continue;
        std::uint64_t c = binom_mod_p(n, i, p).value();
        if (n % 2 == 1) c = (p - c) % p;
        if (c == 0) continue;
        want[WeightedMonomial{static_cast<unsigned>(w.z * p % 7), static_cast<unsigned>(te),
                              static_cast<unsigned>(xe), static_cast<unsigned>(ye)}] = c;
      }
      const auto got = weighted75_frobenius_image(w, p);
      CHECK(got.size() == want.size());
      for (const auto& [m, c] : got) {
        REQUIRE(want.count(m) == 1);
        CHECK(c.value() == want[m]);
        CHECK(m.degree() == 0);
      }
      CHECK(weighted75_is_nilpotent(w, p));
    }
    CHECK(weighted75_frobenius_image(WeightedMonomial{6, 1, 1, 4}, p).empty());
  }
}

TEST_CASE("localized75_matrix: entries, third iterate, and t = 1") {
  const auto m = localized75_matrix(11);
  const PolyRing r(11);
  const PrimeField k(11);
  CHECK(m.matrix()(0, 2) == r.t_power(9).scaled(k(4)));
  CHECK(m.matrix()(1, 0) == r.t_power(4).scaled(k(4)));
  CHECK(m.matrix()(2, 1) == r.t_power(7).scaled(k(4)));
  CHECK(m.matrix()(0, 0).is_zero());
  CHECK(m.twist() == 1);
  CHECK_THROWS_AS(localized75_matrix(13), ArgumentError);

  for (auto p : primes_below(200)) {
    if (p % 7 != 4) continue;
    const auto lm = localized75_matrix(p);
    const auto b3 = iterate(lm, 3).matrix;
    CHECK(b3.is_diagonal());
    const PrimeField f(p);
    const auto ctx = FermatContext(7, 2, p);
    const auto cm = cycle_matrix(cycles(ctx)[0], ctx);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(!b3(i, i).is_zero());
      for (std::size_t j = 0; j < 3; ++j) {
        // t = 1 gives the unweighted cycle matrix.
        CHECK(lm.matrix()(i, j).evaluate(f.one()) == cm.matrix()(i, j));
      }
    }
    // Normalised version differs by the common scalar.
    const auto nm = localized75_normalized(p);
    const auto scalar = binom_mod_p(3 * (p / 7) + 1, p / 7, p);
    CHECK(nm.matrix()(1, 0).scaled(scalar) == lm.matrix()(1, 0));
  }
}

TEST_CASE("third iterate at p = 11 has the expected diagonal") {
  const std::uint64_t p = 11;
  const auto b3 = iterate(localized75_matrix(p), 3).matrix;
  const PrimeField k(p);
  const auto s3 = k(4).pow(3);
  const PolyRing r(p);
  // B_3 = A A^[p] A^[p^2]; position (i,i) collects one entry of each cyclic position.
  CHECK(b3(0, 0) == r.t_power(9 + 7 * p + 4 * p * p).scaled(s3));
  CHECK(b3(1, 1) == r.t_power(4 + 9 * p + 7 * p * p).scaled(s3));
  CHECK(b3(2, 2) == r.t_power(7 + 4 * p + 9 * p * p).scaled(s3));
}

#include "froblen/fermat.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "froblen/errors.hpp"

namespace froblen {

namespace {

void append_power(std::ostringstream& os, const std::string& var, unsigned e) {
  os << var;
  if (e != 1) os << "^" << e;
}

}  // namespace

std::string to_string(const InverseMonomial& m) {
  std::ostringstream os;
  const bool surface = m.a.size() == 2;
  append_power(os, surface ? "z" : "x0", m.c);
  os << "/(";
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    if (i > 0) os << "*";
    append_power(os, surface ? std::string(1, "xy"[i]) : "x" + std::to_string(i + 1), m.a[i]);
  }
  os << ")";
  return os.str();
}

FermatContext::FermatContext(unsigned n, unsigned d, std::uint64_t p)
    : n_(n), d_(d), field_(p), r_(static_cast<unsigned>(p % (n == 0 ? 1 : n))) {
  if (n_ < 2) throw ArgumentError("Fermat degree n must be at least 2, got " + std::to_string(n));
  if (d_ < 1) throw ArgumentError("d must be at least 1");
  if (n_ % p == 0) {
    throw ArgumentError("p divides n (p = " + std::to_string(p) + ", n = " + std::to_string(n) +
                        "); the Frobenius formulas require p not dividing n");
  }
}

void FermatContext::require_surface_or_higher(const char* what) const {
  if (d_ < 2) throw ArgumentError(std::string(what) + " requires d >= 2, got d = " + std::to_string(d_));
}

namespace {

// Tuples a_i >= 1 with sum <= max_sum, in lexicographic order.
std::vector<std::vector<unsigned>> tuples_lex(unsigned d, unsigned max_sum) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> a;
  auto rec = [&](auto&& self, unsigned remaining) -> void {
    if (a.size() == d) {
      out.push_back(a);
      return;
    }
    const unsigned slots_after = d - static_cast<unsigned>(a.size()) - 1;
    for (unsigned v = 1; v + slots_after <= remaining; ++v) {
      a.push_back(v);
      self(self, remaining - v);
      a.pop_back();
    }
  };
  rec(rec, max_sum);
  return out;
}

bool survives_all(const std::vector<unsigned>& a, unsigned n, unsigned r, std::uint64_t phi) {
  std::uint64_t rj = 1;
  for (std::uint64_t j = 0; j < phi; ++j) {
    std::uint64_t s = 0;
    for (unsigned x : a) s += rj * x % n;
    if (s >= n) return false;
    rj = rj * r % n;
  }
  return true;
}

void check_element(const InverseMonomial& m, const FermatContext& ctx) {
  if (m.a.size() != ctx.d()) {
    throw ArgumentError("inverse monomial has " + std::to_string(m.a.size()) +
                        " denominator exponents, expected d = " + std::to_string(ctx.d()));
  }
  unsigned sum = 0;
  for (unsigned x : m.a) {
    if (x == 0) throw ArgumentError("denominator exponents must be positive: " + to_string(m));
    sum += x;
  }
  if (sum != m.c || m.c > ctx.n() - 1) {
    throw ArgumentError(to_string(m) + " is not a degree-0 basis element for n = " +
                        std::to_string(ctx.n()));
  }
}

}  // namespace

std::vector<InverseMonomial> basis(const FermatContext& ctx) {
  std::vector<InverseMonomial> out;
  for (auto& a : tuples_lex(ctx.d(), ctx.n() - 1)) {
    const unsigned c = std::accumulate(a.begin(), a.end(), 0u);
    out.push_back({c, std::move(a)});
  }
  return out;
}

std::optional<FrobeniusTerm> frobenius_image(const InverseMonomial& elem, const FermatContext& ctx) {
  check_element(elem, ctx);
  const unsigned n = ctx.n();
  const std::uint64_t p = ctx.p();
  unsigned residue_sum = 0;
  for (unsigned x : elem.a) residue_sum += x * ctx.r() % n;
  if (residue_sum >= n) return std::nullopt;

  InverseMonomial image{elem.c * ctx.r() % n, {}};
  std::vector<std::uint64_t> parts;
  for (unsigned x : elem.a) {
    image.a.push_back(x * ctx.r() % n);
    parts.push_back(x * p / n);
  }
  const std::uint64_t top = elem.c * p / n;
  FieldElem coeff = multinomial_mod_p(top, parts, p);
  if (top % 2 == 1) coeff = -coeff;
  return FrobeniusTerm{coeff, std::move(image)};
}

std::uint64_t stable_dim_by_count(const FermatContext& ctx) {
  const std::uint64_t phi = euler_phi(ctx.n());
  std::uint64_t count = 0;
  for (const auto& a : tuples_lex(ctx.d(), ctx.n() - 1)) {
    if (survives_all(a, ctx.n(), ctx.r(), phi)) ++count;
  }
  return count;
}

TwistedMatrix<PrimeField> full_matrix(const FermatContext& ctx, std::size_t cap) {
  const auto elems = basis(ctx);
  if (elems.empty()) throw ArgumentError("the degree-0 piece is zero (d >= n)");
  if (elems.size() > cap) {
    throw ResourceError("basis has " + std::to_string(elems.size()) + " elements, cap is " +
                        std::to_string(cap));
  }
  std::map<InverseMonomial, std::size_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  Matrix<FieldElem> a(elems.size(), elems.size(), ctx.field().zero());
  for (std::size_t j = 0; j < elems.size(); ++j) {
    if (const auto term = frobenius_image(elems[j], ctx)) a(index.at(term->image), j) = term->coeff;
  }
  return TwistedMatrix<PrimeField>(ctx.field(), std::move(a), 1);
}

bool frobenius_is_injective(const FermatContext& ctx) {
  ctx.require_surface_or_higher("frobenius_is_injective");
  const auto m = full_matrix(ctx);
  for (std::size_t j = 0; j < m.dim(); ++j) {
    if (is_zero_vector(m.matrix().column(j))) return false;
  }
  return true;
}

bool frobenius_is_nilpotent(const FermatContext& ctx) {
  ctx.require_surface_or_higher("frobenius_is_nilpotent");
  return is_nilpotent(full_matrix(ctx));
}

std::vector<FrobeniusOrbit> cycles(const FermatContext& ctx) {
  const std::uint64_t phi = euler_phi(ctx.n());
  auto start_before = [](const InverseMonomial& x, const InverseMonomial& y) {
    if (x.c != y.c) return x.c < y.c;
    return x.a > y.a;
  };
  std::vector<InverseMonomial> survivors;
  for (const auto& m : basis(ctx)) {
    if (survives_all(m.a, ctx.n(), ctx.r(), phi)) survivors.push_back(m);
  }
  std::sort(survivors.begin(), survivors.end(), start_before);

  std::vector<FrobeniusOrbit> out;
  std::set<InverseMonomial> placed;
  for (const auto& start : survivors) {
    if (placed.count(start)) continue;
    FrobeniusOrbit orbit;
    InverseMonomial cur = start;
    do {
      const auto term = frobenius_image(cur, ctx);
      if (!term) throw std::logic_error("surviving element " + to_string(cur) + " maps to zero");
      orbit.members.push_back(cur);
      orbit.coefficients.push_back(term->coeff);
      placed.insert(cur);
      cur = term->image;
    } while (cur != start);
    out.push_back(std::move(orbit));
  }
  return out;
}

TwistedMatrix<PrimeField> cycle_matrix(const FrobeniusOrbit& orbit, const FermatContext& ctx) {
  const std::size_t len = orbit.members.size();
  if (len == 0 || orbit.coefficients.size() != len) throw ArgumentError("malformed orbit");
  Matrix<FieldElem> a(len, len, ctx.field().zero());
  for (std::size_t i = 0; i < len; ++i) a((i + 1) % len, i) = orbit.coefficients[i];
  return TwistedMatrix<PrimeField>(ctx.field(), std::move(a), 1);
}

// --- weighted family -------------------------------------------------------------

namespace {

std::uint64_t require_7k4(std::uint64_t p) {
  if (!is_prime(p) || p % 7 != 4) {
    throw ArgumentError("p must be a prime congruent to 4 mod 7, got " + std::to_string(p));
  }
  return (p - 4) / 7;
}

void accumulate(WeightedCombination& v, const WeightedMonomial& m, FieldElem c) {
  if (c.is_zero()) return;
  auto it = v.find(m);
  if (it == v.end()) {
    v.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) v.erase(it);
}

}  // namespace

std::string to_string(const WeightedMonomial& m) {
  std::ostringstream os;
  append_power(os, "z", m.z);
  os << "/(";
  bool first = true;
  for (const auto& [var, e] : {std::pair{"t", m.t}, std::pair{"x", m.x}, std::pair{"y", m.y}}) {
    if (e == 0) continue;
    if (!first) os << "*";
    first = false;
    append_power(os, var, e);
  }
  os << ")";
  return os.str();
}

std::vector<WeightedMonomial> weighted75_deg0_basis(std::uint64_t p) {
  require_7k4(p);
  return {{5, 1, 2, 1}, {5, 1, 1, 2}, {6, 1, 4, 1}, {6, 1, 3, 2}, {6, 1, 2, 3}, {6, 1, 1, 4}};
}

WeightedCombination weighted75_frobenius_image(const WeightedMonomial& m, std::uint64_t p) {
  require_7k4(p);
  const PrimeField field(p);
  // z^(zp) = z^r (z^7)^N = z^r (-t)^N (x^7 + y^7)^N.
  const std::uint64_t big_n = std::uint64_t{m.z} * p / 7;
  const auto r = static_cast<unsigned>(std::uint64_t{m.z} * p % 7);
  const std::int64_t t_den = static_cast<std::int64_t>(m.t * p) - static_cast<std::int64_t>(big_n);
  WeightedCombination out;
  if (t_den < 1) return out;
  for (std::uint64_t i = 0; i <= big_n; ++i) {
    const std::int64_t x_den = static_cast<std::int64_t>(m.x * p) - static_cast<std::int64_t>(7 * i);
    const std::int64_t y_den =
        static_cast<std::int64_t>(m.y * p) - static_cast<std::int64_t>(7 * (big_n - i));
    if (x_den < 1 || y_den < 1) continue;
    FieldElem c = binom_mod_p(big_n, i, p);
    if (big_n % 2 == 1) c = -c;
    accumulate(out,
               {r, static_cast<unsigned>(t_den), static_cast<unsigned>(x_den),
                static_cast<unsigned>(y_den)},
               c);
  }
  return out;
}

WeightedCombination weighted75_frobenius_image(const WeightedCombination& v, std::uint64_t p) {
  WeightedCombination out;
  for (const auto& [m, c] : v) {
    for (const auto& [m2, c2] : weighted75_frobenius_image(m, p)) accumulate(out, m2, c.pow(p) * c2);
  }
  return out;
}

bool weighted75_is_nilpotent(const WeightedMonomial& m, std::uint64_t p) {
  WeightedCombination v;
  v.emplace(m, PrimeField(p).one());
  for (int step = 0; step <= 7 && !v.empty(); ++step) v = weighted75_frobenius_image(v, p);
  return v.empty();
}

namespace {

TwistedMatrix<PolyRing> cycle75(std::uint64_t p, FieldElem scalar) {
  const std::uint64_t k = require_7k4(p);
  const PolyRing ring(p);
  Matrix<UniPoly> a(3, 3, ring.zero());
  a(0, 2) = UniPoly::monomial(scalar, 6 * k + 3);
  a(1, 0) = UniPoly::monomial(scalar, 3 * k + 1);
  a(2, 1) = UniPoly::monomial(scalar, 5 * k + 2);
  return TwistedMatrix<PolyRing>(ring, std::move(a), 1);
}

}  // namespace

TwistedMatrix<PolyRing> localized75_matrix(std::uint64_t p) {
  const std::uint64_t k = require_7k4(p);
  return cycle75(p, binom_mod_p(3 * k + 1, k, p));
}

TwistedMatrix<PolyRing> localized75_normalized(std::uint64_t p) {
  require_7k4(p);
  return cycle75(p, PrimeField(p).one());
}

}  // namespace froblen

#include "froblen/ff.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "froblen/errors.hpp"

namespace froblen {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1) return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = (result * b) % mod;
    b = (b * b) % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw ArgumentError("euler_phi: n must be positive");
  std::uint64_t phi = n;
  for (const auto& [q, e] : factorize(n)) {
    phi = phi / q * (q - 1);
  }
  return phi;
}

std::uint64_t multiplicative_order(std::uint64_t r, std::uint64_t n) {
  if (n == 0) throw ArgumentError("multiplicative_order: n must be positive");
  if (n == 1) return 1;
  if (std::gcd(r % n, n) != 1) throw ArgumentError("multiplicative_order: r is not a unit mod n");
  std::uint64_t order = euler_phi(n);
  for (const auto& [q, e] : factorize(order)) {
    for (unsigned i = 0; i < e && order % q == 0 && pow_mod(r, order / q, n) == 1; ++i) {
      order /= q;
    }
  }
  return order;
}

// --- FieldElem / PrimeField -------------------------------------------------

PrimeField::PrimeField(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p)) {
    throw ArgumentError("modulus " + std::to_string(p) + " is not a prime below 2^32");
  }
  p_ = static_cast<std::uint32_t>(p);
}

FieldElem PrimeField::element(std::uint64_t index) const {
  if (index >= p_) throw ArgumentError("PrimeField::element: index out of range");
  return FieldElem::from_residue(static_cast<std::uint32_t>(index), p_);
}

FieldElem::FieldElem(std::int64_t value, const PrimeField& field) : p_(field.characteristic()) {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  value_ = static_cast<std::uint32_t>(r);
}

FieldElem FieldElem::operator+(FieldElem rhs) const noexcept {
  std::uint64_t s = std::uint64_t{value_} + rhs.value_;
  if (s >= p_) s -= p_;
  return FieldElem(static_cast<std::uint32_t>(s), p_);
}

FieldElem FieldElem::operator-(FieldElem rhs) const noexcept {
  return value_ >= rhs.value_ ? FieldElem(value_ - rhs.value_, p_)
                              : FieldElem(static_cast<std::uint32_t>(std::uint64_t{value_} + p_ - rhs.value_), p_);
}

FieldElem FieldElem::operator*(FieldElem rhs) const noexcept {
  return FieldElem(static_cast<std::uint32_t>(std::uint64_t{value_} * rhs.value_ % p_), p_);
}

FieldElem FieldElem::operator/(FieldElem rhs) const { return *this * rhs.inverse(); }

FieldElem FieldElem::pow(std::uint64_t exp) const noexcept {
  return FieldElem(static_cast<std::uint32_t>(pow_mod(value_, exp, p_)), p_);
}

FieldElem FieldElem::inverse() const {
  if (value_ == 0) throw ArgumentError("inverse of zero in F_" + std::to_string(p_));
  return pow(p_ - 2);
}

std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.value(); }

// --- number theory ----------------------------------------------------------

int legendre(std::int64_t a, std::uint64_t p) {
  if (p == 2 || !is_prime(p)) {
    throw ArgumentError("legendre: " + std::to_string(p) + " is not an odd prime");
  }
  const PrimeField field(p);
  const FieldElem x(a, field);
  if (x.is_zero()) return 0;
  return x.pow((p - 1) / 2).value() == 1 ? 1 : -1;
}

namespace {

// C(m, k) mod p for m < p, by the multiplicative formula.
std::uint64_t small_binom(std::uint64_t m, std::uint64_t k, std::uint64_t p) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    num = num * ((m + 1 - i) % p) % p;
    den = den * (i % p) % p;
  }
  return num * pow_mod(den, p - 2, p) % p;
}

}  // namespace

FieldElem binom_mod_p(std::uint64_t m, std::uint64_t k, std::uint64_t p) {
  const PrimeField field(p);
  std::uint64_t result = 1 % p;
  while ((m > 0 || k > 0) && result != 0) {
    result = result * small_binom(m % p, k % p, p) % p;
    m /= p;
    k /= p;
  }
  return FieldElem::from_residue(static_cast<std::uint32_t>(result), field.characteristic());
}

FieldElem multinomial_mod_p(std::uint64_t top, std::span<const std::uint64_t> parts,
                            std::uint64_t p) {
  std::uint64_t sum = 0;
  for (std::uint64_t part : parts) sum += part;
  if (sum != top) {
    throw ArgumentError("multinomial_mod_p: parts sum to " + std::to_string(sum) +
                        ", expected " + std::to_string(top));
  }
  const PrimeField field(p);
  FieldElem result = field.one();
  std::uint64_t remaining = top;
  for (std::uint64_t part : parts) {
    result *= binom_mod_p(remaining, part, p);
    remaining -= part;
  }
  return result;
}

// --- small dense polynomials over F_p (used for the extension modulus) -------

namespace {

using DensePoly = std::vector<std::uint64_t>;  // low to high

void trim(DensePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

DensePoly poly_mod(DensePoly a, const DensePoly& g, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = pow_mod(g.back(), p - 2, p);
  while (a.size() >= g.size()) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) {
      a[shift + i] = (a[shift + i] + (p - factor) * g[i]) % p;
    }
    trim(a);
  }
  return a;
}

DensePoly poly_mulmod(const DensePoly& a, const DensePoly& b, const DensePoly& g, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  DensePoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod(std::move(prod), g, p);
}

DensePoly poly_powmod(DensePoly base, std::uint64_t exp, const DensePoly& g, std::uint64_t p) {
  DensePoly result{1};
  while (exp > 0) {
    if (exp & 1) result = poly_mulmod(result, base, g, p);
    base = poly_mulmod(base, base, g, p);
    exp >>= 1;
  }
  return result;
}

DensePoly poly_gcd(DensePoly a, DensePoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    DensePoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_irreducible_mod_p(std::span<const std::uint32_t> modulus_low, std::uint32_t p) {
  const std::size_t m = modulus_low.size();
  if (m == 0) return false;
  if (m == 1) return true;
  DensePoly g(modulus_low.begin(), modulus_low.end());
  for (auto& c : g) c %= p;
  g.push_back(1);
  // No irreducible factor of degree i <= m/2 iff gcd(g, y^(p^i) - y) = 1 for
  // each such i; for m <= 4 that settles irreducibility.
  DensePoly y_power{0, 1};
  for (std::size_t i = 1; i <= m / 2; ++i) {
    y_power = poly_powmod(y_power, p, g, p);
    DensePoly h = y_power;
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    const DensePoly d = poly_gcd(g, h, p);
    if (d.size() != 1) return false;
  }
  return true;
}

// --- ExtFieldElem -------------------------------------------------------------

bool ExtFieldElem::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](std::uint32_t v) { return v == 0; });
}

ExtFieldElem ExtFieldElem::operator+(const ExtFieldElem& rhs) const noexcept {
  const std::uint64_t p = spec_->p;
  std::array<std::uint32_t, kMaxExtDegree> out{};
  for (unsigned i = 0; i < spec_->m; ++i) {
    out[i] = static_cast<std::uint32_t>((std::uint64_t{c_[i]} + rhs.c_[i]) % p);
  }
  return ExtFieldElem(out, spec_);
}

ExtFieldElem ExtFieldElem::operator-(const ExtFieldElem& rhs) const noexcept {
  const std::uint64_t p = spec_->p;
  std::array<std::uint32_t, kMaxExtDegree> out{};
  for (unsigned i = 0; i < spec_->m; ++i) {
    out[i] = static_cast<std::uint32_t>((std::uint64_t{c_[i]} + p - rhs.c_[i]) % p);
  }
  return ExtFieldElem(out, spec_);
}

ExtFieldElem ExtFieldElem::operator-() const noexcept {
  const std::uint64_t p = spec_->p;
  std::array<std::uint32_t, kMaxExtDegree> out{};
  for (unsigned i = 0; i < spec_->m; ++i) {
    out[i] = static_cast<std::uint32_t>((p - c_[i]) % p);
  }
  return ExtFieldElem(out, spec_);
}

ExtFieldElem ExtFieldElem::operator*(const ExtFieldElem& rhs) const noexcept {
  const std::uint64_t p = spec_->p;
  const unsigned m = spec_->m;
  std::array<std::uint64_t, 2 * kMaxExtDegree> prod{};
  for (unsigned i = 0; i < m; ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{c_[i]} * rhs.c_[j]) % p;
    }
  }
  // y^m = -(modulus[m-1] y^(m-1) + ... + modulus[0]).
  for (unsigned k = 2 * m - 2; k >= m && k < 2 * m; --k) {
    const std::uint64_t top = prod[k];
    if (top == 0) continue;
    prod[k] = 0;
    for (unsigned i = 0; i < m; ++i) {
      prod[k - m + i] = (prod[k - m + i] + (p - top) * spec_->modulus[i]) % p;
    }
  }
  std::array<std::uint32_t, kMaxExtDegree> out{};
  for (unsigned i = 0; i < m; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return ExtFieldElem(out, spec_);
}

ExtFieldElem ExtFieldElem::pow(std::uint64_t exp) const noexcept {
  std::array<std::uint32_t, kMaxExtDegree> one{};
  one[0] = 1 % spec_->p;
  ExtFieldElem result(one, spec_);
  ExtFieldElem base = *this;
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

ExtFieldElem ExtFieldElem::inverse() const {
  if (is_zero()) throw ArgumentError("inverse of zero in extension field");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < spec_->m; ++i) q *= spec_->p;
  return pow(q - 2);
}

ExtFieldElem ExtFieldElem::operator/(const ExtFieldElem& rhs) const { return *this * rhs.inverse(); }

std::ostream& operator<<(std::ostream& os, const ExtFieldElem& x) {
  os << '[';
  for (unsigned i = 0; i < x.degree(); ++i) {
    if (i) os << ',';
    os << x.coeff(i);
  }
  return os << ']';
}

ExtFieldElem ext_frobenius(const ExtFieldElem& x) { return x.pow(x.characteristic()); }

// --- ExtField -------------------------------------------------------------------

namespace {

struct StandardModulus {
  std::uint32_t p;
  unsigned m;
  std::array<std::uint32_t, kMaxExtDegree> low;
};

// Conway polynomials (low coefficients, leading 1 implied).
constexpr StandardModulus kStandardModuli[] = {
    {2, 1, {1}},           {2, 2, {1, 1}},        {2, 3, {1, 1, 0}},     {2, 4, {1, 1, 0, 0}},
    {3, 1, {1}},           {3, 2, {2, 2}},        {3, 3, {1, 2, 0}},     {3, 4, {2, 0, 0, 2}},
    {5, 1, {3}},           {5, 2, {2, 4}},        {5, 3, {3, 3, 0}},     {5, 4, {2, 4, 4, 0}},
    {7, 1, {4}},           {7, 2, {3, 6}},        {7, 3, {4, 0, 6}},     {7, 4, {3, 4, 5, 0}},
    {11, 1, {9}},          {11, 2, {2, 7}},       {11, 3, {9, 2, 0}},    {11, 4, {2, 10, 8, 0}},
    {13, 1, {11}},         {13, 2, {2, 12}},      {13, 3, {11, 2, 0}},   {13, 4, {2, 12, 3, 0}},
};

}  // namespace

ExtField ExtField::standard(std::uint64_t p, unsigned m) {
  for (const auto& entry : kStandardModuli) {
    if (entry.p == p && entry.m == m) {
      return ExtField(p, std::span<const std::uint32_t>(entry.low.data(), m));
    }
  }
  throw ArgumentError("no built-in modulus for F_" + std::to_string(p) + "^" + std::to_string(m) +
                      " (supported: p <= 13, m <= 4)");
}

ExtField::ExtField(std::uint64_t p, std::span<const std::uint32_t> modulus_low) {
  const PrimeField base(p);
  const std::size_t m = modulus_low.size();
  if (m == 0 || m > kMaxExtDegree) {
    throw ArgumentError("extension degree must be between 1 and " + std::to_string(kMaxExtDegree));
  }
  auto spec = std::make_shared<ExtFieldSpec>();
  spec->p = base.characteristic();
  spec->m = static_cast<unsigned>(m);
  spec->modulus = {};
  for (std::size_t i = 0; i < m; ++i) spec->modulus[i] = modulus_low[i] % spec->p;
  if (!is_irreducible_mod_p(std::span<const std::uint32_t>(spec->modulus.data(), m), spec->p)) {
    throw ArgumentError("extension modulus is reducible over F_" + std::to_string(p));
  }
  spec_ = std::move(spec);
}

std::uint64_t ExtField::size() const noexcept {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < spec_->m; ++i) q *= spec_->p;
  return q;
}

ExtFieldElem ExtField::zero() const noexcept { return ExtFieldElem({}, spec_); }

ExtFieldElem ExtField::one() const noexcept {
  std::array<std::uint32_t, kMaxExtDegree> c{};
  c[0] = 1 % spec_->p;
  return ExtFieldElem(c, spec_);
}

ExtFieldElem ExtField::operator()(std::int64_t v) const {
  const std::int64_t p = spec_->p;
  std::int64_t r = v % p;
  if (r < 0) r += p;
  std::array<std::uint32_t, kMaxExtDegree> c{};
  c[0] = static_cast<std::uint32_t>(r);
  return ExtFieldElem(c, spec_);
}

ExtFieldElem ExtField::generator() const {
  if (spec_->m == 1) {
    // y is the root of y + modulus[0].
    return (*this)(-static_cast<std::int64_t>(spec_->modulus[0]));
  }
  std::array<std::uint32_t, kMaxExtDegree> c{};
  c[1] = 1;
  return ExtFieldElem(c, spec_);
}

ExtFieldElem ExtField::from_coeffs(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() > spec_->m) {
    throw ArgumentError("extension element has " + std::to_string(coeffs.size()) +
                        " coefficients, field degree is " + std::to_string(spec_->m));
  }
  ExtFieldElem acc = zero();
  ExtFieldElem power = one();
  const ExtFieldElem y = generator();
  for (std::int64_t c : coeffs) {
    acc += (*this)(c) * power;
    power *= y;
  }
  return acc;
}

ExtFieldElem ExtField::frobenius(const ExtFieldElem& x, std::uint64_t k) const {
  ExtFieldElem out = x;
  for (std::uint64_t i = 0; i < k % spec_->m; ++i) out = ext_frobenius(out);
  return out;
}

ExtFieldElem ExtField::element(std::uint64_t index) const {
  if (index >= size()) throw ArgumentError("ExtField::element: index out of range");
  std::array<std::uint32_t, kMaxExtDegree> c{};
  for (unsigned i = 0; i < spec_->m; ++i) {
    c[i] = static_cast<std::uint32_t>(index % spec_->p);
    index /= spec_->p;
  }
  return ExtFieldElem(c, spec_);
}

std::uint64_t ExtField::index_of(const ExtFieldElem& x) const noexcept {
  std::uint64_t index = 0;
  for (unsigned i = spec_->m; i-- > 0;) index = index * spec_->p + x.coeff(i);
  return index;
}

}  // namespace froblen

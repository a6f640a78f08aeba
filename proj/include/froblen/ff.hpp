#pragma once

// Number-theoretic and finite-field kernel.
//
// Residues are stored in 32 bits and every product is formed in 64 bits
// before reduction, so primes are limited to p < 2^32.

#include <array>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace froblen {

bool is_prime(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// Prime factorization by trial division, ascending primes with multiplicity.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

// Smallest k >= 1 with r^k == 1 (mod n); requires gcd(r, n) == 1.
std::uint64_t multiplicative_order(std::uint64_t r, std::uint64_t n);

class PrimeField;

/// Element of F_p. Carries its modulus so values can be combined without a
/// separate context object.
class FieldElem {
 public:
  FieldElem(std::int64_t value, const PrimeField& field);

  // Trusted construction: `residue < p` and `p` prime are not re-checked.
  static FieldElem from_residue(std::uint32_t residue, std::uint32_t p) noexcept {
    return FieldElem(residue, p);
  }

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElem operator+(FieldElem rhs) const noexcept;
  FieldElem operator-(FieldElem rhs) const noexcept;
  FieldElem operator*(FieldElem rhs) const noexcept;
  FieldElem operator/(FieldElem rhs) const;
  FieldElem operator-() const noexcept { return FieldElem(value_ == 0 ? 0 : p_ - value_, p_); }
  FieldElem& operator+=(FieldElem rhs) noexcept { return *this = *this + rhs; }
  FieldElem& operator-=(FieldElem rhs) noexcept { return *this = *this - rhs; }
  FieldElem& operator*=(FieldElem rhs) noexcept { return *this = *this * rhs; }

  FieldElem pow(std::uint64_t exp) const noexcept;
  // Throws ArgumentError on zero.
  FieldElem inverse() const;

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

 private:
  FieldElem(std::uint32_t v, std::uint32_t p) noexcept : value_(v), p_(p) {}

  std::uint32_t value_;
  std::uint32_t p_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& x);

/// The prime field F_p as a coefficient domain.
class PrimeField {
 public:
  using value_type = FieldElem;
  static constexpr bool is_finite_field = true;

  // Throws ArgumentError unless p is a prime below 2^32.
  explicit PrimeField(std::uint64_t p);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint64_t size() const noexcept { return p_; }
  unsigned degree() const noexcept { return 1; }

  FieldElem zero() const noexcept { return FieldElem::from_residue(0, p_); }
  FieldElem one() const noexcept { return FieldElem::from_residue(1 % p_, p_); }
  FieldElem operator()(std::int64_t v) const { return FieldElem(v, *this); }

  // x^(p^k); the identity on the prime field.
  FieldElem frobenius(const FieldElem& x, std::uint64_t /*k*/) const noexcept { return x; }

  // Bijection between [0, size()) and the field elements.
  FieldElem element(std::uint64_t index) const;
  std::uint64_t index_of(const FieldElem& x) const noexcept { return x.value(); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// Legendre symbol (a/p) by Euler's criterion. p must be an odd prime.
int legendre(std::int64_t a, std::uint64_t p);

/// C(m, k) mod p via Lucas' theorem on base-p digits; zero when k > m.
FieldElem binom_mod_p(std::uint64_t m, std::uint64_t k, std::uint64_t p);

/// top! / (parts[0]! parts[1]! ...) mod p as a product of binomials.
/// Throws ArgumentError when the parts do not sum to `top`.
FieldElem multinomial_mod_p(std::uint64_t top, std::span<const std::uint64_t> parts,
                            std::uint64_t p);

// ---------------------------------------------------------------------------
// Extension fields F_{p^m} = F_p[y]/(g), m <= 4.

inline constexpr unsigned kMaxExtDegree = 4;

struct ExtFieldSpec {
  std::uint32_t p;
  unsigned m;
  // Monic modulus g = y^m + modulus[m-1] y^(m-1) + ... + modulus[0].
  std::array<std::uint32_t, kMaxExtDegree> modulus;
};

class ExtFieldElem {
 public:
  ExtFieldElem(std::array<std::uint32_t, kMaxExtDegree> coeffs,
               std::shared_ptr<const ExtFieldSpec> spec) noexcept
      : c_(coeffs), spec_(std::move(spec)) {}

  // Coefficient of y^i, i < degree().
  std::uint32_t coeff(unsigned i) const noexcept { return c_[i]; }
  const std::array<std::uint32_t, kMaxExtDegree>& coeffs() const noexcept { return c_; }
  unsigned degree() const noexcept { return spec_->m; }
  std::uint32_t characteristic() const noexcept { return spec_->p; }
  const std::shared_ptr<const ExtFieldSpec>& spec() const noexcept { return spec_; }

  bool is_zero() const noexcept;

  ExtFieldElem operator+(const ExtFieldElem& rhs) const noexcept;
  ExtFieldElem operator-(const ExtFieldElem& rhs) const noexcept;
  ExtFieldElem operator*(const ExtFieldElem& rhs) const noexcept;
  ExtFieldElem operator/(const ExtFieldElem& rhs) const;
  ExtFieldElem operator-() const noexcept;
  ExtFieldElem& operator+=(const ExtFieldElem& rhs) noexcept { return *this = *this + rhs; }
  ExtFieldElem& operator-=(const ExtFieldElem& rhs) noexcept { return *this = *this - rhs; }
  ExtFieldElem& operator*=(const ExtFieldElem& rhs) noexcept { return *this = *this * rhs; }

  ExtFieldElem pow(std::uint64_t exp) const noexcept;
  ExtFieldElem inverse() const;

  friend bool operator==(const ExtFieldElem& a, const ExtFieldElem& b) noexcept {
    return a.c_ == b.c_ && a.spec_->p == b.spec_->p && a.spec_->modulus == b.spec_->modulus &&
           a.spec_->m == b.spec_->m;
  }

 private:
  std::array<std::uint32_t, kMaxExtDegree> c_;
  std::shared_ptr<const ExtFieldSpec> spec_;
};

std::ostream& operator<<(std::ostream& os, const ExtFieldElem& x);

/// x^p by square-and-multiply.
ExtFieldElem ext_frobenius(const ExtFieldElem& x);

/// F_{p^m} as a coefficient domain.
class ExtField {
 public:
  using value_type = ExtFieldElem;
  static constexpr bool is_finite_field = true;

  // Built-in irreducible modulus for p <= 13, 1 <= m <= 4.
  static ExtField standard(std::uint64_t p, unsigned m);

  // Monic modulus given low-to-high without the leading 1; checked for
  // irreducibility.
  ExtField(std::uint64_t p, std::span<const std::uint32_t> modulus_low);

  std::uint32_t characteristic() const noexcept { return spec_->p; }
  unsigned degree() const noexcept { return spec_->m; }
  std::uint64_t size() const noexcept;
  const std::shared_ptr<const ExtFieldSpec>& spec() const noexcept { return spec_; }

  ExtFieldElem zero() const noexcept;
  ExtFieldElem one() const noexcept;
  ExtFieldElem operator()(std::int64_t v) const;
  // The class of y.
  ExtFieldElem generator() const;
  ExtFieldElem from_coeffs(std::span<const std::int64_t> coeffs) const;

  // x^(p^k).
  ExtFieldElem frobenius(const ExtFieldElem& x, std::uint64_t k) const;

  ExtFieldElem element(std::uint64_t index) const;
  std::uint64_t index_of(const ExtFieldElem& x) const noexcept;

  friend bool operator==(const ExtField& a, const ExtField& b) noexcept {
    return a.spec_->p == b.spec_->p && a.spec_->m == b.spec_->m &&
           a.spec_->modulus == b.spec_->modulus;
  }

 private:
  explicit ExtField(std::shared_ptr<const ExtFieldSpec> spec) : spec_(std::move(spec)) {}

  std::shared_ptr<const ExtFieldSpec> spec_;
};

// True iff the monic polynomial y^m + sum modulus_low[i] y^i is irreducible
// over F_p (m <= 4).
bool is_irreducible_mod_p(std::span<const std::uint32_t> modulus_low, std::uint32_t p);

}  // namespace froblen

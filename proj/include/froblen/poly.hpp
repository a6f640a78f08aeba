#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "froblen/ff.hpp"

namespace froblen {

/// Polynomial degree with a distinguished value for the zero polynomial that
/// compares below every integer.
class Degree {
 public:
  constexpr explicit Degree(std::int64_t value) noexcept : value_(value), finite_(true) {}
  static constexpr Degree minus_infinity() noexcept { return Degree(); }

  constexpr bool is_minus_infinity() const noexcept { return !finite_; }
  // Undefined for the sentinel.
  constexpr std::int64_t value() const noexcept { return value_; }

  // -inf absorbs: deg(0 * g) = -inf.
  constexpr Degree operator+(Degree rhs) const noexcept {
    return finite_ && rhs.finite_ ? Degree(value_ + rhs.value_) : minus_infinity();
  }
  constexpr Degree operator+(std::int64_t rhs) const noexcept {
    return finite_ ? Degree(value_ + rhs) : minus_infinity();
  }
  // Degree of f^k for k >= 1.
  constexpr Degree times(std::int64_t k) const noexcept {
    return finite_ ? Degree(value_ * k) : minus_infinity();
  }

  constexpr std::strong_ordering operator<=>(const Degree& rhs) const noexcept {
    if (!finite_ || !rhs.finite_) return finite_ <=> rhs.finite_;
    return value_ <=> rhs.value_;
  }
  constexpr bool operator==(const Degree& rhs) const noexcept {
    return (*this <=> rhs) == std::strong_ordering::equal;
  }

 private:
  constexpr Degree() noexcept : value_(0), finite_(false) {}

  std::int64_t value_;
  bool finite_;
};

std::ostream& operator<<(std::ostream& os, Degree d);

/// Sparse univariate polynomial over F_p in t. No zero coefficients are stored.
class UniPoly {
 public:
  explicit UniPoly(std::uint32_t p) : p_(p) {}
  // c * t^degree.
  static UniPoly monomial(FieldElem c, std::uint64_t degree);
  static UniPoly constant(FieldElem c) { return monomial(c, 0); }

  std::uint32_t modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Degree degree() const noexcept;
  FieldElem coeff(std::uint64_t degree) const;
  const std::map<std::uint64_t, std::uint32_t>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  UniPoly operator+(const UniPoly& rhs) const;
  UniPoly operator-(const UniPoly& rhs) const;
  UniPoly operator-() const;
  UniPoly operator*(const UniPoly& rhs) const;
  UniPoly& operator+=(const UniPoly& rhs) { return *this = *this + rhs; }
  UniPoly& operator-=(const UniPoly& rhs) { return *this = *this - rhs; }
  UniPoly& operator*=(const UniPoly& rhs) { return *this = *this * rhs; }

  UniPoly scaled(FieldElem c) const;
  // Multiply by t^k.
  UniPoly shifted(std::uint64_t k) const;
  UniPoly pow(std::uint64_t exp) const;
  FieldElem evaluate(FieldElem at) const;

  // Adds c * t^degree.
  void add_term(std::uint64_t degree, std::uint32_t c);

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  std::uint32_t p_;
  std::map<std::uint64_t, std::uint32_t> terms_;
};

std::ostream& operator<<(std::ostream& os, const UniPoly& f);

/// f^(p^k): over F_p[t] this is f with t replaced by t^(p^k).
UniPoly uni_frobenius(const UniPoly& f, std::uint64_t k = 1);

/// F_p[t] as a coefficient domain. Not a field; only the ring operations and
/// the entry Frobenius are available.
class PolyRing {
 public:
  using value_type = UniPoly;
  static constexpr bool is_finite_field = false;

  explicit PolyRing(std::uint64_t p) : field_(p) {}

  std::uint32_t characteristic() const noexcept { return field_.characteristic(); }
  const PrimeField& base_field() const noexcept { return field_; }

  UniPoly zero() const { return UniPoly(characteristic()); }
  UniPoly one() const { return UniPoly::constant(field_.one()); }
  UniPoly operator()(std::int64_t v) const { return UniPoly::constant(field_(v)); }
  UniPoly t_power(std::uint64_t k) const { return UniPoly::monomial(field_.one(), k); }

  UniPoly frobenius(const UniPoly& x, std::uint64_t k) const { return uni_frobenius(x, k); }

  friend bool operator==(const PolyRing&, const PolyRing&) = default;

 private:
  PrimeField field_;
};

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials over F_p.

using Monomial = std::vector<std::uint16_t>;

inline constexpr std::uint32_t kDefaultMaxExponent = 1u << 15;

class SparsePoly {
 public:
  // Variables are single letters; the first variable is the largest in the
  // graded lexicographic order used for printing.
  SparsePoly(std::vector<char> variables, std::uint32_t p);

  static SparsePoly constant(std::vector<char> variables, FieldElem c);

  // Parses "x^3+y^3+z^3", "t*x^7+t*y^7+z^7", "3xy^2-z". When `variables` is
  // empty the sorted set of letters in the text is used.
  static SparsePoly parse(std::string_view text, std::uint64_t p,
                          std::vector<char> variables = {});

  const std::vector<char>& variables() const noexcept { return vars_; }
  std::size_t variable_count() const noexcept { return vars_.size(); }
  std::uint32_t modulus() const noexcept { return p_; }
  const std::map<Monomial, std::uint32_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  // Largest total degree; -inf for zero.
  Degree total_degree() const noexcept;
  FieldElem coeff(const Monomial& m) const;

  void add_term(const Monomial& m, std::uint32_t c);

  SparsePoly operator+(const SparsePoly& rhs) const;
  SparsePoly operator-(const SparsePoly& rhs) const;
  SparsePoly operator*(const SparsePoly& rhs) const;

  // Terms in descending graded lexicographic order.
  std::vector<std::pair<Monomial, std::uint32_t>> sorted_terms() const;
  std::string to_string() const;

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  void check_compatible(const SparsePoly& rhs) const;

  std::vector<char> vars_;
  std::uint32_t p_;
  std::map<Monomial, std::uint32_t> terms_;
};

std::ostream& operator<<(std::ostream& os, const SparsePoly& f);

/// f^e by binary exponentiation. Throws ResourceError when an exponent would
/// exceed `max_exponent`.
SparsePoly poly_pow(const SparsePoly& f, std::uint64_t e,
                    std::uint32_t max_exponent = kDefaultMaxExponent);

/// The terms of f^e whose exponents are all < bound, i.e. f^e modulo the
/// monomial ideal (x_1^bound, ..., x_n^bound).
SparsePoly truncated_pow(const SparsePoly& f, std::uint64_t e, std::uint32_t bound);

/// Fedder's criterion for a hypersurface through the origin:
/// true iff f^(p-1) is not in (x_1^p, ..., x_n^p).
bool fedder_is_f_pure(const SparsePoly& f, std::uint64_t p);

}  // namespace froblen

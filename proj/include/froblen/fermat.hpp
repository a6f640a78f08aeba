#pragma once

// Frobenius on the degree-0 part of the top local cohomology of the Fermat
// hypersurface x_0^n + x_1^n + ... + x_d^n over F_p.
//
// The basis elements are x_0^c / (x_1^a_1 ... x_d^a_d) with every a_i >= 1
// and c = a_1 + ... + a_d <= n - 1. Frobenius sends each one either to zero
// or to a nonzero multiple of another basis element.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "froblen/ff.hpp"
#include "froblen/poly.hpp"
#include "froblen/semilinear.hpp"

namespace froblen {

struct InverseMonomial {
  unsigned c = 0;
  std::vector<unsigned> a;

  friend auto operator<=>(const InverseMonomial&, const InverseMonomial&) = default;
};

// "z^3/(x^2*y)" for d = 2, "x0^3/(x1*x2*x3)" otherwise.
std::string to_string(const InverseMonomial& m);

class FermatContext {
 public:
  // n >= 2, d >= 1, p prime. Throws ArgumentError when p divides n.
  FermatContext(unsigned n, unsigned d, std::uint64_t p);

  unsigned n() const noexcept { return n_; }
  unsigned d() const noexcept { return d_; }
  std::uint32_t p() const noexcept { return field_.characteristic(); }
  // p mod n, in [1, n-1].
  unsigned r() const noexcept { return r_; }
  const PrimeField& field() const noexcept { return field_; }

  // Throws ArgumentError for d = 1; the injectivity and nilpotency
  // criteria are only valid for d >= 2.
  void require_surface_or_higher(const char* what) const;

 private:
  unsigned n_;
  unsigned d_;
  PrimeField field_;
  unsigned r_;
};

/// All basis elements in lexicographic order of (a_1, ..., a_d).
std::vector<InverseMonomial> basis(const FermatContext& ctx);

struct FrobeniusTerm {
  FieldElem coeff;
  InverseMonomial image;
};

/// Image of one basis element; empty when it lies in the kernel.
std::optional<FrobeniusTerm> frobenius_image(const InverseMonomial& elem, const FermatContext& ctx);

/// Number of (a_1..a_d) with sum_i (r^j a_i) % n < n for every
/// j = 0, ..., phi(n) - 1.
std::uint64_t stable_dim_by_count(const FermatContext& ctx);

inline constexpr std::size_t kFullMatrixCap = 200;

/// Matrix of Frobenius (e = 1) on basis(ctx). Throws ResourceError when the
/// basis is larger than `cap`.
TwistedMatrix<PrimeField> full_matrix(const FermatContext& ctx, std::size_t cap = kFullMatrixCap);

// Predicates computed from full_matrix; d >= 2 required.
bool frobenius_is_injective(const FermatContext& ctx);
bool frobenius_is_nilpotent(const FermatContext& ctx);

/// A cycle b_0 -> b_1 -> ... -> b_{L-1} -> b_0 with F(b_i) = coefficients[i] * b_{i+1}.
struct FrobeniusOrbit {
  std::vector<InverseMonomial> members;
  std::vector<FieldElem> coefficients;
};

/// Orbits of the elements that survive every iterate of Frobenius. Each
/// orbit starts at its member with the smallest c (ties: lexicographically
/// largest a); orbits are listed in the order of their starting members.
std::vector<FrobeniusOrbit> cycles(const FermatContext& ctx);

/// Matrix of Frobenius on one orbit in the basis b_0, ..., b_{L-1}.
TwistedMatrix<PrimeField> cycle_matrix(const FrobeniusOrbit& orbit, const FermatContext& ctx);

// ---------------------------------------------------------------------------
// The weighted hypersurface t x^7 + t y^7 + z^7 with deg x = deg y = 1,
// deg z = 2, deg t = 7, for primes p = 7k + 4.

/// z^z / (t^t x^x y^y).
struct WeightedMonomial {
  unsigned z = 0;
  unsigned t = 0;
  unsigned x = 0;
  unsigned y = 0;

  int degree() const noexcept {
    return 2 * static_cast<int>(z) - 7 * static_cast<int>(t) - static_cast<int>(x) -
           static_cast<int>(y);
  }
  friend auto operator<=>(const WeightedMonomial&, const WeightedMonomial&) = default;
};

std::string to_string(const WeightedMonomial& m);

using WeightedCombination = std::map<WeightedMonomial, FieldElem>;

/// The six degree-0 classes of the top local cohomology.
std::vector<WeightedMonomial> weighted75_deg0_basis(std::uint64_t p);

/// p-th power of one class, rewritten with z^7 = -t (x^7 + y^7); terms with
/// a non-positive exponent in the denominator vanish.
WeightedCombination weighted75_frobenius_image(const WeightedMonomial& m, std::uint64_t p);

WeightedCombination weighted75_frobenius_image(const WeightedCombination& v, std::uint64_t p);

/// True iff some iterate of Frobenius kills m (checked up to 7 iterates).
bool weighted75_is_nilpotent(const WeightedMonomial& m, std::uint64_t p);

/// Frobenius on one 3-cycle over F_p[t]: C(3k+1, k) times the matrix with
/// t^(6k+3) at (0,2), t^(3k+1) at (1,0), t^(5k+2) at (2,1).
TwistedMatrix<PolyRing> localized75_matrix(std::uint64_t p);

/// localized75_matrix without the common scalar C(3k+1, k).
TwistedMatrix<PolyRing> localized75_normalized(std::uint64_t p);

}  // namespace froblen

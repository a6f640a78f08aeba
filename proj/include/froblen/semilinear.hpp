#pragma once

// Frobenius-semilinear maps on D^n: f(b) = A * b^[p^e], where b^[p^e]
// raises each coordinate by the domain Frobenius.
//
// Templates are instantiated for PrimeField, ExtField and (where the
// operation makes sense over a ring) PolyRing.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "froblen/ff.hpp"
#include "froblen/matrix.hpp"
#include "froblen/poly.hpp"

namespace froblen {

template <class D>
class TwistedMatrix {
 public:
  using T = typename D::value_type;

  // Throws ArgumentError unless `a` is square and e >= 1.
  TwistedMatrix(D domain, Matrix<T> a, std::uint64_t e = 1);

  const D& domain() const noexcept { return dom_; }
  const Matrix<T>& matrix() const noexcept { return a_; }
  std::uint64_t twist() const noexcept { return e_; }
  std::size_t dim() const noexcept { return a_.rows(); }
  std::uint32_t characteristic() const noexcept { return dom_.characteristic(); }

 private:
  D dom_;
  Matrix<T> a_;
  std::uint64_t e_;
};

/// B_m with f^m(b) = B_m * b^[p^(e m)].
template <class D>
struct IterateMatrix {
  Matrix<typename D::value_type> matrix;
  std::uint64_t step;
};

template <class D>
Vec<typename D::value_type> apply(const TwistedMatrix<D>& m, const Vec<typename D::value_type>& v);

template <class D>
IterateMatrix<D> iterate(const TwistedMatrix<D>& m, std::uint64_t steps);

// The same map in the basis given by the rows of C: C A (C^-1)^[p^e].
template <class D>
TwistedMatrix<D> change_basis(const TwistedMatrix<D>& m, const Matrix<typename D::value_type>& c);

template <class D>
Subspace<D> stable_subspace(const TwistedMatrix<D>& m);

/// f restricted to its stable part, written in the echelon basis of
/// stable_subspace(m). The result is bijective.
template <class D>
TwistedMatrix<D> restrict_to_stable(const TwistedMatrix<D>& m);

template <class D>
bool is_nilpotent(const TwistedMatrix<D>& m);

// Flag search limits. max_dim bounds each independent block; max_search
// bounds the number of candidate vectors examined.
struct FlagOptions {
  bool decompose_blocks = true;
  bool linear_fast_path = true;
  unsigned max_dim = 8;
  std::uint64_t max_search = 100'000'000;
};

// FlagOptions with max_dim taken from FROBLEN_MAX_DIM when set.
FlagOptions default_flag_options();

template <class D>
unsigned flag_length(const TwistedMatrix<D>& m, const FlagOptions& opts = default_flag_options());

/// Depth-first search only: no block splitting, no characteristic polynomial.
template <class D>
unsigned flag_length_exhaustive(const TwistedMatrix<D>& m,
                                const FlagOptions& opts = default_flag_options());

template <class D>
bool is_triangularizable_nonzero_diag(const TwistedMatrix<D>& m,
                                      const FlagOptions& opts = default_flag_options());

/// Smallest s >= 1 with B_s = I. Requires an invertible A.
template <class D>
std::uint64_t finite_order(const TwistedMatrix<D>& m);

/// Smallest f-stable subspace containing v.
template <class D>
Subspace<D> krylov_closure(const TwistedMatrix<D>& m, const Vec<typename D::value_type>& v);

/// Smallest f-stable subspace containing u and v, for an f-stable u.
template <class D>
Subspace<D> krylov_closure(const TwistedMatrix<D>& m, const Subspace<D>& u,
                           const Vec<typename D::value_type>& v);

/// det(v, f(v), f^2(v)) for a 3x3 map.
template <class D>
typename D::value_type cyclic_det3(const TwistedMatrix<D>& m, const Vec<typename D::value_type>& v);

// ---------------------------------------------------------------------------
// Degree analysis of det(v, f v, f^2 v) for the 3-cycle over F_p[t] with
// entries t^(6k+3), t^(3k+1), t^(5k+2), p = 7k + 4.

/// The determinant divided by t^((3k+1)p + 8k + 3), as a six-term sum in a, b, c.
UniPoly delta_prime_expansion(std::uint64_t p, const UniPoly& a, const UniPoly& b,
                              const UniPoly& c);

/// Degrees of the six terms of delta_prime_expansion in order, for
/// deg a = alpha, deg b = beta, deg c = gamma.
std::vector<Degree> delta_prime_term_degrees(std::uint64_t p, Degree alpha, Degree beta,
                                             Degree gamma);

/// Index (0-based) of the term that must dominate: 3 when gamma >= max(alpha, beta),
/// 4 when beta > gamma and beta >= alpha, 0 when alpha > max(beta, gamma).
/// Empty when all three degrees are -inf.
std::optional<unsigned> dominant_term(Degree alpha, Degree beta, Degree gamma);

struct DominanceReport {
  bool passed = true;
  std::uint64_t triples_checked = 0;
  std::uint64_t triples_skipped = 0;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

DominanceReport dominance_report(std::uint64_t p, unsigned max_deg);

/// True iff for every 0 <= alpha, beta, gamma <= max_deg the designated term
/// strictly out-degrees the other five.
bool verify_dominance(std::uint64_t p, unsigned max_deg);

}  // namespace froblen

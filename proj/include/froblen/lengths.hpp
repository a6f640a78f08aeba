#pragma once

// Length formulas and bounds for local cohomology, assembled from the
// Fermat model, the semilinear flag search and Fedder's criterion.
//
// Notation: n is the Fermat degree, d + 1 the number of variables, c the
// number of minimal primes. l_F <= l_{F^e} <= l_{F^inf} <= l_D.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "froblen/poly.hpp"

namespace froblen {

struct Evidence {
  std::string op;      // operation that produced the value
  std::string inputs;  // its arguments
  std::string result;
};

struct LengthReport {
  std::uint64_t p = 0;
  unsigned n = 0;
  unsigned d = 0;
  std::optional<std::uint64_t> stable_dim;
  std::optional<std::uint64_t> l_F;
  std::map<std::uint64_t, std::uint64_t> l_Fe;
  std::optional<std::uint64_t> l_Finf;
  std::optional<std::uint64_t> l_D;
  std::uint64_t c = 1;
  std::vector<Evidence> evidence;
  // Set when the report was compared with a closed-form table.
  std::optional<bool> table_match;

  // l_F <= l_Fe[e] <= l_Finf <= l_D over the values present.
  bool chain_holds() const;
};

/// (deg + 1)^n_vars - 1. Throws ResourceError on 64-bit overflow.
std::uint64_t hypersurface_bound(std::uint64_t n_vars, std::uint64_t deg);

/// Sum over multisets i_1 <= ... <= i_j of (d_i1 + ... + d_ij + 1)^n_vars, minus 1.
std::uint64_t bernstein_bound(std::uint64_t n_vars, const std::vector<std::uint64_t>& degrees,
                              std::uint64_t j);

/// stable_dim + c, for an isolated non-F-rational point.
std::uint64_t d_length_isolated(std::uint64_t stable_dim, std::uint64_t c);

/// c + sum of local stable dimensions at curve primes + top stable dimension.
/// An upper bound only.
std::uint64_t thm47_upper(std::uint64_t c, const std::vector<std::uint64_t>& curve_local_stable_dims,
                          std::uint64_t top_stable_dim);

/// The closed-form (l_F, l_Finf, l_D) for x^7 + y^7 + z^7, used only to
/// check fermat7_lengths.
struct Fermat7Expected {
  std::uint64_t l_F;
  std::uint64_t l_Finf;
  std::uint64_t l_D;
};
Fermat7Expected fermat7_expected(std::uint64_t p);

/// Lengths for x^7 + y^7 + z^7 over F_p, computed from the Frobenius action.
LengthReport fermat7_lengths(std::uint64_t p);

/// Lengths for t x^7 + t y^7 + z^7, p = 7k + 4.
LengthReport prop75_lengths(std::uint64_t p, std::uint64_t trials, std::uint64_t seed = 1);

/// 2 if the hypersurface is F-pure by Fedder's criterion, else 1.
/// Requires deg f = number of variables.
unsigned calabi_yau_d_length(const SparsePoly& f, std::uint64_t p);

}  // namespace froblen

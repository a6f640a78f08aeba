#pragma once

// JSON and CSV encodings of matrices, orbits and length reports.
//
// Matrix: {"p", "e", "domain": "Fp" | "Fpm" | "Fp[t]", "m" (Fpm only),
// "entries": [[...], ...]}. An Fp entry is an integer, an Fpm entry is a
// low-to-high coefficient array, an Fp[t] entry is a {"degree": coeff}
// object. Keys are sorted, so equal inputs give byte-identical output.

#include <string>
#include <variant>

#include <json.hpp>

#include "froblen/fermat.hpp"
#include "froblen/lengths.hpp"
#include "froblen/semilinear.hpp"

namespace froblen {

using AnyTwistedMatrix =
    std::variant<TwistedMatrix<PrimeField>, TwistedMatrix<ExtField>, TwistedMatrix<PolyRing>>;

nlohmann::json to_json(const TwistedMatrix<PrimeField>& m);
nlohmann::json to_json(const TwistedMatrix<ExtField>& m);
nlohmann::json to_json(const TwistedMatrix<PolyRing>& m);

/// Throws ArgumentError on malformed input. Fpm uses the built-in modulus
/// unless a "modulus" array (low-to-high, without the leading 1) is given.
AnyTwistedMatrix twisted_matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FrobeniusOrbit& orbit, const FermatContext& ctx);

/// Missing values are written as "unknown".
nlohmann::json to_json(const LengthReport& rep);

std::string csv_header();
/// p, p mod 21, stable_dim, l_F, l_Finf, l_D, table_match.
std::string csv_row(const LengthReport& rep);

}  // namespace froblen

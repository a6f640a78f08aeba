#include "froblen/json_io.hpp"

#include <algorithm>
#include <sstream>

#include "froblen/errors.hpp"

namespace froblen {

using nlohmann::json;

namespace {

template <class D, class F>
json matrix_json(const TwistedMatrix<D>& m, const char* domain, F&& entry) {
  json rows = json::array();
  const auto& a = m.matrix();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(entry(a(i, k)));
    rows.push_back(std::move(row));
  }
  return json{{"p", m.characteristic()}, {"e", m.twist()}, {"domain", domain}, {"entries", rows}};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ArgumentError(std::string("matrix JSON needs \"") + key + "\"");
  return j.at(key);
}

std::uint64_t as_uint(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    throw ArgumentError(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ArgumentError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

template <class D, class F>
TwistedMatrix<D> parse_entries(const D& dom, const json& j, std::uint64_t e, F&& entry) {
  const json& rows = field(j, "entries");
  if (!rows.is_array() || rows.empty()) throw ArgumentError("entries must be a non-empty array of rows");
  const std::size_t n = rows.size();
  std::vector<Vec<typename D::value_type>> out;
  out.reserve(n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) throw ArgumentError("entries must form a square matrix");
    Vec<typename D::value_type> r;
    r.reserve(n);
    for (const auto& x : row) r.push_back(entry(x));
    out.push_back(std::move(r));
  }
  return TwistedMatrix<D>(dom, Matrix<typename D::value_type>::from_rows(out), e);
}

json optional_json(const std::optional<std::uint64_t>& v) {
  return v ? json(*v) : json("unknown");
}

std::string optional_csv(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string("unknown");
}

}  // namespace

json to_json(const TwistedMatrix<PrimeField>& m) {
  return matrix_json(m, "Fp", [](const FieldElem& x) { return json(x.value()); });
}

json to_json(const TwistedMatrix<ExtField>& m) {
  const unsigned deg = m.domain().degree();
  json j = matrix_json(m, "Fpm", [deg](const ExtFieldElem& x) {
    json c = json::array();
    for (unsigned i = 0; i < deg; ++i) c.push_back(x.coeffs()[i]);
    return c;
  });
  j["m"] = deg;
  const auto& spec = *m.domain().spec();
  bool standard = false;
  try {
    standard = ExtField::standard(spec.p, spec.m) == m.domain();
  } catch (const std::exception&) {
  }
  if (!standard) {
    json mod = json::array();
    for (unsigned i = 0; i < deg; ++i) mod.push_back(spec.modulus[i]);
    j["modulus"] = mod;
  }
  return j;
}

json to_json(const TwistedMatrix<PolyRing>& m) {
  return matrix_json(m, "Fp[t]", [](const UniPoly& f) {
    json o = json::object();
    for (const auto& [deg, c] : f.terms()) o[std::to_string(deg)] = c;
    return o;
  });
}

AnyTwistedMatrix twisted_matrix_from_json(const json& j) {
  const std::uint64_t p = as_uint(field(j, "p"), "p");
  if (!is_prime(p)) throw ArgumentError("p = " + std::to_string(p) + " is not prime");
  const std::uint64_t e = j.contains("e") ? as_uint(j.at("e"), "e") : 1;
  const json& dom = field(j, "domain");
  if (!dom.is_string()) throw ArgumentError("domain must be a string");
  const std::string name = dom.get<std::string>();

  if (name == "Fp") {
    const PrimeField f(p);
    return parse_entries(f, j, e, [&](const json& x) { return f(as_int(x, "Fp entry")); });
  }
  if (name == "Fpm") {
    const std::uint64_t m = as_uint(field(j, "m"), "m");
    if (m < 1 || m > kMaxExtDegree) throw ArgumentError("m must be between 1 and 4");
    ExtField f = [&] {
      if (!j.contains("modulus")) return ExtField::standard(p, static_cast<unsigned>(m));
      const json& mod = j.at("modulus");
      if (!mod.is_array() || mod.size() != m) throw ArgumentError("modulus must have m coefficients");
      std::vector<std::uint32_t> low;
      for (const auto& c : mod) low.push_back(static_cast<std::uint32_t>(as_uint(c, "modulus coefficient") % p));
      return ExtField(p, low);
    }();
    return parse_entries(f, j, e, [&](const json& x) {
      if (!x.is_array() || x.size() > m) throw ArgumentError("Fpm entry must be an array of at most m coefficients");
      std::vector<std::int64_t> c;
      for (const auto& v : x) c.push_back(as_int(v, "Fpm coefficient"));
      return f.from_coeffs(c);
    });
  }
  if (name == "Fp[t]") {
    const PolyRing r(p);
    const PrimeField base(p);
    return parse_entries(r, j, e, [&](const json& x) {
      if (!x.is_object()) throw ArgumentError("Fp[t] entry must be a {degree: coeff} object");
      UniPoly f = r.zero();
      for (const auto& [k, v] : x.items()) {
        std::uint64_t deg = 0;
        std::istringstream is(k);
        if (!(is >> deg) || !is.eof()) throw ArgumentError("bad degree key \"" + k + "\"");
        f.add_term(deg, base(as_int(v, "Fp[t] coefficient")).value());
      }
      return f;
    });
  }
  throw ArgumentError("unknown domain \"" + name + "\"");
}

json to_json(const FrobeniusOrbit& orbit, const FermatContext& ctx) {
  json members = json::array();
  for (const auto& b : orbit.members) members.push_back(to_string(b));
  json coeffs = json::array();
  for (const auto& c : orbit.coefficients) coeffs.push_back(c.value());
  return json{{"members", members}, {"coefficients", coeffs}, {"matrix", to_json(cycle_matrix(orbit, ctx))}};
}

json to_json(const LengthReport& rep) {
  json fe = json::object();
  for (const auto& [e, v] : rep.l_Fe) fe[std::to_string(e)] = v;
  json ev = json::array();
  for (const auto& x : rep.evidence) ev.push_back(json{{"op", x.op}, {"inputs", x.inputs}, {"result", x.result}});
  json j{{"p", rep.p},
         {"n", rep.n},
         {"d", rep.d},
         {"stable_dim", optional_json(rep.stable_dim)},
         {"l_F", optional_json(rep.l_F)},
         {"l_Fe", fe},
         {"l_Finf", optional_json(rep.l_Finf)},
         {"l_D", optional_json(rep.l_D)},
         {"c", rep.c},
         {"evidence", ev}};
  if (rep.table_match) j["table_match"] = *rep.table_match;
  return j;
}

std::string csv_header() { return "p,p_mod_21,stable_dim,l_F,l_Finf,l_D,table_match"; }

std::string csv_row(const LengthReport& rep) {
  std::ostringstream os;
  os << rep.p << ',' << rep.p % 21 << ',' << optional_csv(rep.stable_dim) << ',' << optional_csv(rep.l_F)
     << ',' << optional_csv(rep.l_Finf) << ',' << optional_csv(rep.l_D) << ','
     << (rep.table_match ? (*rep.table_match ? "true" : "false") : "unknown");
  return os.str();
}

}  // namespace froblen

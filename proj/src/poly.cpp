#include "froblen/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "froblen/errors.hpp"

namespace froblen {

std::ostream& operator<<(std::ostream& os, Degree d) {
  if (d.is_minus_infinity()) return os << "-inf";
  return os << d.value();
}

// --- UniPoly --------------------------------------------------------------------

UniPoly UniPoly::monomial(FieldElem c, std::uint64_t degree) {
  UniPoly f(c.modulus());
  f.add_term(degree, c.value());
  return f;
}

Degree UniPoly::degree() const noexcept {
  if (terms_.empty()) return Degree::minus_infinity();
  return Degree(static_cast<std::int64_t>(terms_.rbegin()->first));
}

FieldElem UniPoly::coeff(std::uint64_t degree) const {
  const auto it = terms_.find(degree);
  return FieldElem::from_residue(it == terms_.end() ? 0 : it->second, p_);
}

void UniPoly::add_term(std::uint64_t degree, std::uint32_t c) {
  c %= p_;
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(degree, c);
  if (inserted) return;
  const std::uint32_t sum = static_cast<std::uint32_t>((std::uint64_t{it->second} + c) % p_);
  if (sum == 0) {
    terms_.erase(it);
  } else {
    it->second = sum;
  }
}

UniPoly UniPoly::operator+(const UniPoly& rhs) const {
  UniPoly out = *this;
  for (const auto& [d, c] : rhs.terms_) out.add_term(d, c);
  return out;
}

UniPoly UniPoly::operator-() const {
  UniPoly out(p_);
  for (const auto& [d, c] : terms_) out.terms_.emplace(d, p_ - c);
  return out;
}

UniPoly UniPoly::operator-(const UniPoly& rhs) const { return *this + (-rhs); }

UniPoly UniPoly::operator*(const UniPoly& rhs) const {
  UniPoly out(p_);
  for (const auto& [d1, c1] : terms_) {
    for (const auto& [d2, c2] : rhs.terms_) {
      if (d1 > UINT64_MAX - d2) throw ResourceError("UniPoly product degree overflows 64 bits");
      out.add_term(d1 + d2, static_cast<std::uint32_t>(std::uint64_t{c1} * c2 % p_));
    }
  }
  return out;
}

UniPoly UniPoly::scaled(FieldElem c) const {
  UniPoly out(p_);
  if (c.is_zero()) return out;
  for (const auto& [d, v] : terms_) {
    out.terms_.emplace(d, static_cast<std::uint32_t>(std::uint64_t{v} * c.value() % p_));
  }
  return out;
}

UniPoly UniPoly::shifted(std::uint64_t k) const {
  UniPoly out(p_);
  for (const auto& [d, v] : terms_) {
    if (d > UINT64_MAX - k) throw ResourceError("UniPoly degree overflows 64 bits");
    out.terms_.emplace(d + k, v);
  }
  return out;
}

UniPoly UniPoly::pow(std::uint64_t exp) const {
  UniPoly result = UniPoly::constant(FieldElem::from_residue(1 % p_, p_));
  UniPoly base = *this;
  while (exp > 0) {
    if (exp & 1) result *= base;
    exp >>= 1;
    if (exp > 0) base *= base;
  }
  return result;
}

FieldElem UniPoly::evaluate(FieldElem at) const {
  FieldElem acc = FieldElem::from_residue(0, p_);
  for (const auto& [d, c] : terms_) {
    acc += FieldElem::from_residue(c, p_) * at.pow(d);
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const UniPoly& f) {
  if (f.is_zero()) return os << "0";
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (!first) os << "+";
    first = false;
    const auto [d, c] = *it;
    if (d == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    os << "t";
    if (d != 1) os << "^" << d;
  }
  return os;
}

UniPoly uni_frobenius(const UniPoly& f, std::uint64_t k) {
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (q > UINT64_MAX / f.modulus()) throw ResourceError("Frobenius power p^k overflows 64 bits");
    q *= f.modulus();
  }
  UniPoly out(f.modulus());
  for (const auto& [d, c] : f.terms()) {
    if (d != 0 && d > UINT64_MAX / q) throw ResourceError("UniPoly degree overflows 64 bits");
    out.add_term(d * q, c);
  }
  return out;
}

// --- SparsePoly -----------------------------------------------------------------

SparsePoly::SparsePoly(std::vector<char> variables, std::uint32_t p)
    : vars_(std::move(variables)), p_(p) {
  std::set<char> seen;
  for (char v : vars_) {
    if (!std::isalpha(static_cast<unsigned char>(v))) {
      throw ArgumentError(std::string("variable name must be a letter, got '") + v + "'");
    }
    if (!seen.insert(v).second) throw ArgumentError(std::string("duplicate variable '") + v + "'");
  }
}

SparsePoly SparsePoly::constant(std::vector<char> variables, FieldElem c) {
  SparsePoly f(std::move(variables), c.modulus());
  f.add_term(Monomial(f.vars_.size(), 0), c.value());
  return f;
}

Degree SparsePoly::total_degree() const noexcept {
  Degree best = Degree::minus_infinity();
  for (const auto& [m, c] : terms_) {
    best = std::max(best, Degree(std::accumulate(m.begin(), m.end(), std::int64_t{0})));
  }
  return best;
}

FieldElem SparsePoly::coeff(const Monomial& m) const {
  const auto it = terms_.find(m);
  return FieldElem::from_residue(it == terms_.end() ? 0 : it->second, p_);
}

void SparsePoly::add_term(const Monomial& m, std::uint32_t c) {
  if (m.size() != vars_.size()) {
    throw ArgumentError("monomial has " + std::to_string(m.size()) + " exponents, expected " +
                        std::to_string(vars_.size()));
  }
  c %= p_;
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  const std::uint32_t sum = static_cast<std::uint32_t>((std::uint64_t{it->second} + c) % p_);
  if (sum == 0) {
    terms_.erase(it);
  } else {
    it->second = sum;
  }
}

void SparsePoly::check_compatible(const SparsePoly& rhs) const {
  if (vars_ != rhs.vars_ || p_ != rhs.p_) {
    throw ArgumentError("polynomials live in different rings");
  }
}

SparsePoly SparsePoly::operator+(const SparsePoly& rhs) const {
  check_compatible(rhs);
  SparsePoly out = *this;
  for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
  return out;
}

SparsePoly SparsePoly::operator-(const SparsePoly& rhs) const {
  check_compatible(rhs);
  SparsePoly out = *this;
  for (const auto& [m, c] : rhs.terms_) out.add_term(m, p_ - c);
  return out;
}

namespace {

SparsePoly multiply_capped(const SparsePoly& a, const SparsePoly& b, std::uint32_t max_exponent) {
  SparsePoly out(a.variables(), a.modulus());
  const std::uint64_t p = a.modulus();
  Monomial m(a.variable_count());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        const std::uint32_t e = std::uint32_t{ma[i]} + mb[i];
        if (e > max_exponent) {
          throw ResourceError("exponent " + std::to_string(e) + " exceeds the cap " +
                              std::to_string(max_exponent));
        }
        m[i] = static_cast<std::uint16_t>(e);
      }
      out.add_term(m, static_cast<std::uint32_t>(std::uint64_t{ca} * cb % p));
    }
  }
  return out;
}

}  // namespace

SparsePoly SparsePoly::operator*(const SparsePoly& rhs) const {
  check_compatible(rhs);
  return multiply_capped(*this, rhs, UINT16_MAX);
}

std::vector<std::pair<Monomial, std::uint32_t>> SparsePoly::sorted_terms() const {
  std::vector<std::pair<Monomial, std::uint32_t>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    const auto dx = std::accumulate(x.first.begin(), x.first.end(), 0u);
    const auto dy = std::accumulate(y.first.begin(), y.first.end(), 0u);
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  return out;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted_terms()) {
    if (!first) os << "+";
    first = false;
    bool constant = std::all_of(m.begin(), m.end(), [](std::uint16_t e) { return e == 0; });
    if (constant) {
      os << c;
      continue;
    }
    bool need_star = false;
    if (c != 1) {
      os << c;
      need_star = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << "*";
      os << vars_[i];
      if (m[i] != 1) os << "^" << m[i];
      need_star = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const SparsePoly& f) { return os << f.to_string(); }

// --- parsing ----------------------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const PrimeField& field, std::vector<char> vars)
      : text_(text), field_(field), vars_(std::move(vars)) {}

  SparsePoly parse() {
    SparsePoly out(vars_, field_.characteristic());
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [mono, coeff] = parse_term();
      if (negative) coeff = -coeff;
      out.add_term(mono, coeff.value());
      skip_ws();
    }
    return out;
  }

 private:
  std::pair<Monomial, FieldElem> parse_term() {
    Monomial mono(vars_.size(), 0);
    FieldElem coeff = field_.one();
    bool any_factor = false;
    while (!at_end()) {
      skip_ws();
      if (at_end()) break;
      const char ch = peek();
      if (ch == '*') {
        if (!any_factor) fail("'*' before any factor");
        ++pos_;
        skip_ws();
        if (at_end() || !(std::isdigit(static_cast<unsigned char>(peek())) ||
                          std::isalpha(static_cast<unsigned char>(peek())))) {
          fail("expected a factor after '*'");
        }
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coeff *= parse_number_mod_p();
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        ++pos_;
        const auto it = std::find(vars_.begin(), vars_.end(), ch);
        if (it == vars_.end()) fail(std::string("unknown variable '") + ch + "'");
        std::uint64_t e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          e = parse_exponent();
        }
        auto& slot = mono[static_cast<std::size_t>(it - vars_.begin())];
        const std::uint64_t total = slot + e;
        if (total > kDefaultMaxExponent) {
          throw ResourceError("exponent " + std::to_string(total) + " exceeds the cap " +
                              std::to_string(kDefaultMaxExponent));
        }
        slot = static_cast<std::uint16_t>(total);
      } else {
        break;
      }
      any_factor = true;
    }
    if (!any_factor) fail("expected a term");
    return {mono, coeff};
  }

  FieldElem parse_number_mod_p() {
    const std::uint64_t p = field_.characteristic();
    std::uint64_t r = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      r = (r * 10 + static_cast<std::uint64_t>(peek() - '0')) % p;
      ++pos_;
    }
    return field_(static_cast<std::int64_t>(r));
  }

  std::uint64_t parse_exponent() {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
    std::uint64_t e = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (e > kDefaultMaxExponent) {
        throw ResourceError("exponent exceeds the cap " + std::to_string(kDefaultMaxExponent));
      }
      ++pos_;
    }
    return e;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ArgumentError("cannot parse polynomial \"" + std::string(text_) + "\" at offset " +
                        std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  const PrimeField& field_;
  std::vector<char> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly SparsePoly::parse(std::string_view text, std::uint64_t p, std::vector<char> variables) {
  const PrimeField field(p);
  if (variables.empty()) {
    std::set<char> letters;
    for (char ch : text) {
      if (std::isalpha(static_cast<unsigned char>(ch))) letters.insert(ch);
    }
    variables.assign(letters.begin(), letters.end());
  }
  return PolyParser(text, field, std::move(variables)).parse();
}

// --- powers -----------------------------------------------------------------------

SparsePoly poly_pow(const SparsePoly& f, std::uint64_t e, std::uint32_t max_exponent) {
  SparsePoly result =
      SparsePoly::constant(f.variables(), FieldElem::from_residue(1 % f.modulus(), f.modulus()));
  SparsePoly base = f;
  while (e > 0) {
    if (e & 1) result = multiply_capped(result, base, max_exponent);
    e >>= 1;
    if (e > 0) base = multiply_capped(base, base, max_exponent);
  }
  return result;
}

namespace {

// Exponents of x_j in every term of f are multiples of stride[j], so powers of
// f live on a scaled box [0, cap[j]]^n indexed in mixed radix.
struct TruncationBox {
  std::vector<std::uint32_t> step;    // gcd of x_j exponents (0 if x_j never occurs)
  std::vector<std::uint64_t> cap;     // largest scaled exponent below the bound
  std::vector<std::uint64_t> radix;   // mixed-radix place values
  std::uint64_t size = 1;
  bool overflow = false;
};

struct ScaledTerm {
  std::vector<std::uint64_t> digits;
  std::uint64_t offset;
  std::uint32_t coeff;
};

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 25;

}  // namespace

SparsePoly truncated_pow(const SparsePoly& f, std::uint64_t e, std::uint32_t bound) {
  const std::size_t n = f.variable_count();
  const std::uint64_t p = f.modulus();
  SparsePoly out(f.variables(), f.modulus());
  if (bound == 0) return out;
  if (e == 0) {
    out.add_term(Monomial(n, 0), 1);
    return out;
  }

  std::vector<std::pair<Monomial, std::uint32_t>> kept;
  for (const auto& [m, c] : f.terms()) {
    if (std::all_of(m.begin(), m.end(), [&](std::uint16_t x) { return x < bound; })) {
      kept.emplace_back(m, c);
    }
  }
  if (kept.empty()) return out;

  TruncationBox box;
  box.step.assign(n, 0);
  box.cap.assign(n, 0);
  box.radix.assign(n, 0);
  for (const auto& [m, c] : kept) {
    for (std::size_t j = 0; j < n; ++j) box.step[j] = std::gcd(box.step[j], std::uint32_t{m[j]});
  }
  for (std::size_t j = 0; j < n; ++j) {
    box.cap[j] = box.step[j] == 0 ? 0 : (bound - 1) / box.step[j];
    box.radix[j] = box.size;
    if (box.size > (UINT64_MAX >> 2) / (box.cap[j] + 1)) box.overflow = true;
    box.size *= box.cap[j] + 1;
  }
  if (box.overflow) throw ResourceError("truncated power: exponent box exceeds 64-bit indexing");

  std::vector<ScaledTerm> terms;
  std::int64_t min_degree = INT64_MAX;
  for (const auto& [m, c] : kept) {
    ScaledTerm t{std::vector<std::uint64_t>(n, 0), 0, c};
    std::int64_t deg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (box.step[j] != 0) t.digits[j] = m[j] / box.step[j];
      t.offset += t.digits[j] * box.radix[j];
      deg += m[j];
    }
    min_degree = std::min(min_degree, deg);
    terms.push_back(std::move(t));
  }

  auto decode = [&](std::uint64_t index, std::vector<std::uint64_t>& digits) {
    for (std::size_t j = n; j-- > 0;) {
      digits[j] = box.radix[j] == 0 ? 0 : index / box.radix[j];
      index -= digits[j] * box.radix[j];
    }
  };
  // Total exponent room left inside the box; every further factor of f uses
  // at least min_degree of it.
  auto slack = [&](const std::vector<std::uint64_t>& digits) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      s += static_cast<std::int64_t>((box.cap[j] - digits[j]) * box.step[j]);
    }
    return s;
  };

  std::vector<std::pair<std::uint64_t, std::uint32_t>> current{{0, 1 % static_cast<std::uint32_t>(p)}};
  const bool dense = box.size <= kDenseLimit;
  // Dense accumulator stores coefficient + 1 so that 0 marks "untouched".
  std::vector<std::uint32_t> acc_dense(dense ? box.size : 0, 0);
  std::unordered_map<std::uint64_t, std::uint32_t> acc_sparse;
  std::vector<std::uint64_t> touched;
  std::vector<std::uint64_t> digits(n);

  for (std::uint64_t step = 1; step <= e && !current.empty(); ++step) {
    const std::uint64_t remaining = e - step;
    touched.clear();
    acc_sparse.clear();
    for (const auto& [index, c] : current) {
      decode(index, digits);
      for (const auto& t : terms) {
        bool fits = true;
        for (std::size_t j = 0; j < n && fits; ++j) fits = digits[j] + t.digits[j] <= box.cap[j];
        if (!fits) continue;
        const std::uint64_t target = index + t.offset;
        const std::uint32_t v = static_cast<std::uint32_t>(std::uint64_t{c} * t.coeff % p);
        if (dense) {
          std::uint32_t& slot = acc_dense[target];
          if (slot == 0) {
            touched.push_back(target);
            slot = v + 1;
          } else {
            slot = static_cast<std::uint32_t>((std::uint64_t{slot} - 1 + v) % p) + 1;
          }
        } else {
          auto [it, inserted] = acc_sparse.try_emplace(target, v);
          if (inserted) {
            touched.push_back(target);
          } else {
            it->second = static_cast<std::uint32_t>((std::uint64_t{it->second} + v) % p);
          }
        }
      }
    }
    current.clear();
    for (std::uint64_t index : touched) {
      std::uint32_t c;
      if (dense) {
        c = acc_dense[index] - 1;
        acc_dense[index] = 0;
      } else {
        c = acc_sparse[index];
      }
      if (c == 0) continue;
      if (remaining > 0) {
        decode(index, digits);
        if (slack(digits) < static_cast<std::int64_t>(remaining) * min_degree) continue;
      }
      current.emplace_back(index, c);
    }
  }

  Monomial mono(n);
  for (const auto& [index, c] : current) {
    decode(index, digits);
    for (std::size_t j = 0; j < n; ++j) {
      mono[j] = static_cast<std::uint16_t>(digits[j] * box.step[j]);
    }
    out.add_term(mono, c);
  }
  return out;
}

bool fedder_is_f_pure(const SparsePoly& f, std::uint64_t p) {
  const PrimeField field(p);
  if (f.modulus() != field.characteristic()) {
    throw ArgumentError("polynomial is over F_" + std::to_string(f.modulus()) + ", not F_" +
                        std::to_string(p));
  }
  if (f.is_zero()) throw ArgumentError("fedder_is_f_pure: f must be nonzero");
  if (!f.coeff(Monomial(f.variable_count(), 0)).is_zero()) {
    throw ArgumentError("fedder_is_f_pure: f has a constant term; the hypersurface must pass through the origin");
  }
  // f^(p-1) is outside (x_1^p, ..., x_n^p) iff some term survives truncation
  // at exponent p.
  return !truncated_pow(f, p - 1, field.characteristic()).is_zero();
}

}  // namespace froblen

#include "froblen/semilinear.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <type_traits>

#include "froblen/errors.hpp"

namespace froblen {

template <class D>
TwistedMatrix<D>::TwistedMatrix(D domain, Matrix<T> a, std::uint64_t e)
    : dom_(std::move(domain)), a_(std::move(a)), e_(e) {
  if (!a_.is_square()) {
    throw ArgumentError("twisted matrix must be square, got " + std::to_string(a_.rows()) + "x" +
                        std::to_string(a_.cols()));
  }
  if (e_ == 0) throw ArgumentError("twist exponent e must be positive");
}

template <class D>
Vec<typename D::value_type> apply(const TwistedMatrix<D>& m, const Vec<typename D::value_type>& v) {
  if (v.size() != m.dim()) {
    throw ArgumentError("vector has length " + std::to_string(v.size()) + ", expected " +
                        std::to_string(m.dim()));
  }
  return m.matrix() * vec_frobenius(m.domain(), v, m.twist());
}

template <class D>
IterateMatrix<D> iterate(const TwistedMatrix<D>& m, std::uint64_t steps) {
  if (steps == 0) throw ArgumentError("iterate: step count must be positive");
  auto b = m.matrix();
  for (std::uint64_t j = 1; j < steps; ++j) {
    b = b * entry_frobenius(m.domain(), m.matrix(), m.twist() * j);
  }
  return {std::move(b), steps};
}

namespace {

template <class D>
void require_finite_field(const char* what) {
  if constexpr (!D::is_finite_field) {
    throw UnsupportedDomainError(std::string(what) + " requires a finite-field domain");
  }
}

}  // namespace

template <class D>
TwistedMatrix<D> change_basis(const TwistedMatrix<D>& m, const Matrix<typename D::value_type>& c) {
  if constexpr (!D::is_finite_field) {
    require_finite_field<D>("change_basis");
    return m;
  } else {
    if (c.rows() != m.dim() || c.cols() != m.dim()) {
      throw ArgumentError("change_basis: C must be " + std::to_string(m.dim()) + "x" +
                          std::to_string(m.dim()));
    }
    const auto c_inv = inverse(m.domain(), c);
    return TwistedMatrix<D>(m.domain(), c * m.matrix() * entry_frobenius(m.domain(), c_inv, m.twist()),
                            m.twist());
  }
}

namespace {

template <class D>
Subspace<D> column_space(const D& dom, const Matrix<typename D::value_type>& b) {
  Subspace<D> out(dom, b.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) out.insert(b.column(j));
  return out;
}

}  // namespace

template <class D>
Subspace<D> stable_subspace(const TwistedMatrix<D>& m) {
  if constexpr (!D::is_finite_field) {
    require_finite_field<D>("stable_subspace");
    return Subspace<D>(m.domain(), 0);
  } else {
    auto b = m.matrix();
    std::size_t r = rank(b);
    for (std::uint64_t step = 1;; ++step) {
      auto next = b * entry_frobenius(m.domain(), m.matrix(), m.twist() * step);
      const std::size_t r_next = rank(next);
      if (r_next == r) return column_space(m.domain(), b);
      b = std::move(next);
      r = r_next;
    }
  }
}

template <class D>
TwistedMatrix<D> restrict_to_stable(const TwistedMatrix<D>& m) {
  if constexpr (!D::is_finite_field) {
    require_finite_field<D>("restrict_to_stable");
    return m;
  } else {
    const auto s = stable_subspace(m);
    const std::size_t k = s.dim();
    if (k == 0) throw ArgumentError("restrict_to_stable: the stable part is zero");
    Matrix<typename D::value_type> a(k, k, m.domain().zero());
    for (std::size_t j = 0; j < k; ++j) {
      const auto coords = s.coordinates(froblen::apply(m, s.basis()[j]));
      for (std::size_t i = 0; i < k; ++i) a(i, j) = coords[i];
    }
    return TwistedMatrix<D>(m.domain(), std::move(a), m.twist());
  }
}

template <class D>
bool is_nilpotent(const TwistedMatrix<D>& m) {
  require_finite_field<D>("is_nilpotent");
  return iterate(m, m.dim()).matrix.is_zero();
}

FlagOptions default_flag_options() {
  FlagOptions opts;
  if (const char* env = std::getenv("FROBLEN_MAX_DIM"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0 || v > 64) {
      throw ArgumentError(std::string("FROBLEN_MAX_DIM must be an integer in [1, 64], got \"") + env +
                          "\"");
    }
    opts.max_dim = static_cast<unsigned>(v);
  }
  return opts;
}

// --- Krylov closures --------------------------------------------------------------

template <class D>
Subspace<D> krylov_closure(const TwistedMatrix<D>& m, const Subspace<D>& u,
                           const Vec<typename D::value_type>& v) {
  if constexpr (!D::is_finite_field) {
    require_finite_field<D>("krylov_closure");
    return u;
  } else {
    Subspace<D> w = u;
    auto cur = v;
    while (w.insert(cur)) cur = froblen::apply(m, cur);
    return w;
  }
}

template <class D>
Subspace<D> krylov_closure(const TwistedMatrix<D>& m, const Vec<typename D::value_type>& v) {
  if (is_zero_vector(v)) throw ArgumentError("krylov_closure: v must be nonzero");
  return krylov_closure(m, Subspace<D>(m.domain(), m.dim()), v);
}

// --- flag search ------------------------------------------------------------------

namespace {

// Dense polynomials over F_p, low degree first, for characteristic
// polynomials of at most cubic degree.
using SmallPoly = std::vector<std::uint64_t>;

void trim(SmallPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

SmallPoly poly_mod(SmallPoly a, const SmallPoly& f, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = pow_mod(f.back(), p - 2, p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - f.size();
    for (std::size_t i = 0; i < f.size(); ++i) {
      a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
    }
    trim(a);
  }
  return a;
}

SmallPoly poly_mulmod(const SmallPoly& a, const SmallPoly& b, const SmallPoly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  SmallPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(out), f, p);
}

SmallPoly poly_gcd(SmallPoly a, SmallPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  if (a.empty()) return a;
  const std::uint64_t inv = pow_mod(a.back(), p - 2, p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

// Exact quotient a / b with b monic.
SmallPoly poly_div(SmallPoly a, const SmallPoly& b, std::uint64_t p) {
  trim(a);
  if (a.size() < b.size()) return {};
  SmallPoly q(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size()) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + (p - c) * b[i]) % p;
    trim(a);
  }
  return q;
}

// Number of irreducible factors, with multiplicity, of a monic f with
// f(0) != 0 and deg f <= 3.
unsigned factor_count(const SmallPoly& f, std::uint64_t p) {
  if (f.size() <= 1) return 0;
  // x^p mod f by square-and-multiply.
  SmallPoly xp{1};
  SmallPoly base = poly_mod({0, 1}, f, p);
  for (std::uint64_t e = p; e > 0; e >>= 1) {
    if (e & 1) xp = poly_mulmod(xp, base, f, p);
    base = poly_mulmod(base, base, f, p);
  }
  xp.resize(std::max<std::size_t>(xp.size(), 2), 0);
  xp[1] = (xp[1] + p - 1) % p;
  const SmallPoly g = poly_gcd(f, xp, p);
  const std::size_t roots = g.empty() ? 0 : g.size() - 1;
  if (roots == 0) return 1;  // no roots and degree <= 3: irreducible
  return static_cast<unsigned>(roots) + factor_count(poly_div(f, g, p), p);
}

unsigned linear_length(const Matrix<FieldElem>& a) {
  const std::uint64_t p = a(0, 0).modulus();
  const std::size_t n = a.rows();
  auto v = [&](std::size_t i, std::size_t j) { return std::uint64_t{a(i, j).value()}; };
  auto neg = [&](std::uint64_t x) { return (p - x % p) % p; };
  SmallPoly f;
  if (n == 1) {
    f = {neg(v(0, 0)), 1};
  } else if (n == 2) {
    const std::uint64_t det = (v(0, 0) * v(1, 1) % p + neg(v(0, 1) * v(1, 0) % p)) % p;
    f = {det, neg(v(0, 0) + v(1, 1)), 1};
  } else {
    const FieldElem det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                          a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                          a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    const FieldElem c2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) -
                         a(0, 2) * a(2, 0) + a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    f = {neg(det.value()), c2.value(), neg(v(0, 0) + v(1, 1) + v(2, 2)), 1};
  }
  // Factors of x belong to the nilpotent part and contribute nothing.
  while (f.size() > 1 && f[0] == 0) f.erase(f.begin());
  return factor_count(f, p);
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

template <class D>
class FlagSearch {
 public:
  using T = typename D::value_type;

  // `f` must be bijective.
  FlagSearch(const TwistedMatrix<D>& f, std::uint64_t budget) : f_(f), budget_(budget) {}

  unsigned run() { return best(Subspace<D>(f_.domain(), f_.dim())); }

 private:
  unsigned best(const Subspace<D>& u) {
    const std::size_t k = f_.dim();
    if (u.dim() == k) return 0;
    const auto key = u.key();
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    const unsigned bound = static_cast<unsigned>(k - u.dim());
    const D& dom = f_.domain();
    const std::uint64_t q = dom.size();
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < k; ++i) {
      if (!std::binary_search(u.pivots().begin(), u.pivots().end(), i)) free.push_back(i);
    }

    unsigned result = 0;
    std::set<std::vector<std::uint64_t>> seen;
    Vec<T> v(k, dom.zero());
    // Projective points of the coordinate complement: first nonzero entry 1.
    for (std::size_t lead = 0; lead < free.size() && result < bound; ++lead) {
      const std::size_t tail = free.size() - lead - 1;
      const std::uint64_t count = saturating_pow(q, tail);
      for (std::uint64_t idx = 0; idx < count && result < bound; ++idx) {
        if (++used_ > budget_) {
          throw ResourceError("flag search exceeded the budget of " + std::to_string(budget_) +
                              " candidate vectors");
        }
        std::fill(v.begin(), v.end(), dom.zero());
        v[free[lead]] = dom.one();
        std::uint64_t rest = idx;
        for (std::size_t t = lead + 1; t < free.size(); ++t) {
          v[free[t]] = dom.element(rest % q);
          rest /= q;
        }
        auto w = krylov_closure(f_, u, v);
        if (!seen.insert(w.key()).second) continue;
        if (quotient_is_nilpotent(u, w)) continue;
        result = std::max(result, 1 + best(w));
      }
    }
    memo_.emplace(key, result);
    return result;
  }

  // f acts nilpotently on w/u iff f^j(w) lies in u for j = dim(w/u).
  bool quotient_is_nilpotent(const Subspace<D>& u, const Subspace<D>& w) const {
    Subspace<D> image = w;
    for (std::size_t j = 0; j < w.dim() - u.dim(); ++j) {
      if (u.contains(image)) return true;
      Subspace<D> next(f_.domain(), f_.dim());
      for (const auto& b : image.basis()) next.insert(froblen::apply(f_, b));
      image = std::move(next);
    }
    return u.contains(image);
  }

  const TwistedMatrix<D>& f_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  std::map<std::vector<std::uint64_t>, unsigned> memo_;
};

template <class D>
unsigned search_block(const TwistedMatrix<D>& block, const FlagOptions& opts, bool fast_path) {
  if (block.dim() > opts.max_dim) {
    throw ResourceError("flag search: block of dimension " + std::to_string(block.dim()) +
                        " exceeds the cap " + std::to_string(opts.max_dim) +
                        " (set FROBLEN_MAX_DIM to raise it)");
  }
  if constexpr (std::is_same_v<D, PrimeField>) {
    if (fast_path && block.dim() <= 3) return linear_length(block.matrix());
  }
  if (is_nilpotent(block)) return 0;
  const auto restricted = restrict_to_stable(block);
  const std::uint64_t q = block.domain().size();
  const std::uint64_t points = saturating_pow(q, restricted.dim());
  if (points / (q - 1) > opts.max_search) {
    throw ResourceError("flag search: " + std::to_string(q) + "^" +
                        std::to_string(restricted.dim()) + " vectors exceeds the search budget");
  }
  return FlagSearch<D>(restricted, opts.max_search).run();
}

// Connected components of the graph joining i and j when A[i][j] or A[j][i]
// is nonzero. Each component spans an f-stable coordinate subspace.
template <class T>
std::vector<std::vector<std::size_t>> coordinate_blocks(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(i, j).is_zero()) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

template <class D>
unsigned flag_length(const TwistedMatrix<D>& m, const FlagOptions& opts) {
  if constexpr (!D::is_finite_field) {
    require_finite_field<D>("flag_length");
    return 0;
  } else {
    if (!opts.decompose_blocks) return search_block(m, opts, opts.linear_fast_path);
    unsigned total = 0;
    for (const auto& block : coordinate_blocks(m.matrix())) {
      Matrix<typename D::value_type> sub(block.size(), block.size(), m.domain().zero());
      for (std::size_t i = 0; i < block.size(); ++i) {
        for (std::size_t j = 0; j < block.size(); ++j) sub(i, j) = m.matrix()(block[i], block[j]);
      }
      total += search_block(TwistedMatrix<D>(m.domain(), std::move(sub), m.twist()), opts,
                            opts.linear_fast_path);
    }
    return total;
  }
}

template <class D>
unsigned flag_length_exhaustive(const TwistedMatrix<D>& m, const FlagOptions& opts) {
  if constexpr (!D::is_finite_field) {
    require_finite_field<D>("flag_length_exhaustive");
    return 0;
  } else {
    return search_block(m, opts, false);
  }
}

template <class D>
bool is_triangularizable_nonzero_diag(const TwistedMatrix<D>& m, const FlagOptions& opts) {
  return flag_length(m, opts) == m.dim();
}

// --- finite order -------------------------------------------------------------------

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(u128{a} * b % m);
}

std::uint64_t pow_mod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod64(r, b, m);
    b = mul_mod64(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto g = [&](std::uint64_t z) { return (mul_mod64(z, z, n) + c) % n; };
    while (d == 1) {
      x = g(x);
      y = g(g(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  for (std::uint64_t sp = 2; sp < 1000 && sp * sp <= n; ++sp) {
    while (n % sp == 0) {
      ++out[sp];
      n /= sp;
    }
  }
  if (n == 1) return;
  if (is_prime64(n)) {
    ++out[n];
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

template <class D>
Matrix<typename D::value_type> power_factored(const D& dom, Matrix<typename D::value_type> base,
                                              const std::map<std::uint64_t, unsigned>& exps) {
  for (const auto& [prime, k] : exps) {
    for (unsigned i = 0; i < k; ++i) base = matrix_power(dom, std::move(base), prime);
  }
  return base;
}

// Multiplicative order of an invertible n x n matrix over a field with Q
// elements. Every such order divides p^a * lcm(Q - 1, ..., Q^n - 1), p^a >= n.
template <class D>
std::uint64_t matrix_order(const D& dom, const Matrix<typename D::value_type>& nmat, std::uint64_t Q) {
  const std::size_t n = nmat.rows();
  std::map<std::uint64_t, unsigned> bound;
  std::uint64_t qi = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    qi *= Q;
    std::map<std::uint64_t, unsigned> f;
    factor_into(qi - 1, f);
    for (const auto& [prime, k] : f) bound[prime] = std::max(bound[prime], k);
  }
  const std::uint64_t p = dom.characteristic();
  unsigned a = 0;
  for (std::uint64_t pa = 1; pa < n; pa *= p) ++a;
  if (a > 0) bound[p] = std::max(bound[p], a);

  for (auto& [prime, k] : bound) {
    while (k > 0) {
      --k;
      if (!is_identity(dom, power_factored(dom, nmat, bound))) {
        ++k;
        break;
      }
    }
  }
  std::uint64_t order = 1;
  for (const auto& [prime, k] : bound) {
    for (unsigned i = 0; i < k; ++i) {
      if (order > UINT64_MAX / prime) throw ResourceError("matrix order overflows 64 bits");
      order *= prime;
    }
  }
  return order;
}

}  // namespace

template <class D>
std::uint64_t finite_order(const TwistedMatrix<D>& m) {
  if constexpr (!D::is_finite_field) {
    require_finite_field<D>("finite_order");
    return 0;
  } else {
    const D& dom = m.domain();
    const std::size_t n = m.dim();
    if (rank(m.matrix()) < n) throw ArgumentError("finite_order: the matrix is singular");
    const std::uint64_t Q = dom.size();
    if (saturating_pow(Q, n) > (std::uint64_t{1} << 62)) {
      throw ResourceError("finite_order: |F|^dim = " + std::to_string(Q) + "^" + std::to_string(n) +
                          " exceeds 2^62");
    }
    // Entry twists repeat with period t, so B_{jt + r} = N^j B_r with N = B_t.
    const std::uint64_t deg = dom.degree();
    const std::uint64_t t = deg / std::gcd(deg, m.twist());
    std::vector<Matrix<typename D::value_type>> head{identity_matrix(dom, n)};
    for (std::uint64_t r = 1; r <= t; ++r) head.push_back(iterate(m, r).matrix);
    const auto& nmat = head[t];

    const std::uint64_t o = matrix_order(dom, nmat, Q);
    if (o > UINT64_MAX / t) throw ResourceError("finite_order overflows 64 bits");
    std::uint64_t s = o * t;
    auto b_at = [&](std::uint64_t d) { return matrix_power(dom, nmat, d / t) * head[d % t]; };
    // {s : B_s = I} is closed under differences, so it is s0 * N and s0 | s.
    std::map<std::uint64_t, unsigned> fs;
    factor_into(s, fs);
    for (const auto& [prime, k] : fs) {
      for (unsigned i = 0; i < k && s % prime == 0; ++i) {
        if (!is_identity(dom, b_at(s / prime))) break;
        s /= prime;
      }
    }
    return s;
  }
}

// --- cyclic determinant ---------------------------------------------------------------

template <class D>
typename D::value_type cyclic_det3(const TwistedMatrix<D>& m, const Vec<typename D::value_type>& v) {
  if (m.dim() != 3) throw ArgumentError("cyclic_det3 needs a 3x3 map, got dimension " +
                                        std::to_string(m.dim()));
  const auto c0 = v;
  const auto c1 = froblen::apply(m, c0);
  const auto c2 = froblen::apply(m, c1);
  return c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1]) +
         c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]);
}

// --- the 7k+4 determinant ---------------------------------------------------------------

namespace {

std::uint64_t require_7k4(std::uint64_t p) {
  if (!is_prime(p) || p % 7 != 4) {
    throw ArgumentError("p must be a prime congruent to 4 mod 7, got " + std::to_string(p));
  }
  return (p - 4) / 7;
}

}  // namespace

UniPoly delta_prime_expansion(std::uint64_t p, const UniPoly& a, const UniPoly& b, const UniPoly& c) {
  const std::uint64_t k = require_7k4(p);
  for (const UniPoly* x : {&a, &b, &c}) {
    if (x->modulus() != p) throw ArgumentError("delta_prime_expansion: polynomial not over F_p");
  }
  const UniPoly ap = uni_frobenius(a, 1), ap2 = uni_frobenius(a, 2);
  const UniPoly bp = uni_frobenius(b, 1), bp2 = uni_frobenius(b, 2);
  const UniPoly cp = uni_frobenius(c, 1), cp2 = uni_frobenius(c, 2);

  UniPoly out = a * ap * ap2;
  out -= (a * bp * cp2).shifted((3 * k + 2) * p);
  out -= (ap2 * b * cp).shifted(3 * k + 2);
  out += (c * cp * cp2).shifted((3 * k + 2) * p + k + 1);
  out += (b * bp * bp2).shifted((2 * k + 1) * p + 3 * k + 2);
  out -= (ap * bp2 * c).shifted((2 * k + 1) * p + k + 1);
  return out;
}

std::vector<Degree> delta_prime_term_degrees(std::uint64_t p, Degree alpha, Degree beta, Degree gamma) {
  const auto k = static_cast<std::int64_t>(require_7k4(p));
  const auto q = static_cast<std::int64_t>(p);
  const std::int64_t q2 = q * q;
  return {
      alpha.times(q2 + q + 1),
      gamma.times(q2) + beta.times(q) + alpha + (3 * k + 2) * q,
      alpha.times(q2) + gamma.times(q) + beta + (3 * k + 2),
      gamma.times(q2 + q + 1) + ((3 * k + 2) * q + k + 1),
      beta.times(q2 + q + 1) + ((2 * k + 1) * q + 3 * k + 2),
      beta.times(q2) + alpha.times(q) + gamma + ((2 * k + 1) * q + k + 1),
  };
}

std::optional<unsigned> dominant_term(Degree alpha, Degree beta, Degree gamma) {
  if (alpha.is_minus_infinity() && beta.is_minus_infinity() && gamma.is_minus_infinity()) {
    return std::nullopt;
  }
  if (gamma >= std::max(alpha, beta)) return 3;
  if (beta > gamma && beta >= alpha) return 4;
  return 0;
}

DominanceReport dominance_report(std::uint64_t p, unsigned max_deg) {
  require_7k4(p);
  DominanceReport report;
  for (unsigned al = 0; al <= max_deg; ++al) {
    for (unsigned be = 0; be <= max_deg; ++be) {
      for (unsigned ga = 0; ga <= max_deg; ++ga) {
        const Degree a(al), b(be), c(ga);
        const auto which = dominant_term(a, b, c);
        const auto degs = delta_prime_term_degrees(p, a, b, c);
        if (!which || degs[*which].is_minus_infinity()) {
          ++report.triples_skipped;
          std::ostringstream os;
          os << "skipped (" << al << "," << be << "," << ga << "): designated term is zero";
          report.warnings.push_back(os.str());
          continue;
        }
        ++report.triples_checked;
        for (unsigned i = 0; i < degs.size(); ++i) {
          if (i == *which || degs[i] < degs[*which]) continue;
          report.passed = false;
          std::ostringstream os;
          os << "(" << al << "," << be << "," << ga << "): term " << i << " degree " << degs[i]
             << " >= designated term " << *which << " degree " << degs[*which];
          report.failures.push_back(os.str());
        }
      }
    }
  }
  return report;
}

bool verify_dominance(std::uint64_t p, unsigned max_deg) { return dominance_report(p, max_deg).passed; }

// --- instantiations ---------------------------------------------------------------------

#define FROBLEN_INSTANTIATE(D)                                                                    \
  template class TwistedMatrix<D>;                                                                \
  template Vec<D::value_type> apply(const TwistedMatrix<D>&, const Vec<D::value_type>&);          \
  template IterateMatrix<D> iterate(const TwistedMatrix<D>&, std::uint64_t);                      \
  template TwistedMatrix<D> change_basis(const TwistedMatrix<D>&, const Matrix<D::value_type>&);  \
  template Subspace<D> stable_subspace(const TwistedMatrix<D>&);                                  \
  template TwistedMatrix<D> restrict_to_stable(const TwistedMatrix<D>&);                          \
  template bool is_nilpotent(const TwistedMatrix<D>&);                                            \
  template unsigned flag_length(const TwistedMatrix<D>&, const FlagOptions&);                     \
  template unsigned flag_length_exhaustive(const TwistedMatrix<D>&, const FlagOptions&);          \
  template bool is_triangularizable_nonzero_diag(const TwistedMatrix<D>&, const FlagOptions&);    \
  template std::uint64_t finite_order(const TwistedMatrix<D>&);                                   \
  template Subspace<D> krylov_closure(const TwistedMatrix<D>&, const Vec<D::value_type>&);        \
  template Subspace<D> krylov_closure(const TwistedMatrix<D>&, const Subspace<D>&,                \
                                      const Vec<D::value_type>&);                                 \
  template D::value_type cyclic_det3(const TwistedMatrix<D>&, const Vec<D::value_type>&);

FROBLEN_INSTANTIATE(PrimeField)
FROBLEN_INSTANTIATE(ExtField)
FROBLEN_INSTANTIATE(PolyRing)

#undef FROBLEN_INSTANTIATE

}  // namespace froblen

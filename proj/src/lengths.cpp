#include "froblen/lengths.hpp"

#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "froblen/errors.hpp"
#include "froblen/fermat.hpp"
#include "froblen/semilinear.hpp"

namespace froblen {

bool LengthReport::chain_holds() const {
  auto le = [](const std::optional<std::uint64_t>& a, const std::optional<std::uint64_t>& b) {
    return !a || !b || *a <= *b;
  };
  for (const auto& [e, v] : l_Fe) {
    if (!le(l_F, v) || !le(v, l_Finf)) return false;
  }
  return le(l_F, l_Finf) && le(l_Finf, l_D) && le(l_F, l_D);
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) {
      throw ResourceError(std::to_string(base) + "^" + std::to_string(exp) + " overflows 64 bits");
    }
    out *= base;
  }
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) throw ResourceError("bound overflows 64 bits");
  return a + b;
}

template <class... Args>
std::string join_args(const Args&... args) {
  std::ostringstream os;
  const char* sep = "";
  ((os << sep << args, sep = ", "), ...);
  return os.str();
}

}  // namespace

std::uint64_t hypersurface_bound(std::uint64_t n_vars, std::uint64_t deg) {
  if (n_vars < 1 || deg < 1) throw ArgumentError("hypersurface_bound needs n_vars >= 1 and deg >= 1");
  return checked_pow(checked_add(deg, 1), n_vars) - 1;
}

std::uint64_t bernstein_bound(std::uint64_t n_vars, const std::vector<std::uint64_t>& degrees,
                              std::uint64_t j) {
  const std::uint64_t t = degrees.size();
  if (n_vars < 1) throw ArgumentError("bernstein_bound needs n_vars >= 1");
  if (j < 1 || j > t) {
    throw ArgumentError("bernstein_bound needs 1 <= j <= t (j = " + std::to_string(j) +
                        ", t = " + std::to_string(t) + ")");
  }
  constexpr std::uint64_t kMaxMultisets = 10'000'000;
  std::uint64_t visited = 0;
  std::uint64_t total = 0;
  // Non-decreasing index sequences of length j.
  auto rec = [&](auto&& self, std::size_t from, std::uint64_t left, std::uint64_t deg_sum) -> void {
    if (left == 0) {
      if (++visited > kMaxMultisets) {
        throw ResourceError("bernstein_bound: more than " + std::to_string(kMaxMultisets) +
                            " multisets");
      }
      total = checked_add(total, checked_pow(checked_add(deg_sum, 1), n_vars));
      return;
    }
    for (std::size_t i = from; i < t; ++i) self(self, i, left - 1, checked_add(deg_sum, degrees[i]));
  };
  rec(rec, 0, j, 0);
  return total - 1;
}

std::uint64_t d_length_isolated(std::uint64_t stable_dim, std::uint64_t c) {
  if (c < 1) throw ArgumentError("the number of minimal primes c must be positive");
  return checked_add(stable_dim, c);
}

std::uint64_t thm47_upper(std::uint64_t c, const std::vector<std::uint64_t>& curve_local_stable_dims,
                          std::uint64_t top_stable_dim) {
  if (c < 1) throw ArgumentError("the number of minimal primes c must be positive");
  std::uint64_t total = c;
  for (std::uint64_t v : curve_local_stable_dims) total = checked_add(total, v);
  return checked_add(total, top_stable_dim);
}

Fermat7Expected fermat7_expected(std::uint64_t p) {
  switch (p % 7) {
    case 1:
      return {16, 16, 16};
    case 2:
    case 4:
      return {p % 3 == 1 ? 7u : 5u, 7, 7};
    default:
      return {1, 1, 1};
  }
}

LengthReport fermat7_lengths(std::uint64_t p) {
  const FermatContext ctx(7, 2, p);
  LengthReport rep;
  rep.p = p;
  rep.n = 7;
  rep.d = 2;
  rep.c = 1;

  const std::uint64_t counted = stable_dim_by_count(ctx);
  const std::uint64_t from_matrix = stable_subspace(full_matrix(ctx)).dim();
  rep.evidence.push_back({"stable_dim_by_count", join_args("n=7", "d=2", "p=" + std::to_string(p)),
                          std::to_string(counted)});
  rep.evidence.push_back({"stable_subspace(full_matrix)", join_args("n=7", "d=2", "p=" + std::to_string(p)),
                          std::to_string(from_matrix)});
  if (counted != from_matrix) {
    throw std::logic_error("stable dimension by counting (" + std::to_string(counted) +
                           ") disagrees with the matrix (" + std::to_string(from_matrix) + ")");
  }
  rep.stable_dim = counted;

  const auto orbits = cycles(ctx);
  std::uint64_t flag_sum = 0;
  std::uint64_t period = 1;
  std::uint64_t orbit_dim = 0;
  for (const auto& orbit : orbits) {
    const auto m = cycle_matrix(orbit, ctx);
    flag_sum += flag_length(m);
    period = std::lcm(period, finite_order(m));
    orbit_dim += orbit.members.size();
  }
  if (orbit_dim != counted) {
    throw std::logic_error("orbits cover " + std::to_string(orbit_dim) + " elements, expected " +
                           std::to_string(counted));
  }
  rep.l_F = 1 + flag_sum;
  rep.evidence.push_back({"flag_length(cycle_matrix)",
                          join_args("cycles=" + std::to_string(orbits.size()), "e=1"),
                          "1 + " + std::to_string(flag_sum)});

  // B_period = I on every cycle, so the period-th iterate is diagonal.
  std::uint64_t iter_sum = 0;
  for (const auto& orbit : orbits) {
    const auto m = cycle_matrix(orbit, ctx);
    const TwistedMatrix<PrimeField> it(ctx.field(), iterate(m, period).matrix, period);
    iter_sum += flag_length(it);
  }
  rep.l_Fe[1] = *rep.l_F;
  rep.l_Fe[period] = 1 + iter_sum;
  rep.evidence.push_back({"finite_order(cycle_matrix)", "lcm over cycles", std::to_string(period)});
  rep.evidence.push_back({"flag_length(iterate)", "e=" + std::to_string(period),
                          "1 + " + std::to_string(iter_sum)});
  rep.l_Finf = rep.l_Fe[period];
  rep.l_D = d_length_isolated(counted, rep.c);
  rep.evidence.push_back({"d_length_isolated", join_args(counted, rep.c), std::to_string(*rep.l_D)});

  const auto expected = fermat7_expected(p);
  rep.table_match = expected.l_F == *rep.l_F && expected.l_Finf == *rep.l_Finf && expected.l_D == *rep.l_D;
  std::ostringstream os;
  os << "p mod 7 = " << p % 7 << ", p mod 3 = " << p % 3 << " -> (" << expected.l_F << ","
     << expected.l_Finf << "," << expected.l_D << ")";
  rep.evidence.push_back({"closed_form_check", os.str(), *rep.table_match ? "match" : "MISMATCH"});
  return rep;
}

LengthReport prop75_lengths(std::uint64_t p, std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw ArgumentError("trials must be positive");
  const auto m = localized75_matrix(p);
  LengthReport rep;
  rep.p = p;
  rep.n = 7;
  rep.d = 3;
  rep.c = 1;

  // The degree-0 classes are all nilpotent, so the stable part at the
  // maximal ideal is zero; the six-dimensional V lives at the curve prime
  // t = 0 and splits into two 3-cycles.
  bool all_nilpotent = true;
  for (const auto& w : weighted75_deg0_basis(p)) all_nilpotent = all_nilpotent && weighted75_is_nilpotent(w, p);
  rep.evidence.push_back({"weighted75_is_nilpotent", "six degree-0 classes", all_nilpotent ? "all" : "not all"});
  if (!all_nilpotent) throw std::logic_error("a degree-0 class of t x^7 + t y^7 + z^7 is not nilpotent");
  const unsigned cycles_count = 2;
  const std::uint64_t v_dim = 3 * cycles_count;
  rep.stable_dim = 0;

  const auto b3 = iterate(m, 3).matrix;
  bool diag_ok = b3.is_diagonal();
  for (std::size_t i = 0; i < 3; ++i) diag_ok = diag_ok && !b3(i, i).is_zero();
  rep.evidence.push_back({"iterate(localized75_matrix, 3)", "p=" + std::to_string(p),
                          diag_ok ? "diagonal, nonzero diagonal" : "not diagonal"});
  if (diag_ok) {
    rep.l_Fe[3] = 1 + v_dim;
    rep.l_Finf = 1 + v_dim;
    // The upper bound meets l_Finf <= l_D, so it is the value.
    rep.l_D = thm47_upper(rep.c, {v_dim}, *rep.stable_dim);
    rep.evidence.push_back({"thm47_upper", join_args(rep.c, "[" + std::to_string(v_dim) + "]", 0),
                            std::to_string(*rep.l_D)});
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coeff(0, static_cast<std::uint32_t>(p - 1));
  auto random_poly = [&] {
    UniPoly f(static_cast<std::uint32_t>(p));
    for (std::uint64_t deg = 0; deg <= 3; ++deg) f.add_term(deg, coeff(rng));
    return f;
  };
  std::uint64_t zeros = 0;
  for (unsigned cyc = 0; cyc < cycles_count; ++cyc) {
    for (std::uint64_t i = 0; i < trials; ++i) {
      Vec<UniPoly> v{random_poly(), random_poly(), random_poly()};
      if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) {
        --i;
        continue;
      }
      if (cyclic_det3(m, v).is_zero()) ++zeros;
    }
  }
  rep.evidence.push_back({"cyclic_det3", join_args("trials=" + std::to_string(trials) + " per cycle",
                                                   "seed=" + std::to_string(seed), "deg<=3"),
                          std::to_string(zeros) + " zero determinants"});
  const bool dominance = verify_dominance(p, 10);
  rep.evidence.push_back({"verify_dominance", join_args(p, 10), dominance ? "true" : "false"});
  if (zeros == 0 && dominance) {
    rep.l_F = 1 + cycles_count;
    rep.l_Fe[1] = *rep.l_F;
    rep.evidence.push_back({"l_F", "each cycle has no proper stable subspace",
                            "certified under dominance verification + randomized sampling"});
  }
  return rep;
}

unsigned calabi_yau_d_length(const SparsePoly& f, std::uint64_t p) {
  const Degree deg = f.total_degree();
  if (deg != Degree(static_cast<std::int64_t>(f.variable_count()))) {
    throw ArgumentError("calabi_yau_d_length needs deg f = number of variables (" +
                        std::to_string(f.variable_count()) + ")");
  }
  return fedder_is_f_pure(f, p) ? 2 : 1;
}

}  // namespace froblen

// froblen: command-line front end.
//
// Exit codes: 0 ok, 1 usage, 2 precondition, 3 resource limit, 4 mismatch
// against the closed-form tables.

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "froblen/errors.hpp"
#include "froblen/fermat.hpp"
#include "froblen/ff.hpp"
#include "froblen/json_io.hpp"
#include "froblen/lengths.hpp"
#include "froblen/poly.hpp"
#include "froblen/semilinear.hpp"

namespace {

using namespace froblen;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitResource = 3;
constexpr int kExitMismatch = 4;

json read_json_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    buf << in.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ArgumentError(std::string("invalid JSON: ") + e.what());
  }
}

template <class F>
decltype(auto) visit_matrix(const AnyTwistedMatrix& m, F&& f) {
  return std::visit(std::forward<F>(f), m);
}

// --- fermat7-sweep -----------------------------------------------------------

struct SweepConfig {
  std::uint64_t lo = 2;
  std::uint64_t hi = 300;
  std::uint64_t modulus = 21;
  std::vector<std::uint64_t> residues;  // empty: no filter
  std::string format = "json";
  std::string out = "-";
  unsigned jobs = 0;  // 0: hardware concurrency
};

struct SweepResult {
  std::optional<LengthReport> report;
  std::string error;
  int error_code = 0;
};

int run_sweep(const SweepConfig& cfg) {
  if (cfg.lo > cfg.hi) throw ArgumentError("sweep needs lo <= hi");
  if (cfg.modulus == 0) throw ArgumentError("--modulus must be positive");
  for (auto r : cfg.residues) {
    if (r >= cfg.modulus) {
      throw ArgumentError("residue " + std::to_string(r) + " is not below the modulus " +
                          std::to_string(cfg.modulus));
    }
  }

  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = cfg.lo; p < cfg.hi; ++p) {
    if (!is_prime(p)) continue;
    if (!cfg.residues.empty() &&
        std::find(cfg.residues.begin(), cfg.residues.end(), p % cfg.modulus) == cfg.residues.end()) {
      continue;
    }
    if (p == 7) {
      std::cerr << "note: skipping p = 7 (p divides the Fermat degree)\n";
      continue;
    }
    primes.push_back(p);
  }

  std::vector<SweepResult> results(primes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < primes.size(); i = next++) {
      try {
        results[i].report = fermat7_lengths(primes[i]);
      } catch (const ResourceError& e) {
        results[i].error = e.what();
        results[i].error_code = kExitResource;
      } catch (const std::exception& e) {
        results[i].error = e.what();
        results[i].error_code = kExitPrecondition;
      }
    }
  };
  unsigned jobs = cfg.jobs != 0 ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(primes.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ofstream file;
  if (cfg.out != "-") {
    file.open(cfg.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + cfg.out + " for writing");
  }
  std::ostream& os = cfg.out == "-" ? std::cout : file;
  if (cfg.format == "csv") os << csv_header() << '\n';

  int code = 0;
  std::cerr << "   p  p%21  dim  l_F  l_Finf  l_D  match\n";
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto& r = results[i];
    if (!r.report) {
      std::cerr << "error: p = " << primes[i] << ": " << r.error << '\n';
      code = std::max(code, r.error_code);
      continue;
    }
    const auto& rep = *r.report;
    if (cfg.format == "csv") {
      os << csv_row(rep) << '\n';
    } else {
      os << to_json(rep).dump() << '\n';
    }
    std::ostringstream line;
    line << std::setw(4) << rep.p << std::setw(6) << rep.p % 21 << std::setw(5) << *rep.stable_dim
         << std::setw(5) << *rep.l_F << std::setw(8) << *rep.l_Finf << std::setw(5) << *rep.l_D << "  "
         << (*rep.table_match ? "yes" : "NO");
    std::cerr << line.str() << '\n';
    if (!*rep.table_match) {
      const auto want = fermat7_expected(rep.p);
      std::cerr << "mismatch at p = " << rep.p << ": computed (" << *rep.l_F << "," << *rep.l_Finf << ","
                << *rep.l_D << "), expected (" << want.l_F << "," << want.l_Finf << "," << want.l_D
                << ")\n";
      code = std::max(code, kExitMismatch);
    }
  }
  os.flush();
  return code;
}

int run(int argc, char** argv) {
  CLI::App app{"Lengths of local cohomology in characteristic p"};
  app.require_subcommand(1);

  // stable-dim
  unsigned sd_n = 0, sd_d = 0;
  std::uint64_t sd_p = 0;
  auto* stable = app.add_subcommand("stable-dim", "Dimension of the Frobenius-stable part for a Fermat hypersurface");
  stable->add_option("--n", sd_n, "Fermat degree")->required();
  stable->add_option("--d", sd_d, "number of variables minus one")->required();
  stable->add_option("--p", sd_p, "prime")->required();

  // fermat7-sweep
  SweepConfig sweep_cfg;
  auto* sweep = app.add_subcommand("fermat7-sweep", "Lengths for x^7+y^7+z^7 over a prime range");
  sweep->add_option("--lo", sweep_cfg.lo, "smallest prime considered (inclusive)");
  sweep->add_option("--hi", sweep_cfg.hi, "upper end (exclusive)");
  sweep->add_option("--modulus", sweep_cfg.modulus, "modulus for --residues");
  sweep->add_option("--residues", sweep_cfg.residues, "keep only primes with these residues")->delimiter(',');
  sweep->add_option("--format", sweep_cfg.format)->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", sweep_cfg.out, "output path, - for stdout");
  sweep->add_option("--jobs", sweep_cfg.jobs, "worker threads (0: all cores)");

  // fermat7
  std::uint64_t f7_p = 0;
  auto* f7 = app.add_subcommand("fermat7", "Length report for x^7+y^7+z^7 at one prime");
  f7->add_option("--p", f7_p)->required();

  // bound
  std::uint64_t b_vars = 0, b_j = 0;
  std::vector<std::uint64_t> b_degrees;
  bool b_hyper = false;
  auto* bound = app.add_subcommand("bound", "Upper bounds on the D-module length");
  bound->add_option("--vars", b_vars, "number of variables")->required();
  bound->add_option("--degrees", b_degrees, "degrees of the defining polynomials")->delimiter(',')->required();
  bound->add_option("--j", b_j, "local cohomology index");
  bound->add_flag("--hypersurface", b_hyper, "(deg+1)^vars - 1 for a single hypersurface");

  // fedder
  std::string fd_poly;
  std::uint64_t fd_p = 0;
  bool fd_cy = false;
  auto* fedder = app.add_subcommand("fedder", "F-purity of a hypersurface by Fedder's criterion");
  fedder->add_option("--poly", fd_poly)->required();
  fedder->add_option("--p", fd_p)->required();
  fedder->add_flag("--d-length", fd_cy, "print the D-module length for deg f = number of variables");

  // matrix / cycles
  unsigned fm_n = 0, fm_d = 0;
  std::uint64_t fm_p = 0;
  auto* matrix = app.add_subcommand("matrix", "Frobenius matrix on the degree-0 part of top local cohomology");
  matrix->add_option("--n", fm_n)->required();
  matrix->add_option("--d", fm_d)->required();
  matrix->add_option("--p", fm_p)->required();
  auto* cyc = app.add_subcommand("cycles", "Frobenius orbits of the stable basis elements, one per line");
  cyc->add_option("--n", fm_n)->required();
  cyc->add_option("--d", fm_d)->required();
  cyc->add_option("--p", fm_p)->required();

  // prop75
  std::uint64_t pr_p = 0, pr_trials = 10000, pr_seed = 1;
  auto* prop = app.add_subcommand("prop75", "Length report for t x^7 + t y^7 + z^7, p = 7k+4");
  prop->add_option("--p", pr_p)->required();
  prop->add_option("--trials", pr_trials, "random vectors per cycle");
  prop->add_option("--seed", pr_seed);

  // flag
  std::string fl_file = "-";
  bool fl_exhaustive = false;
  auto* flag = app.add_subcommand("flag", "Flag length and stable dimension of a matrix given as JSON");
  flag->add_option("--file", fl_file, "matrix JSON, - for stdin");
  flag->add_flag("--exhaustive", fl_exhaustive, "search only, no block splitting or fast path");

  // order
  std::string or_file = "-";
  auto* order = app.add_subcommand("order", "Smallest s with B_s = I for an invertible matrix given as JSON");
  order->add_option("--file", or_file, "matrix JSON, - for stdin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (*stable) {
    std::cout << stable_dim_by_count(FermatContext(sd_n, sd_d, sd_p)) << '\n';
  } else if (*sweep) {
    return run_sweep(sweep_cfg);
  } else if (*f7) {
    const auto rep = fermat7_lengths(f7_p);
    std::cout << to_json(rep).dump() << '\n';
    if (!*rep.table_match) return kExitMismatch;
  } else if (*bound) {
    try {
      if (b_hyper) {
        if (b_degrees.size() != 1) throw ArgumentError("--hypersurface takes exactly one degree");
        std::cout << hypersurface_bound(b_vars, b_degrees[0]) << '\n';
      } else {
        if (b_j == 0) throw ArgumentError("--j is required unless --hypersurface is given");
        std::cout << bernstein_bound(b_vars, b_degrees, b_j) << '\n';
      }
    } catch (const ResourceError& e) {
      std::cout << "\"unbounded\"\n";
      std::cerr << "note: " << e.what() << '\n';
    }
  } else if (*fedder) {
    const auto f = SparsePoly::parse(fd_poly, fd_p);
    if (fd_cy) {
      std::cout << calabi_yau_d_length(f, fd_p) << '\n';
    } else {
      std::cout << (fedder_is_f_pure(f, fd_p) ? "true" : "false") << '\n';
    }
  } else if (*matrix) {
    std::cout << to_json(full_matrix(FermatContext(fm_n, fm_d, fm_p))).dump() << '\n';
  } else if (*cyc) {
    const FermatContext ctx(fm_n, fm_d, fm_p);
    for (const auto& o : cycles(ctx)) std::cout << to_json(o, ctx).dump() << '\n';
  } else if (*prop) {
    const auto rep = prop75_lengths(pr_p, pr_trials, pr_seed);
    std::cout << to_json(rep).dump() << '\n';
  } else if (*flag) {
    const auto m = twisted_matrix_from_json(read_json_input(fl_file));
    const json out = visit_matrix(m, [&](const auto& tm) {
      const unsigned len = fl_exhaustive ? flag_length_exhaustive(tm) : flag_length(tm);
      return json{{"dim", tm.dim()}, {"stable_dim", stable_subspace(tm).dim()}, {"flag_length", len}};
    });
    std::cout << out.dump() << '\n';
  } else if (*order) {
    const auto m = twisted_matrix_from_json(read_json_input(or_file));
    std::cout << visit_matrix(m, [](const auto& tm) { return finite_order(tm); }) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const UnsupportedDomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
}

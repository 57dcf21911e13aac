#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grasslen/bounds.hpp"
#include "grasslen/decomp_rank.hpp"
#include "grasslen/errors.hpp"
#include "grasslen/io.hpp"
#include "grasslen/length_fit.hpp"
#include "grasslen/multivector.hpp"
#include "grasslen/secant.hpp"

using namespace grasslen;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

// "4..14", "2,3,4,5", "7" or mixtures such as "2,4..6".
std::vector<int> parse_range(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    if (item.empty()) throw UsageError("empty item in range '" + text + "'");
    const std::size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item));
    } else {
      const int lo = parse_int(item.substr(0, dots));
      const int hi = parse_int(item.substr(dots + 2));
      if (lo > hi) throw UsageError("empty range '" + item + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    pos = comma + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GRASSLEN_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw UsageError("GRASSLEN_SEED must be a non-negative integer");
    return v;
  }
  return kDefaultSeed;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) std::cout << text;
  else io::write_file(path, text);
}

Multivector load(const std::string& path) { return io::parse(io::read_file(path)); }

struct Common {
  double tol = kRankTol;
  std::optional<std::uint64_t> seed;
  bool serial = false;

  std::uint64_t resolved_seed() const { return seed ? *seed : default_seed(); }
  Exec exec() const { return serial ? Exec::Serial : Exec::Parallel; }
};

void add_common(CLI::App* cmd, Common& c, const std::string& tol_help) {
  cmd->add_option("--tol", c.tol, tol_help)->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed (default 20240611, or $GRASSLEN_SEED)");
  cmd->add_flag("--serial", c.serial, "Run the serial kernels instead of the OpenMP ones");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds, secant dimensions and numerical lengths of multivectors"};
  app.name("grasslen");
  app.require_subcommand(1);

  // bounds
  Common bounds_c;
  std::string bounds_m, bounds_n, bounds_out, bounds_plot;
  auto* bounds = app.add_subcommand("bounds", "Table of lower bounds and known exact maximal lengths (CSV)");
  bounds->add_option("--m", bounds_m, "Dimension range, e.g. 4..14")->required();
  bounds->add_option("--n", bounds_n, "Grade range, e.g. 2,3,4,5")->required();
  bounds->add_option("--out", bounds_out, "CSV output path (default stdout)");
  bounds->add_option("--plot-out", bounds_plot, "Write plot-ready series per n to this path");
  add_common(bounds, bounds_c, "Unused; accepted for uniformity");

  // secant
  Common secant_c;
  std::string secant_m, secant_n, secant_l, secant_out;
  int secant_trials = 3;
  bool secant_certify = false;
  std::uint64_t secant_cap = 100000;
  auto* secant = app.add_subcommand("secant", "Terracini dimension of secant varieties of the Grassmannian (CSV)");
  secant->add_option("--m", secant_m, "Dimension or range")->required();
  secant->add_option("--n", secant_n, "Grade or range")->required();
  secant->add_option("--l", secant_l, "Number of points or range")->required();
  secant->add_option("--trials", secant_trials, "Random trials per cell")->capture_default_str();
  secant->add_flag("--certify", secant_certify, "Confirm the rank exactly modulo a random prime");
  secant->add_option("--max-dim", secant_cap, "Largest C(m,n) accepted")->capture_default_str();
  secant->add_option("--out", secant_out, "CSV output path (default stdout)");
  add_common(secant, secant_c, "Relative singular value cutoff");

  // fit
  Common fit_c;
  fit_c.tol = 1e-8;
  std::string fit_in, fit_out;
  int fit_l = 0, fit_lmax = 4, fit_restarts = 20, fit_sweeps = 500;
  auto* fit = app.add_subcommand("fit", "Numerical length by alternating least squares (JSON)");
  fit->add_option("input", fit_in, "Multivector JSON file")->required();
  fit->add_option("--l", fit_l, "Fit exactly this many terms instead of scanning");
  fit->add_option("--l-max", fit_lmax, "Largest length tried")->capture_default_str();
  fit->add_option("--restarts", fit_restarts, "Random restarts per length")->capture_default_str();
  fit->add_option("--max-sweeps", fit_sweeps, "Sweeps per restart")->capture_default_str();
  fit->add_option("--out", fit_out, "Write the terms of the returned fit to this path");
  add_common(fit, fit_c, "Relative residual counted as an exact fit");

  // check
  Common check_c;
  std::string check_in;
  auto* check = app.add_subcommand("check", "Decomposability test via the Pluecker relations (JSON)");
  check->add_option("input", check_in, "Multivector JSON file")->required();
  add_common(check, check_c, "Relative Pluecker residual cutoff");

  // schmidt
  Common schmidt_c;
  std::string schmidt_in, schmidt_out;
  auto* schmidt = app.add_subcommand("schmidt", "Exact length of a 2-vector by Schmidt decomposition (JSON)");
  schmidt->add_option("input", schmidt_in, "2-vector JSON file")->required();
  schmidt->add_option("--out", schmidt_out, "Write the terms to this path");
  add_common(schmidt, schmidt_c, "Relative singular value cutoff");

  // dual
  Common dual_c;
  std::string dual_in, dual_out;
  auto* dual = app.add_subcommand("dual", "Hodge dual, grade n to grade m-n (multivector JSON)");
  dual->add_option("input", dual_in, "Multivector JSON file")->required();
  dual->add_option("--out", dual_out, "Output path (default stdout)");
  add_common(dual, dual_c, "Unused; accepted for uniformity");

  // rank
  Common rank_c;
  std::string rank_in;
  auto* rank = app.add_subcommand("rank", "Dimension of the smallest supporting subspace (JSON)");
  rank->add_option("input", rank_in, "Multivector JSON file")->required();
  add_common(rank, rank_c, "Relative singular value cutoff");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (bounds->parsed()) {
      const auto ms = parse_range(bounds_m);
      const auto ns = parse_range(bounds_n);
      auto rows = bounds_table(ms.front(), ms.back(), ns);
      std::erase_if(rows, [&](const BoundsRecord& r) { return !std::binary_search(ms.begin(), ms.end(), r.m); });
      emit(bounds_csv(rows), bounds_out);
      if (!bounds_plot.empty()) io::write_file(bounds_plot, bounds_plot_data(rows));
      std::cerr << rows.size() << " rows\n";
    } else if (secant->parsed()) {
      SecantOptions opts;
      opts.trials = secant_trials;
      opts.tol = secant_c.tol;
      opts.certify = secant_certify;
      opts.seed = secant_c.resolved_seed();
      opts.exec = secant_c.exec();
      opts.max_dim = secant_cap;
      const auto ms = parse_range(secant_m);
      const auto ns = parse_range(secant_n);
      const auto ls = parse_range(secant_l);
      if (ms.size() == 1 && ns.size() == 1 && ls.size() == 1) {
        const SecantReport r = secant_dim(ms[0], ns[0], ls[0], opts);
        emit(secant_csv({r}), secant_out);
        std::fprintf(stderr, "m=%d n=%d l=%d: projective_dim %d, expected %d, defect %d%s%s\n", r.m, r.n, r.l,
                     r.projective_dim, r.expected_dim, r.defect, r.ambiguous ? " (rank ambiguous)" : "",
                     r.certified ? " (certified)" : "");
      } else {
        const ScanResult scan = defect_scan(ms, ns, ls, opts);
        emit(secant_csv(scan.reports), secant_out);
        int defective = 0;
        for (const auto& r : scan.reports) defective += r.defect > 0;
        std::cerr << scan.reports.size() << " cells, " << defective << " defective\n";
        for (const auto& note : scan.notices) std::cerr << note << "\n";
        if (!scan.notices.empty()) return kExitCap;
      }
    } else if (fit->parsed()) {
      const Multivector psi = load(fit_in);
      FitOptions opts;
      opts.restarts = fit_restarts;
      opts.max_sweeps = fit_sweeps;
      opts.residual_tol = fit_c.tol;
      opts.seed = fit_c.resolved_seed();
      opts.exec = fit_c.exec();
      opts.validate();
      if (fit_l > 0) {
        const FitReport r = als_fit(psi, fit_l, opts);
        std::cout << io::to_json(r, psi.m(), psi.n()).dump(2) << "\n";
        if (!fit_out.empty()) io::write_file(fit_out, io::terms_to_json(psi.m(), psi.n(), r.terms).dump(2) + "\n");
        std::fprintf(stderr, "l=%d: residual %.3g after %d sweeps%s\n", r.l, r.best_residual, r.sweeps_used,
                     r.diverging ? " (diverging factors)" : "");
      } else {
        if (fit_lmax < 1) throw UsageError("--l-max must be >= 1");
        const LengthEstimate e = estimate_length(psi, fit_lmax, opts);
        std::cout << io::to_json(e, psi.m(), psi.n(), opts.residual_tol).dump(2) << "\n";
        if (!fit_out.empty())
          io::write_file(fit_out, io::terms_to_json(psi.m(), psi.n(), e.reports.back().terms).dump(2) + "\n");
        if (e.length)
          std::fprintf(stderr, "numerical length %d at tol %g\n", *e.length, opts.residual_tol);
        else
          std::fprintf(stderr, "no fit up to l=%d at tol %g (best residual %.3g)\n", fit_lmax, opts.residual_tol,
                       e.reports.back().best_residual);
        if (e.diverging) std::cerr << "diverging factors seen: the value may be a border length\n";
      }
    } else if (check->parsed()) {
      const Multivector psi = load(check_in);
      const auto r = is_decomposable(psi, check_c.tol, check_c.exec());
      std::cout << io::to_json(r).dump(2) << "\n";
      std::fprintf(stderr, "%s (relative Pluecker residual %.3g, support rank %d)\n",
                   r.decomposable ? "decomposable" : "not decomposable", r.relative_residual, r.support_rank);
    } else if (schmidt->parsed()) {
      const Multivector psi = load(schmidt_in);
      const auto r = schmidt_length(psi, schmidt_c.tol);
      std::cout << io::to_json(r, psi.m()).dump(2) << "\n";
      if (!schmidt_out.empty()) io::write_file(schmidt_out, io::terms_to_json(psi.m(), 2, r.terms).dump(2) + "\n");
      std::fprintf(stderr, "length %d (skew rank %d)%s\n", r.length, r.skew_rank,
                   r.ambiguous ? ", rank ambiguous at this tolerance" : "");
    } else if (dual->parsed()) {
      const Multivector psi = load(dual_in);
      emit(io::serialize(hodge_dual(psi)), dual_out);
      std::fprintf(stderr, "grade %d -> %d\n", psi.n(), psi.m() - psi.n());
    } else if (rank->parsed()) {
      const Multivector psi = load(rank_in);
      const auto r = support_rank(psi, rank_c.tol);
      std::cout << io::to_json(r).dump(2) << "\n";
      std::fprintf(stderr, "rank %d%s\n", r.rank, r.ambiguous ? ", ambiguous at this tolerance" : "");
    }
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

#include <bncsm/bncsm.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace bncsm::cli {

enum ExitCode : int { kPass = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Raised for bad user input; reported with exit code 2.
class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t n_particles = 2;
  std::string lambda = "1";
  std::string lambda1 = "1";
  std::string alpha = "0";
  int level = 0;
  int n_max = 3;
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
  double fd_step = 1e-3;
  int quad_nodes = 0;
  unsigned threads = 1;
  std::string output;

  // verify
  std::string perturb_energy = "0";
  bool skip_numeric = false;
  int property_samples = 20;
  int points = 20;

  // cs-map
  std::string q_partition;

  // fock-check
  int cutoff = 12;
  std::string k_plus_scale = "1/2";

  ModelParams params() const {
    try {
      return ModelParams(n_particles, parse_rational(lambda), parse_rational(lambda1),
                         parse_rational(alpha));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

inline unsigned default_threads() {
  if (const char* env = std::getenv("BNCSM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline json base_report(const RunConfig& cfg, const char* command) {
  json j{{"schema_version", kSchemaVersion}, {"command", command}};
  const ModelParams params = cfg.params();
  j["params"] = to_json(params);
  if (params.normalizability_unverified()) {
    j["notes"] = json::array({"non-normalizable-risk: unverified (lambda or lambda1 in (0,1))"});
  }
  return j;
}

inline std::vector<Eigenfunction> levels_up_to(const ModelParams& params, int n_max,
                                               unsigned threads) {
  std::vector<Eigenfunction> out;
  for (int n = 0; n <= n_max; ++n) {
    for (auto& ef : level_basis(params, n, threads)) out.push_back(std::move(ef));
  }
  return out;
}

// ---------------------------------------------------------------- solve

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  if (cfg.level < 0) throw UsageError("--level must be nonnegative");
  const ModelParams params = cfg.params();
  const auto basis = level_basis(params, cfg.level, cfg.threads);
  if (cfg.format == "pretty") {
    out << "level " << cfg.level << ": E = " << to_string(2 * cfg.level + params.ground_energy())
        << ", degeneracy " << basis.size() << "\n";
    for (const auto& ef : basis) {
      out << "  " << ef.label.to_string() << "  " << ef.poly.to_string() << "\n";
    }
    return kPass;
  }
  if (cfg.format != "json") throw UsageError("solve supports --format json|pretty");
  json j = base_report(cfg, "solve");
  j["level"] = cfg.level;
  j["eigenfunctions"] = json::array();
  for (const auto& ef : basis) j["eigenfunctions"].push_back(to_json(ef));
  out << j.dump(2) << "\n";
  return kPass;
}

// ------------------------------------------------------------- spectrum

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n_max < 0) throw UsageError("--n-max must be nonnegative");
  const ModelParams params = cfg.params();
  const auto rows = spectrum_table(params, cfg.n_max);
  if (cfg.format == "csv") {
    write_spectrum_csv(out, rows);
  } else if (cfg.format == "pretty") {
    out << "E0 = " << to_string(params.ground_energy()) << "\n";
    for (const auto& row : rows) {
      out << "n=" << row.level << "  E=" << to_string(row.energy) << "  deg=" << row.degeneracy
          << "\n";
    }
  } else if (cfg.format == "json") {
    json j = base_report(cfg, "spectrum");
    j["levels"] = json::array();
    for (const auto& row : rows) {
      j["levels"].push_back(
          {{"n", row.level}, {"energy", to_string(row.energy)}, {"degeneracy", row.degeneracy}});
    }
    out << j.dump(2) << "\n";
  } else {
    throw UsageError("unknown --format " + cfg.format);
  }
  return kPass;
}

// --------------------------------------------------------------- verify

/// Random homogeneous symmetric polynomial in Y of the given weight, with
/// small rational coefficients on a random subset of the monomial basis.
template <typename Rng>
SymPoly random_homogeneous(std::size_t n_vars, int degree, Rng& rng) {
  SymPoly p(n_vars, VarTag::Y);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::bernoulli_distribution keep(0.7);
  const auto basis = partitions_of(degree, degree > 0 ? degree : 1, n_vars);
  for (const auto& mu : basis) {
    if (keep(rng)) p.add_term(mu, Rational(num(rng), den(rng)));
  }
  if (p.is_zero()) p.add_term(basis.front(), Rational(1));
  return p;
}

/// Left and right sides of [D, exp{F/2}] q = -F exp{F/2} q.
inline std::pair<SymPoly, SymPoly> commutator_sides(const SymPoly& q, const ModelParams& params) {
  const auto op = GradedOperator::half_F();
  const SymPoly eq = exp_graded(op, q, params);
  SymPoly lhs = apply_euler_graded(eq) - exp_graded(op, apply_euler(q), params);
  SymPoly rhs = -apply_F(eq, params);
  return {std::move(lhs), std::move(rhs)};
}

/// Node count used by the verify command: the exact minimum for integer
/// lambda or a single particle, 512 per dimension otherwise (N = 2 only).
inline std::optional<int> auto_quadrature_nodes(const ModelParams& params, int max_degree) {
  const bool exact = params.n_particles == 1 || denominator(params.lambda) == 1;
  if (exact) return min_quadrature_nodes(params, max_degree);
  if (params.n_particles == 2) return std::max(512, min_quadrature_nodes(params, max_degree));
  return std::nullopt;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams params = cfg.params();
  Rational perturb;
  try {
    perturb = parse_rational(cfg.perturb_energy);
  } catch (const RationalSyntaxError& e) {
    throw UsageError(e.what());
  }
  if (cfg.n_max < 0) throw UsageError("--n-max must be nonnegative");

  json report = base_report(cfg, "verify");
  std::optional<json> counterexample;
  auto fail = [&](json detail) {
    if (!counterexample) counterexample = std::move(detail);
  };

  const auto efs = levels_up_to(params, cfg.n_max, cfg.threads);

  // Exact eigen-equation H~ p = E p.
  std::size_t eigen_checked = 0;
  for (const auto& ef : efs) {
    const Rational energy = ef.energy + perturb;
    const SymPoly residual = eigen_residual(ef.poly, energy, params);
    ++eigen_checked;
    if (!residual.is_zero()) {
      fail({{"check", "eigen_equation"},
            {"label", partition_to_json(ef.label)},
            {"energy", to_string(energy)},
            {"residual", to_json(residual)}});
    }
  }
  report["symbolic"]["eigen_equation"] = {{"checked", eigen_checked},
                                          {"passed", !counterexample.has_value()}};

  // [D, exp{F/2}] = -F exp{F/2} on random homogeneous inputs.
  {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> degree(0, 6);
    bool ok = true;
    for (int s = 0; s < cfg.property_samples; ++s) {
      const SymPoly q = random_homogeneous(params.n_particles, degree(rng), rng);
      const auto [lhs, rhs] = commutator_sides(q, params);
      if (!(lhs == rhs)) {
        ok = false;
        fail({{"check", "commutator"}, {"q", to_json(q)}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}});
      }
    }
    report["symbolic"]["commutator"] = {{"samples", cfg.property_samples}, {"passed", ok}};
  }

  if (!cfg.skip_numeric) {
    constexpr double kFdTolerance = 1e-5;
    const auto points = sample_safe_points(params.n_particles, static_cast<std::size_t>(cfg.points), cfg.seed);
    json entries = json::array();
    for (const auto& ef : efs) {
      const Rational energy = ef.energy + perturb;
      double worst = 0;
      for (const auto& x : points) worst = std::max(worst, fd_residual(ef, x, cfg.fd_step, energy));
      entries.push_back({{"label", partition_to_json(ef.label)},
                         {"energy", to_string(energy)},
                         {"max_fd_residual", worst},
                         {"points_tested", points.size()}});
      if (!(worst < kFdTolerance)) {
        fail({{"check", "fd_residual"},
              {"label", partition_to_json(ef.label)},
              {"energy", to_string(energy)},
              {"max_fd_residual", worst}});
      }
    }
    report["eigenfunctions"] = std::move(entries);

    int max_degree = 0;
    for (const auto& ef : efs) max_degree = std::max(max_degree, ef.poly.max_degree());
    std::optional<int> nodes = cfg.quad_nodes > 0 ? std::optional<int>(cfg.quad_nodes)
                                                   : auto_quadrature_nodes(params, max_degree);
    if (nodes) {
      const bool exact = params.n_particles == 1 || denominator(params.lambda) == 1;
      const double tolerance = exact ? 1e-10 : 1e-6;
      Eigen::MatrixXd gram;
      try {
        gram = gram_matrix(efs, QuadratureConfig{*nodes});
      } catch (const QuadratureConfigError& e) {
        throw UsageError(e.what());
      }
      const double off = max_off_block(efs, gram);
      report["gram"] = {{"levels", cfg.n_max},
                        {"max_off_block", off},
                        {"tolerance", tolerance},
                        {"quadrature",
                         {{"nodes_per_dim", *nodes},
                          {"lambda", to_string(params.lambda)},
                          {"lambda1", to_string(params.lambda1)}}}};
      if (!(off < tolerance)) fail({{"check", "gram"}, {"max_off_block", off}});
    } else {
      report["gram"] = {{"skipped", "non-integer lambda with N >= 3 exceeds desk-scale quadrature"}};
    }
  }

  report["passed"] = !counterexample.has_value();
  if (counterexample) {
    report["counterexample"] = *counterexample;
    err << "verification failed: " << counterexample->dump() << "\n";
  }
  out << report.dump(2) << "\n";
  return counterexample ? kVerificationFailed : kPass;
}

// --------------------------------------------------------------- cs-map

inline Partition parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing characters");
      parts.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad partition '" + text + "' (expected e.g. 2,2,1)");
    }
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  try {
    return Partition(std::move(parts));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct CsMapEntry {
  std::string seed;
  SymPoly q;
};

inline int cmd_cs_map(const RunConfig& cfg, std::ostream& out) {
  const ModelParams params = cfg.params();
  const std::size_t n = params.n_particles;
  std::vector<CsMapEntry> seeds;
  if (!cfg.q_partition.empty()) {
    const Partition nu = parse_partition(cfg.q_partition);
    if (nu.length() > n) throw UsageError("q partition longer than N");
    const SymPoly q = SymPoly::monomial(n, VarTag::X, nu);
    if (!is_even_sector(q)) {
      throw UsageError("q = m" + nu.to_string() +
                       " is odd; images of B_N states lie in the even sector (all parts even)");
    }
    seeds.push_back({"m" + nu.to_string(), q});
  } else {
    if (cfg.level < 0) throw UsageError("--level must be nonnegative");
    for (const auto& label : partitions_of(cfg.level, static_cast<int>(n), cfg.level > 0 ? cfg.level : 1)) {
      seeds.push_back({"P" + label.to_string(), y_to_x(power_sum_product(label, n, VarTag::Y))});
    }
  }

  json j = base_report(cfg, "cs-map");
  j["cs_ground_energy"] = to_string(params.cs_ground_energy());
  j["note"] = "B_N eigenfunctions map to the even sector of the CS model";
  j["entries"] = json::array();
  bool all_ok = true;
  for (const auto& [seed, q] : seeds) {
    const int degree = *q.homogeneous_degree();
    const SymPoly phi = exp_graded(GradedOperator::minus_half_A(), q, params);
    const Rational eigenvalue = degree + params.cs_ground_energy();
    const bool ok = (apply_transformed_H_cs(phi, params) - eigenvalue * phi).is_zero();
    json entry{{"seed", seed},
               {"degree", degree},
               {"eigenvalue", to_string(eigenvalue)},
               {"poly", to_json(phi)},
               {"verified", ok}};
    all_ok = all_ok && ok;
    if (params.alpha == 0) {
      // exp{-A/2} reduces to the Gaussian smoothing exp{-Laplacian/4}.
      const bool match = collect_symmetric(hermite_smooth(q.expand()), VarTag::X) == phi;
      entry["hermite_match"] = match;
      all_ok = all_ok && match;
    }
    j["entries"].push_back(std::move(entry));
  }
  j["passed"] = all_ok;
  if (cfg.format == "pretty") {
    for (const auto& e : j["entries"]) {
      out << e["seed"].get<std::string>() << " -> eigenvalue " << e["eigenvalue"].get<std::string>()
          << (e["verified"].get<bool>() ? "  ok" : "  FAILED") << "\n";
    }
  } else {
    out << j.dump(2) << "\n";
  }
  return all_ok ? kPass : kVerificationFailed;
}

// ----------------------------------------------------------- fock-check

inline int cmd_fock_check(const RunConfig& cfg, std::ostream& out) {
  if (cfg.cutoff < 6 || cfg.cutoff % 2 != 0) throw UsageError("--cutoff must be even and >= 6");
  SingleModeOperators ops;
  try {
    ops.k_plus_scale = parse_rational(cfg.k_plus_scale);
  } catch (const RationalSyntaxError& e) {
    throw UsageError(e.what());
  }
  const FockReport su11 = su11_fock_check(cfg.cutoff, ops);
  const FockReport orth = fock_orthogonality_check(cfg.n_max, cfg.n_particles);
  json j{{"schema_version", kSchemaVersion},
         {"command", "fock-check"},
         {"cutoff", cfg.cutoff},
         {"n_modes", cfg.n_particles},
         {"n_max", cfg.n_max},
         {"su11", to_json(su11)},
         {"orthogonality", to_json(orth)},
         {"passed", su11.passed() && orth.passed()}};
  out << j.dump(2) << "\n";
  return su11.passed() && orth.passed() ? kPass : kVerificationFailed;
}

// ----------------------------------------------------------------- main

inline void add_model_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("-N,--n-particles", cfg.n_particles, "Number of particles")
      ->check(CLI::PositiveNumber);
  app.add_option("--lambda", cfg.lambda, "Pair coupling lambda (p/q or integer)");
  app.add_option("--lambda1", cfg.lambda1, "One-body coupling lambda1 (p/q or integer)");
  app.add_option("--alpha", cfg.alpha, "A_N coupling alpha (p/q or integer)");
  app.add_option("--level", cfg.level, "Level n");
  app.add_option("--n-max", cfg.n_max, "Highest level n_max");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--seed", cfg.seed, "Seed for sample points and random polynomials");
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step h")
      ->check(CLI::Range(1e-4, 1e-2));
  app.add_option("--quad-nodes", cfg.quad_nodes, "Quadrature nodes per dimension (0 = auto)");
  app.add_option("--threads", cfg.threads, "Worker threads (default $BNCSM_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", cfg.output, "Write output to a file instead of stdout");
}

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact eigenfunctions, spectra and checks for the B_N Calogero-Sutherland-Moser model"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file");
  RunConfig cfg;
  cfg.threads = default_threads();
  add_model_options(app, cfg);

  auto* solve = app.add_subcommand("solve", "Eigenfunctions at one level");
  auto* spectrum = app.add_subcommand("spectrum", "Energies and degeneracies up to n_max");
  auto* verify = app.add_subcommand("verify", "Symbolic and numerical verification suite");
  verify->add_option("--perturb-energy", cfg.perturb_energy, "Add this to every tested energy");
  verify->add_flag("--skip-numeric", cfg.skip_numeric, "Run the symbolic checks only");
  verify->add_option("--property-samples", cfg.property_samples, "Random commutator samples");
  verify->add_option("--points", cfg.points, "Sample points per eigenfunction");
  auto* cs_map = app.add_subcommand("cs-map", "Map B_N states to the A_N (CS) model");
  cs_map->add_option("--q-partition", cfg.q_partition, "Seed m_nu in x, e.g. 2,2 (parts even)");
  auto* fock = app.add_subcommand("fock-check", "SU(1,1) and orthogonality checks in Fock space");
  fock->add_option("--cutoff", cfg.cutoff, "Occupation cutoff");
  fock->add_option("--k-plus-scale", cfg.k_plus_scale, "Prefactor of (a+)^2 in K+");
  for (auto* sub : {solve, spectrum, verify, cs_map, fock}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return e.get_exit_code() == 0 ? kPass : kUsageError;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      err << "error: cannot open " << cfg.output << "\n";
      return kUsageError;
    }
    sink = &file;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg, *sink);
    if (spectrum->parsed()) return cmd_spectrum(cfg, *sink);
    if (verify->parsed()) return cmd_verify(cfg, *sink, err);
    if (cs_map->parsed()) return cmd_cs_map(cfg, *sink);
    if (fock->parsed()) return cmd_fock_check(cfg, *sink);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace bncsm::cli

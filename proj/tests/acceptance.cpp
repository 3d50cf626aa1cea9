// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <bncsm/bncsm.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "support/random_poly.hpp"

using namespace bncsm;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

const std::vector<Rational> kGrid{Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};

Partition ones(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 1)); }

// 1. Exact eigen-equation over the full parameter grid.
Outcome exact_eigen_equation() {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& lam : kGrid) {
      for (const auto& lam1 : kGrid) {
        const ModelParams params(n, lam, lam1);
        for (int level = 0; level <= 6; ++level) {
          for (const auto& ef : level_basis(params, level)) {
            ++checked;
            if (ef.energy != 2 * level + params.ground_energy() ||
                !eigen_residual(ef.poly, ef.energy, params).is_zero()) {
              return {false, "N=" + std::to_string(n) + " label " + ef.label.to_string()};
            }
          }
        }
      }
    }
  }
  return {true, std::to_string(checked) + " eigenfunctions, zero residual"};
}

// 2. [D, exp{F/2}] q = -F exp{F/2} q on 50 random homogeneous inputs.
Outcome commutator_identity() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> pick(0, kGrid.size() - 1);
  for (int s = 0; s < 50; ++s) {
    const std::size_t n = 1 + static_cast<std::size_t>(s % 4);
    const ModelParams params(n, kGrid[pick(rng)], kGrid[pick(rng)]);
    const SymPoly q = testing_support::random_sympoly(rng, n, VarTag::Y, 6, true);
    const auto op = GradedOperator::half_F();
    const SymPoly eq = exp_graded(op, q, params);
    const SymPoly lhs = apply_euler_graded(eq) - exp_graded(op, apply_euler(q), params);
    if (!(lhs == -apply_F(eq, params))) return {false, "sample " + std::to_string(s)};
  }
  return {true, "50 samples exact"};
}

// 3. Level-basis rank equals the restricted partition count.
Outcome degeneracy_structure() {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& lam : kGrid) {
      for (const auto& lam1 : kGrid) {
        const ModelParams params(n, lam, lam1);
        for (int level = 0; level <= 6; ++level) {
          const auto basis = level_basis(params, level);
          const std::size_t expected = oracle::restricted_partition_count(level, static_cast<int>(n));
          if (rank_check(basis) != expected || degeneracy(params, level) != expected) {
            return {false, "N=" + std::to_string(n) + " n=" + std::to_string(level)};
          }
        }
      }
    }
  }
  const std::size_t n3 = rank_check(level_basis(ModelParams(3, 1, 1), 6));
  if (n3 != 7) return {false, "N=3 n=6 rank " + std::to_string(n3)};
  return {true, "rank = partition count on the grid; N=3, n=6 -> 7"};
}

// 4. N = 1 reduces to generalized Laguerre L_n^{(lambda1 - 1/2)}.
Outcome laguerre_reduction() {
  for (const Rational lam1 : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
    for (int n = 0; n <= 8; ++n) {
      const auto ef = build_eigenfunction(ModelParams(1, Rational(0), lam1), ones(n));
      const auto lag = oracle::laguerre(n, lam1 - Rational(1, 2));
      const Rational ratio = ef.poly.coefficient(Partition::from_exponents({n})) / lag[static_cast<std::size_t>(n)];
      for (int k = 0; k <= n; ++k) {
        if (ef.poly.coefficient(Partition::from_exponents({k})) != ratio * lag[static_cast<std::size_t>(k)]) {
          return {false, "lambda1=" + to_string(lam1) + " n=" + std::to_string(n)};
        }
      }
      if (static_cast<int>(ef.poly.size()) != n + 1) return {false, "unexpected term count"};
    }
  }
  return {true, "constant rational ratio for all n <= 8"};
}

// 5. exp{-Laplacian/4} x^n = 2^-n H_n(x).
Outcome hermite_reduction() {
  for (int n = 0; n <= 10; ++n) {
    const Polynomial got = hermite_smooth(Polynomial::monomial({n}));
    const auto h = oracle::hermite(n);
    Polynomial expected(1);
    const Rational scale = Rational(1) / Rational(Integer(1) << n);
    for (std::size_t k = 0; k < h.size(); ++k) expected.add_term({static_cast<int>(k)}, scale * h[k]);
    if (!(got == expected)) return {false, "n=" + std::to_string(n)};
  }
  return {true, "n <= 10 exact"};
}

// 6. exp{-A/2} q solves the transformed CS eigen-equation.
Outcome cs_bridge() {
  std::size_t checked = 0;
  for (const Rational alpha : {Rational(0), Rational(1), Rational(2)}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const ModelParams params(n, 0, 0, alpha);
      for (int half = 0; half <= 4; ++half) {
        std::vector<SymPoly> seeds;
        for (const auto& label : partitions_of(half, static_cast<int>(n), static_cast<std::size_t>(std::max(half, 1)))) {
          seeds.push_back(y_to_x(power_sum_product(label, n, VarTag::Y)));
        }
        for (const auto& nu : partitions_of(2 * half, std::max(2 * half, 1), n)) {
          seeds.push_back(SymPoly::monomial(n, VarTag::X, nu));
        }
        for (const auto& q : seeds) {
          const SymPoly phi = exp_graded(GradedOperator::minus_half_A(), q, params);
          const Rational eigenvalue = 2 * half + params.cs_ground_energy();
          ++checked;
          if (!(apply_transformed_H_cs(phi, params) - eigenvalue * phi).is_zero()) {
            return {false, "alpha=" + to_string(alpha) + " q=" + q.to_string()};
          }
          if (alpha == 0 && !(collect_symmetric(hermite_smooth(q.expand()), VarTag::X) == phi)) {
            return {false, "alpha=0 differs from Hermite smoothing for q=" + q.to_string()};
          }
        }
      }
    }
  }
  return {true, std::to_string(checked) + " seeds exact"};
}

// 7. Finite-difference residual of the physical Hamiltonian.
Outcome physical_hamiltonian() {
  double worst = 0;
  double weakest_control = 1e300;
  std::size_t count = 0;
  for (std::size_t n : {2u, 3u}) {
    const auto points = sample_safe_points(n, 20, kDefaultSeed);
    for (const Rational lam : {Rational(1), Rational(2)}) {
      for (const Rational lam1 : {Rational(1), Rational(2)}) {
        const ModelParams params(n, lam, lam1);
        for (int level = 0; level <= 3; ++level) {
          for (const auto& ef : level_basis(params, level)) {
            ++count;
            for (const auto& x : points) {
              worst = std::max(worst, fd_residual(ef, x, 1e-3));
              weakest_control = std::min(weakest_control, fd_residual(ef, x, 1e-3, ef.energy + 1));
            }
          }
        }
      }
    }
  }
  std::ostringstream detail;
  detail << count << " eigenfunctions x 20 points, max residual " << worst
         << ", min control residual " << weakest_control;
  return {worst < 1e-5 && weakest_control > 1e-1, detail.str()};
}

// 8. Cross-level Gram orthogonality for N = 2, levels <= 3.
Outcome cross_level_orthogonality() {
  std::ostringstream detail;
  bool ok = true;
  for (const Rational lam : {Rational(1), Rational(3, 2)}) {
    for (const Rational lam1 : {Rational(1, 2), Rational(1)}) {
      const ModelParams params(2, lam, lam1);
      std::vector<Eigenfunction> efs;
      for (int level = 0; level <= 3; ++level) {
        for (auto& ef : level_basis(params, level)) efs.push_back(std::move(ef));
      }
      const bool exact = denominator(lam) == 1;
      const int nodes = exact ? min_quadrature_nodes(params, 3) : 512;
      const double tolerance = exact ? 1e-10 : 1e-6;
      const double off = max_off_block(efs, gram_matrix(efs, QuadratureConfig{nodes}));
      ok = ok && off < tolerance;
      detail << "lambda=" << to_string(lam) << ",lambda1=" << to_string(lam1) << ": " << off << " (<"
             << tolerance << ", " << nodes << " nodes); ";
    }
  }
  return {ok, detail.str()};
}

// 9. e_1 of the conserved-quantity spectrum reproduces the energy.
Outcome constants_of_motion() {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& lam : kGrid) {
      for (const auto& lam1 : kGrid) {
        const ModelParams params(n, lam, lam1);
        for (int w = 0; w <= 6; ++w) {
          for (const auto& mu : partitions_of(w, std::max(w, 1), n)) {
            const auto spectrum = constants_spectrum(params, mu);
            ++checked;
            const Rational n_half = Rational(static_cast<long>(n), 2);
            if (spectrum.size() != n ||
                spectrum[0] + params.ground_energy() - n_half != 2 * w + params.ground_energy()) {
              return {false, "N=" + std::to_string(n) + " mu=" + mu.to_string()};
            }
          }
        }
      }
    }
  }
  return {true, std::to_string(checked) + " labels, all N spectra emitted"};
}

// 10. SU(1,1) relations and Fock-space orthogonality.
Outcome fock_checks() {
  const FockReport su11 = su11_fock_check(12);
  if (!su11.passed()) return {false, su11.violations.front()};
  std::size_t checks = su11.checks;
  for (std::size_t n : {2u, 3u}) {
    const FockReport orth = fock_orthogonality_check(4, n);
    if (!orth.passed()) return {false, orth.violations.front()};
    checks += orth.checks;
  }
  return {true, std::to_string(checks) + " checks, no violations"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"C1  exact eigen-equation", exact_eigen_equation},
      {"C2  commutator identity", commutator_identity},
      {"C3  degeneracy structure", degeneracy_structure},
      {"C4  N=1 Laguerre reduction", laguerre_reduction},
      {"C5  Hermite reduction", hermite_reduction},
      {"C6  A_N bridge", cs_bridge},
      {"C7  physical Hamiltonian oracle", physical_hamiltonian},
      {"C8  cross-level orthogonality", cross_level_orthogonality},
      {"C9  constants of motion", constants_of_motion},
      {"C10 SU(1,1) Fock checks", fock_checks},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %-34s %s (%.1fs)\n", outcome.passed ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str(), seconds);
    failures += outcome.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#pragma once

#include "bncsm/operators.hpp"
#include "bncsm/params.hpp"
#include "bncsm/partition.hpp"
#include "bncsm/sympoly.hpp"

#include <algorithm>
#include <cstddef>
#include <future>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bncsm {

/// Eigenstate psi0 * poly of the B_N Hamiltonian, with poly in y = x^2.
/// The label is a partition of the level with parts <= N; part l occurring
/// n_l times selects the seed prod_l P_l^{n_l}.
struct Eigenfunction {
  ModelParams params;
  int level = 0;
  Partition label;
  SymPoly poly{1, VarTag::Y};
  Rational energy;
};

/// Thrown when an eigenfunction fails its defining identity.
class EigenEquationFailure : public std::logic_error {
  using std::logic_error::logic_error;
};

/// Residual H~ p - E p; zero exactly when p is an eigenpolynomial with energy E.
inline SymPoly eigen_residual(const SymPoly& poly, const Rational& energy,
                              const ModelParams& params) {
  return apply_transformed_H(poly, params) - energy * poly;
}

/// Checks the three Eigenfunction invariants; throws on the first violation.
inline void check_eigenfunction(const Eigenfunction& ef) {
  if (ef.energy != 2 * ef.level + ef.params.ground_energy()) {
    throw EigenEquationFailure("energy of " + ef.label.to_string() + " is not 2n + E0");
  }
  if (!eigen_residual(ef.poly, ef.energy, ef.params).is_zero()) {
    throw EigenEquationFailure("eigen-equation fails for label " + ef.label.to_string());
  }
  const SymPoly seed = power_sum_product(ef.label, ef.params.n_particles, VarTag::Y);
  if (ef.poly.component(ef.level) != seed) {
    throw EigenEquationFailure("top-degree part of " + ef.label.to_string() +
                               " differs from its power-sum seed");
  }
}

/// exp{F/2} prod_l P_l^{n_l}, with energy 2|label| + E0. Verified exactly
/// before returning.
inline Eigenfunction build_eigenfunction(const ModelParams& params, const Partition& label) {
  params.validate();
  if (label.largest() > static_cast<int>(params.n_particles)) {
    throw std::domain_error("label " + label.to_string() + " has a part larger than N = " +
                            std::to_string(params.n_particles));
  }
  Eigenfunction ef;
  ef.params = params;
  ef.level = label.weight();
  ef.label = label;
  const SymPoly seed = power_sum_product(label, params.n_particles, VarTag::Y);
  ef.poly = exp_graded(GradedOperator::half_F(), seed, params);
  ef.energy = 2 * ef.level + params.ground_energy();
  check_eigenfunction(ef);
  return ef;
}

/// Number of independent eigenstates at level n: partitions of n with parts <= N.
inline std::size_t degeneracy(const ModelParams& params, int n) {
  return partitions_of(n, static_cast<int>(params.n_particles), static_cast<std::size_t>(n > 0 ? n : 1))
      .size();
}

/// All eigenfunctions at level n, in reverse-lexicographic label order.
/// Labels are built on up to `threads` workers; the output order does not
/// depend on the thread count.
inline std::vector<Eigenfunction> level_basis(const ModelParams& params, int n,
                                              unsigned threads = 1) {
  const auto labels = partitions_of(n, static_cast<int>(params.n_particles),
                                    static_cast<std::size_t>(n > 0 ? n : 1));
  std::vector<Eigenfunction> out(labels.size());
  if (threads <= 1 || labels.size() <= 1) {
    for (std::size_t k = 0; k < labels.size(); ++k) out[k] = build_eigenfunction(params, labels[k]);
    return out;
  }
  const std::size_t workers = std::min<std::size_t>(threads, labels.size());
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < labels.size(); k += workers) {
        out[k] = build_eigenfunction(params, labels[k]);
      }
    }));
  }
  for (auto& job : jobs) job.get();
  return out;
}

/// Exact rank of a list of coefficient rows (Gaussian elimination over Q).
inline std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational factor = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

/// Rank over Q of the eigenpolynomials' coefficient matrix in the monomial
/// symmetric basis. All members must share params and level.
inline std::size_t rank_check(const std::vector<Eigenfunction>& basis) {
  if (basis.empty()) return 0;
  std::map<Partition, std::size_t, CanonicalOrder> columns;
  for (const auto& ef : basis) {
    if (ef.level != basis.front().level || !(ef.params == basis.front().params)) {
      throw ContractViolation("rank_check: basis mixes levels or parameters");
    }
    for (const auto& [mu, c] : ef.poly.terms()) columns.try_emplace(mu, 0);
  }
  std::size_t index = 0;
  for (auto& [mu, col] : columns) col = index++;
  std::vector<std::vector<Rational>> rows;
  for (const auto& ef : basis) {
    std::vector<Rational> row(columns.size());
    for (const auto& [mu, c] : ef.poly.terms()) row[columns.at(mu)] = c;
    rows.push_back(std::move(row));
  }
  return rational_rank(std::move(rows));
}

/// Simultaneous eigenvalues [e_1, ..., e_N] of the conserved quantities
/// I_k = e_k(H_1, ..., H_N) on the state S m_mu. Conjugated by S each H_i
/// becomes x_i d_i + 1/2, so on m_mu the single-mode values are the
/// multiset {2 mu_i + 1/2} with mu padded by zeros to length N.
///
/// These are the eigenvalues on the monomial-labelled states; the
/// power-sum-labelled eigenfunctions diagonalize H but not each I_k.
inline std::vector<Rational> constants_spectrum(const ModelParams& params, const Partition& mu) {
  const std::size_t n = params.n_particles;
  if (mu.length() > n) {
    throw std::domain_error("constants_spectrum: label " + mu.to_string() + " longer than N");
  }
  std::vector<Rational> e(n + 1, Rational(0));
  e[0] = 1;
  for (int part : mu.padded(n)) {
    const Rational h = Rational(2 * part) + Rational(1, 2);
    for (std::size_t k = n; k >= 1; --k) e[k] += h * e[k - 1];
  }
  return {e.begin() + 1, e.end()};
}

}  // namespace bncsm

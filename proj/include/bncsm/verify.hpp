#pragma once

#include "bncsm/params.hpp"
#include "bncsm/quadrature.hpp"
#include "bncsm/spectrum.hpp"
#include "bncsm/sympoly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bncsm {

class UnsafePoint : public std::domain_error {
  using std::domain_error::domain_error;
};

class QuadratureConfigError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Default seed for pseudo-random sample points.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// A configuration point kept away from the singular hyperplanes of the
/// Hamiltonian (x_i = 0, x_i = +-x_j) and inside the box |x_i| <= 3.
class SamplePoint {
 public:
  static constexpr double kMargin = 0.3;
  static constexpr double kBox = 3.0;

  explicit SamplePoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (!is_safe(coords_)) throw UnsafePoint("sample point violates safety margins");
  }

  static bool is_safe(std::span<const double> x) {
    if (x.empty()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::abs(x[i]) < kMargin || std::abs(x[i]) > kBox) return false;
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        if (std::abs(x[i] - x[j]) < kMargin || std::abs(x[i] + x[j]) < kMargin) return false;
      }
    }
    return true;
  }

  const std::vector<double>& coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }

 private:
  std::vector<double> coords_;
};

/// Uniform points in the box, rejected until the safety margins hold.
inline std::vector<SamplePoint> sample_safe_points(std::size_t n, std::size_t count,
                                                   std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-SamplePoint::kBox, SamplePoint::kBox);
  std::vector<SamplePoint> out;
  std::vector<double> x(n);
  while (out.size() < count) {
    for (auto& xi : x) xi = coord(rng);
    if (SamplePoint::is_safe(x)) out.emplace_back(x);
  }
  return out;
}

namespace detail {

inline void check_dimension(const ModelParams& params, std::size_t size) {
  if (size != params.n_particles) {
    throw ContractViolation("sample point dimension differs from N");
  }
}

/// psi0 without safety checks, for stencil points near a safe centre.
template <typename Real>
Real ground_state_raw(const ModelParams& params, std::span<const Real> x) {
  const Real lambda = static_cast<Real>(to_long_double(params.lambda));
  const Real lambda1 = static_cast<Real>(to_long_double(params.lambda1));
  Real value = 1;
  Real r2 = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t k = j + 1; k < x.size(); ++k) {
      value *= std::pow(std::abs(x[j] - x[k]) * std::abs(x[j] + x[k]), lambda);
    }
    value *= std::pow(std::abs(x[j]), lambda1);
    r2 += x[j] * x[j];
  }
  return value * std::exp(-r2 / 2);
}

template <typename Real>
Real eigenfunction_raw(const Eigenfunction& ef, std::span<const Real> x) {
  std::vector<Real> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] * x[i];
  return ground_state_raw<Real>(ef.params, x) *
         evaluate<Real>(ef.poly, std::span<const Real>(y));
}

/// Explicit monomial list with coefficients in long double, for evaluating
/// one polynomial at many quadrature nodes.
class FlatPolynomial {
 public:
  explicit FlatPolynomial(const SymPoly& p) : max_power_(p.max_degree()) {
    const Polynomial expanded = p.expand();
    for (const auto& [e, c] : expanded.terms()) terms_.push_back({e, to_long_double(c)});
  }

  int max_power() const noexcept { return max_power_; }

  /// powers[i][k] = y_i^k for k <= max_power.
  long double operator()(const std::vector<std::vector<long double>>& powers) const {
    long double total = 0;
    for (const auto& [e, c] : terms_) {
      long double term = c;
      for (std::size_t i = 0; i < e.size(); ++i) term *= powers[i][static_cast<std::size_t>(e[i])];
      total += term;
    }
    return total;
  }

 private:
  struct Term {
    Exponents exponents;
    long double coeff;
  };
  int max_power_;
  std::vector<Term> terms_;
};

}  // namespace detail

/// psi0(x) = prod_{j<k} |x_j - x_k|^lambda |x_j + x_k|^lambda
///           * prod_k |x_k|^lambda1 * exp(-|x|^2 / 2).
inline double eval_ground_state(const ModelParams& params, const SamplePoint& x) {
  detail::check_dimension(params, x.size());
  return detail::ground_state_raw<double>(params, std::span<const double>(x.coords()));
}

/// psi0(x) * poly(x_1^2, ..., x_N^2).
inline double eval_eigenfunction(const Eigenfunction& ef, const SamplePoint& x) {
  detail::check_dimension(ef.params, x.size());
  return detail::eigenfunction_raw<double>(ef, std::span<const double>(x.coords()));
}

/// Relative residual |H psi - E psi| / max(|psi|, 1e-30) of the physical
/// Hamiltonian at a safe point. The Laplacian uses the fourth-order
/// five-point stencil with step h; the potential is evaluated exactly.
/// Arithmetic is carried out in long double.
inline double fd_residual(const Eigenfunction& ef, const SamplePoint& point, double h,
                          const Rational& energy) {
  detail::check_dimension(ef.params, point.size());
  if (!(h >= 1e-4 && h <= 1e-2)) throw std::invalid_argument("fd_residual: h outside [1e-4, 1e-2]");
  using Real = long double;
  const std::size_t n = point.size();
  std::vector<Real> x(point.coords().begin(), point.coords().end());
  auto psi = [&](const std::vector<Real>& at) {
    return detail::eigenfunction_raw<Real>(ef, std::span<const Real>(at));
  };
  const Real step = h;
  const Real centre = psi(x);

  Real laplacian = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto shifted = [&](Real offset) {
      std::vector<Real> at = x;
      at[i] += offset;
      return psi(at);
    };
    laplacian += (-shifted(2 * step) + 16 * shifted(step) - 30 * centre + 16 * shifted(-step) -
                  shifted(-2 * step)) /
                 (12 * step * step);
  }

  const Real g2 = to_long_double(ef.params.g_squared());
  const Real g12 = to_long_double(ef.params.g1_squared());
  Real potential = 0;
  for (std::size_t i = 0; i < n; ++i) {
    potential += x[i] * x[i] / 2 + g12 / (2 * x[i] * x[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Real minus = x[i] - x[j];
      const Real plus = x[i] + x[j];
      // ordered sum over i != j counts each pair twice, cancelling the 1/2
      potential += g2 * (1 / (minus * minus) + 1 / (plus * plus));
    }
  }
  const Real h_psi = -laplacian / 2 + potential * centre;
  const Real e = to_long_double(energy);
  const Real scale = std::max<Real>(std::abs(centre), 1e-30L);
  return static_cast<double>(std::abs(h_psi - e * centre) / scale);
}

inline double fd_residual(const Eigenfunction& ef, const SamplePoint& point, double h = 1e-3) {
  return fd_residual(ef, point, h, ef.energy);
}

struct QuadratureConfig {
  int nodes_per_dim = 24;
};

/// Smallest node count accepted for a Gram matrix of polynomials of y-degree
/// at most max_degree: max_degree + ceil(N lambda) + 2.
inline int min_quadrature_nodes(const ModelParams& params, int max_degree) {
  const Rational nl = Rational(static_cast<long>(params.n_particles)) * params.lambda;
  Integer ceil_nl = numerator(nl) / denominator(nl);
  if (Rational(ceil_nl) < nl) ++ceil_nl;
  return max_degree + ceil_nl.convert_to<int>() + 2;
}

/// Gram matrix of eigenpolynomials under the weight inherited from psi0^2 in
/// y = x^2 coordinates on the positive orthant:
///   prod_i y_i^{lambda1 - 1/2} e^{-y_i} prod_{i<j} |y_i - y_j|^{2 lambda}.
/// Tensor generalized Gauss-Laguerre quadrature; exact up to rounding when
/// lambda is an integer and the node count meets the minimum. Summation runs
/// in node-index order.
inline Eigen::MatrixXd gram_matrix(const std::vector<Eigenfunction>& efs,
                                   const QuadratureConfig& cfg) {
  if (efs.empty()) return {};
  const ModelParams& params = efs.front().params;
  int max_degree = 0;
  for (const auto& ef : efs) {
    if (!(ef.params == params)) throw ContractViolation("gram_matrix: mixed parameters");
    max_degree = std::max(max_degree, ef.poly.max_degree());
  }
  const int need = min_quadrature_nodes(params, max_degree);
  if (cfg.nodes_per_dim < need) {
    throw QuadratureConfigError("gram_matrix: " + std::to_string(cfg.nodes_per_dim) +
                                " nodes per dimension, need at least " + std::to_string(need));
  }
  const std::size_t n = params.n_particles;
  const long double pair_power = 2 * to_long_double(params.lambda);
  const QuadratureRule rule =
      gauss_laguerre(cfg.nodes_per_dim, to_long_double(params.lambda1) - 0.5L);
  const std::size_t m = rule.nodes.size();

  std::vector<detail::FlatPolynomial> flat;
  for (const auto& ef : efs) flat.emplace_back(ef.poly);

  const std::size_t count = efs.size();
  std::vector<long double> acc(count * count, 0.0L);
  std::vector<std::size_t> index(n, 0);
  std::vector<long double> y(n);
  std::vector<std::vector<long double>> powers(n, std::vector<long double>(max_degree + 1));
  std::vector<long double> values(count);
  for (;;) {
    long double w = 1;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = rule.nodes[index[i]];
      w *= rule.weights[index[i]];
      powers[i][0] = 1;
      for (int k = 1; k <= max_degree; ++k) powers[i][k] = powers[i][k - 1] * y[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) w *= std::pow(std::abs(y[i] - y[j]), pair_power);
    }
    if (w != 0) {
      for (std::size_t a = 0; a < count; ++a) values[a] = flat[a](powers);
      for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = a; b < count; ++b) acc[a * count + b] += w * values[a] * values[b];
      }
    }
    std::size_t d = 0;
    while (d < n && ++index[d] == m) index[d++] = 0;
    if (d == n) break;
  }
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < a; ++b) acc[a * count + b] = acc[b * count + a];
  }
  Eigen::MatrixXd gram(count, count);
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          static_cast<double>(acc[a * count + b]);
    }
  }
  return gram;
}

/// G_ab / sqrt(G_aa G_bb).
inline Eigen::MatrixXd normalized_gram(const Eigen::MatrixXd& gram) {
  Eigen::MatrixXd out = gram;
  for (Eigen::Index a = 0; a < gram.rows(); ++a) {
    for (Eigen::Index b = 0; b < gram.cols(); ++b) {
      out(a, b) = gram(a, b) / std::sqrt(gram(a, a) * gram(b, b));
    }
  }
  return out;
}

/// Largest |normalized entry| between eigenfunctions of different levels.
inline double max_off_block(const std::vector<Eigenfunction>& efs, const Eigen::MatrixXd& gram) {
  const Eigen::MatrixXd normalized = normalized_gram(gram);
  double worst = 0;
  for (std::size_t a = 0; a < efs.size(); ++a) {
    for (std::size_t b = 0; b < efs.size(); ++b) {
      if (efs[a].level == efs[b].level) continue;
      worst = std::max(worst, std::abs(normalized(static_cast<Eigen::Index>(a),
                                                  static_cast<Eigen::Index>(b))));
    }
  }
  return worst;
}

}  // namespace bncsm

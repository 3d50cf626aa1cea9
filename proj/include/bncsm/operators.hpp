#pragma once

#include "bncsm/params.hpp"
#include "bncsm/polynomial.hpp"
#include "bncsm/sympoly.hpp"

#include <stdexcept>
#include <string>

namespace bncsm {

namespace detail {

inline void require_tag(const SymPoly& p, VarTag tag, const char* op) {
  if (p.tag() != tag) {
    throw ContractViolation(std::string(op) + " expects tag " + to_string(tag) + ", got " +
                            to_string(p.tag()));
  }
}

inline void require_particles(const SymPoly& p, const ModelParams& params, const char* op) {
  if (p.n_vars() != params.n_particles) {
    throw ContractViolation(std::string(op) + ": polynomial has " + std::to_string(p.n_vars()) +
                            " variables but N = " + std::to_string(params.n_particles));
  }
}

/// Every operator here strictly lowers the grading. A homogeneous input must
/// come out homogeneous of degree exactly `drop` lower, or vanish.
inline void check_grading(const SymPoly& in, const SymPoly& out, int drop, const char* op) {
  const auto din = in.homogeneous_degree();
  if (!din || out.is_zero()) return;
  const auto dout = out.homogeneous_degree();
  if (!dout || *dout != *din - drop) {
    throw std::logic_error(std::string("internal consistency: ") + op +
                           " did not lower the degree by " + std::to_string(drop));
  }
}

/// h_k(u, v) = sum_{m=0}^{k} u^m v^{k-m}, times u^s v^s and the spectator
/// exponents, accumulated into out. k < 0 contributes nothing.
inline void add_pair_sum(Polynomial& out, const Exponents& spectators, std::size_t i,
                         std::size_t j, int s, int k, const Rational& c) {
  if (k < 0 || c == 0) return;
  Exponents e = spectators;
  for (int m = 0; m <= k; ++m) {
    e[i] = s + m;
    e[j] = s + k - m;
    out.add_term(e, c);
  }
}

}  // namespace detail

/// Euler operator sum_i x_i d/dx_i on a homogeneous polynomial: multiplies by
/// the x-space degree (twice the weight in Y variables).
inline SymPoly apply_euler(const SymPoly& p) {
  const auto d = p.homogeneous_degree();
  if (!d) throw std::invalid_argument("apply_euler: input is not homogeneous");
  const int x_degree = p.tag() == VarTag::Y ? 2 * *d : *d;
  return Rational(x_degree) * p;
}

/// Euler operator on an arbitrary polynomial, applied degree by degree.
inline SymPoly apply_euler_graded(const SymPoly& p) {
  SymPoly out(p.n_vars(), p.tag());
  for (const auto& [d, piece] : p.components()) out += apply_euler(piece);
  return out;
}

/// The B_N lowering operator, psi0^{-1} H psi0 - sum_i x_i d_i - E0:
///   F = -( 1/2 sum_i d_i^2 + 2 lambda sum_{i<j} (x_i d_i - x_j d_j)/(x_i^2 - x_j^2)
///          + lambda1 sum_i (1/x_i) d_i ).
/// The pair coefficient is 2 lambda because d_i log|x_i^2 - x_j^2|^lambda =
/// 2 lambda x_i / (x_i^2 - x_j^2). On even symmetric functions, in y = x^2:
///   F = -( sum_i (d_i + 2 y_i d_i^2 + 2 lambda1 d_i)
///          + 4 lambda sum_{i<j} (y_i d_i - y_j d_j)/(y_i - y_j) ).
/// The divided difference acts on each swap pair y_i^a y_j^b + y_i^b y_j^a
/// (a > b) as (a - b)(y_i y_j)^b h_{a-b-1}(y_i, y_j); equal exponents give 0.
inline SymPoly apply_F(const SymPoly& p, const ModelParams& params) {
  detail::require_tag(p, VarTag::Y, "apply_F");
  detail::require_particles(p, params, "apply_F");
  const std::size_t n = p.n_vars();
  const Rational pair_weight = 4 * params.lambda;
  const Rational two_lambda1 = 2 * params.lambda1;

  Polynomial out(n);
  const Polynomial expanded = p.expand();
  for (const auto& [e, c] : expanded.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      Exponents d = e;
      --d[i];
      // d_i + 2 y_i d_i^2 + 2 lambda1 d_i on y_i^a gives a (2a - 1 + 2 lambda1) y_i^{a-1}
      out.add_term(std::move(d), -c * e[i] * (Rational(2 * e[i] - 1) + two_lambda1));
    }
    if (params.lambda == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        // Each swap pair is visited once, through its member with e_i > e_j.
        if (e[i] <= e[j]) continue;
        const int gap = e[i] - e[j];
        detail::add_pair_sum(out, e, i, j, e[j], gap - 1, -c * pair_weight * gap);
      }
    }
  }
  SymPoly result = collect_symmetric(out, VarTag::Y);
  detail::check_grading(p, result, 1, "apply_F");
  return result;
}

/// The A_N operator A = 1/2 sum_i d_i^2 + alpha sum_{i<j} (d_i - d_j)/(x_i - x_j)
/// on symmetric polynomials in x. For a swap pair x_i^a x_j^b + x_i^b x_j^a
/// (a > b) the divided difference is
///   a (x_i x_j)^b h_{a-b-2} - b (x_i x_j)^{b-1} h_{a-b},
/// and a lone x_i^a x_j^a gives -a (x_i x_j)^{a-1}.
inline SymPoly apply_A(const SymPoly& p, const ModelParams& params) {
  detail::require_tag(p, VarTag::X, "apply_A");
  detail::require_particles(p, params, "apply_A");
  const std::size_t n = p.n_vars();
  const Rational& alpha = params.alpha;

  Polynomial out(n);
  const Polynomial expanded = p.expand();
  for (const auto& [e, c] : expanded.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] < 2) continue;
      Exponents d = e;
      d[i] -= 2;
      out.add_term(std::move(d), c * Rational(e[i] * (e[i] - 1), 2));
    }
    if (alpha == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const int a = e[i];
        const int b = e[j];
        if (a < b) continue;
        if (a == b) {
          if (a > 0) detail::add_pair_sum(out, e, i, j, a - 1, 0, -c * alpha * a);
          continue;
        }
        detail::add_pair_sum(out, e, i, j, b, a - b - 2, c * alpha * a);
        if (b > 0) detail::add_pair_sum(out, e, i, j, b - 1, a - b, -c * alpha * b);
      }
    }
  }
  SymPoly result = collect_symmetric(out, VarTag::X);
  detail::check_grading(p, result, 2, "apply_A");
  return result;
}

/// x-space Laplacian sum_i d^2/dx_i^2, in either coordinate convention. In Y
/// variables it reads sum_i (2 d_i + 4 y_i d_i^2).
inline SymPoly apply_laplacian(const SymPoly& p) {
  if (p.tag() == VarTag::X) {
    SymPoly result = collect_symmetric(p.expand().laplacian(), VarTag::X);
    detail::check_grading(p, result, 2, "apply_laplacian");
    return result;
  }
  Polynomial out(p.n_vars());
  const Polynomial expanded = p.expand();
  for (const auto& [e, c] : expanded.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Exponents d = e;
      --d[i];
      out.add_term(std::move(d), c * (e[i] * (4 * e[i] - 2)));
    }
  }
  SymPoly result = collect_symmetric(out, VarTag::Y);
  detail::check_grading(p, result, 1, "apply_laplacian");
  return result;
}

/// A degree-lowering operator times an exact scale factor; the argument of a
/// terminating exponential.
struct GradedOperator {
  enum class Kind { F, A, Laplacian };

  Kind kind;
  Rational scale;

  /// F/2, which diagonalizes the transformed B_N Hamiltonian.
  static GradedOperator half_F() { return {Kind::F, Rational(1, 2)}; }
  /// -A/2, the A_N counterpart.
  static GradedOperator minus_half_A() { return {Kind::A, Rational(-1, 2)}; }
  /// -1/4 Laplacian, whose exponential is the Gaussian smoothing E.
  static GradedOperator smoothing() { return {Kind::Laplacian, Rational(-1, 4)}; }

  GradedOperator negated() const { return {kind, -scale}; }

  SymPoly apply(const SymPoly& p, const ModelParams& params) const {
    switch (kind) {
      case Kind::F:
        return scale * apply_F(p, params);
      case Kind::A:
        return scale * apply_A(p, params);
      case Kind::Laplacian:
        return scale * apply_laplacian(p);
    }
    throw std::logic_error("unknown operator kind");
  }
};

/// sum_k op^k p / k!. Terminates after at most deg(p) + 1 terms since op
/// strictly lowers the grading.
inline SymPoly exp_graded(const GradedOperator& op, const SymPoly& p, const ModelParams& params) {
  SymPoly out = p;
  SymPoly term = p;
  const int max_terms = 2 * p.max_degree() + 1;
  for (int k = 1; !term.is_zero(); ++k) {
    if (k > max_terms) throw std::logic_error("internal consistency: exponential did not terminate");
    term = op.apply(term, params);
    term *= Rational(1, k);
    out += term;
  }
  return out;
}

/// psi0^{-1} H psi0 = sum_i x_i d_i + E0 + F on even symmetric functions.
inline SymPoly apply_transformed_H(const SymPoly& p, const ModelParams& params) {
  detail::require_tag(p, VarTag::Y, "apply_transformed_H");
  return apply_euler_graded(p) + params.ground_energy() * p + apply_F(p, params);
}

/// Conjugated A_N Hamiltonian sum_i x_i d_i + E0' - A.
inline SymPoly apply_transformed_H_cs(const SymPoly& p, const ModelParams& params) {
  detail::require_tag(p, VarTag::X, "apply_transformed_H_cs");
  return apply_euler_graded(p) + params.cs_ground_energy() * p - apply_A(p, params);
}

/// Rewrites a polynomial in y = x^2 as the same function of x: m_mu(y) = m_{2mu}(x).
inline SymPoly y_to_x(const SymPoly& p) {
  detail::require_tag(p, VarTag::Y, "y_to_x");
  SymPoly out(p.n_vars(), VarTag::X);
  for (const auto& [mu, c] : p.terms()) out.add_term(mu.scaled(2), c);
  return out;
}

/// Inverse of y_to_x; every part must be even.
inline SymPoly x_to_y(const SymPoly& p) {
  detail::require_tag(p, VarTag::X, "x_to_y");
  SymPoly out(p.n_vars(), VarTag::Y);
  for (const auto& [mu, c] : p.terms()) {
    std::vector<int> half;
    for (int part : mu.parts()) {
      if (part % 2 != 0) throw std::domain_error("x_to_y: term " + mu.to_string() + " is odd");
      half.push_back(part / 2);
    }
    out.add_term(Partition(std::move(half)), c);
  }
  return out;
}

/// True when every variable occurs with even power, i.e. p is a function of
/// the squared coordinates.
inline bool is_even_sector(const SymPoly& p) {
  for (const auto& [mu, c] : p.terms()) {
    for (int part : mu.parts()) {
      if (part % 2 != 0) return false;
    }
  }
  return true;
}

}  // namespace bncsm

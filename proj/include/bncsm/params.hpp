#pragma once

#include "bncsm/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bncsm {

/// Particle number and couplings, in units hbar = m = omega = 1. lambda and
/// lambda1 parametrize the B_N model, alpha the A_N model it is mapped to.
struct ModelParams {
  std::size_t n_particles = 1;
  Rational lambda{0};
  Rational lambda1{0};
  Rational alpha{0};

  ModelParams() = default;
  ModelParams(std::size_t n, Rational lam, Rational lam1, Rational a = Rational(0))
      : n_particles(n), lambda(std::move(lam)), lambda1(std::move(lam1)), alpha(std::move(a)) {
    validate();
  }

  void validate() const {
    if (n_particles == 0) throw std::invalid_argument("particle number must be positive");
    if (lambda < 0 || lambda1 < 0 || alpha < 0) {
      throw std::invalid_argument("couplings lambda, lambda1, alpha must be nonnegative");
    }
  }

  /// g^2 = lambda (lambda - 1)
  Rational g_squared() const { return lambda * (lambda - 1); }
  /// g1^2 = lambda1 (lambda1 - 1)
  Rational g1_squared() const { return lambda1 * (lambda1 - 1); }

  /// B_N ground-state energy N (1/2 + (N - 1) lambda + lambda1).
  Rational ground_energy() const {
    const Rational n(static_cast<long>(n_particles));
    return n * (Rational(1, 2) + (n - 1) * lambda + lambda1);
  }

  /// A_N (Calogero-Sutherland) ground-state energy (N/2)(1 + alpha (N - 1)).
  Rational cs_ground_energy() const {
    const Rational n(static_cast<long>(n_particles));
    return n / 2 * (1 + alpha * (n - 1));
  }

  /// Couplings strictly between 0 and 1 have no established normalizability
  /// guarantee; such runs are flagged in reports rather than rejected.
  bool normalizability_unverified() const {
    auto inside = [](const Rational& r) { return r > 0 && r < 1; };
    return inside(lambda) || inside(lambda1);
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

}  // namespace bncsm

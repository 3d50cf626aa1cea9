#pragma once

#include "bncsm/rational.hpp"

#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bncsm {

using Exponents = std::vector<int>;

/// Sparse polynomial in n explicit variables with exact coefficients. Used
/// where symmetry is not available (Hermite smoothing of single modes) and as
/// the working representation inside operator application.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t n_vars) : n_vars_(n_vars) {
    if (n_vars == 0) {
      throw std::invalid_argument("Polynomial needs at least one variable");
    }
  }

  static Polynomial constant(std::size_t n_vars, const Rational& c) {
    Polynomial p(n_vars);
    p.add_term(Exponents(n_vars, 0), c);
    return p;
  }

  static Polynomial monomial(Exponents e, const Rational& c = Rational(1)) {
    Polynomial p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t n_vars() const noexcept { return n_vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(Exponents e, const Rational& c) {
    if (e.size() != n_vars_) {
      throw std::invalid_argument("exponent vector length does not match n_vars");
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Maximum total degree; zero for the zero polynomial.
  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    }
    return d;
  }

  Polynomial& operator+=(const Polynomial& other) {
    check_compatible(other);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& other) {
    check_compatible(other);
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
  }

  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Rational& s, Polynomial p) { return p *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    Polynomial out(a.n_vars_);
    Exponents e(a.n_vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Partial derivative with respect to variable i.
  Polynomial derivative(std::size_t i) const {
    Polynomial out(n_vars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents d = e;
      --d[i];
      out.add_term(std::move(d), c * e[i]);
    }
    return out;
  }

  /// Sum of second derivatives over all variables.
  Polynomial laplacian() const {
    Polynomial out(n_vars_);
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < n_vars_; ++i) {
        if (e[i] < 2) continue;
        Exponents d = e;
        d[i] -= 2;
        out.add_term(std::move(d), c * (e[i] * (e[i] - 1)));
      }
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += "(" + bncsm::to_string(it->second) + ")";
      for (std::size_t i = 0; i < n_vars_; ++i) {
        if (it->first[i] == 0) continue;
        s += "*x" + std::to_string(i + 1);
        if (it->first[i] > 1) s += "^" + std::to_string(it->first[i]);
      }
    }
    return s;
  }

 private:
  void check_compatible(const Polynomial& other) const {
    if (other.n_vars_ != n_vars_) {
      throw std::invalid_argument("Polynomial variable counts differ");
    }
  }

  std::size_t n_vars_;
  TermMap terms_;
};

/// Applies exp{-1/4 * Laplacian} exactly. The series terminates because each
/// Laplacian lowers the total degree by two. On x^n this yields 2^-n H_n(x).
inline Polynomial hermite_smooth(const Polynomial& p) {
  Polynomial out = p;
  Polynomial term = p;
  const Rational quarter(-1, 4);
  for (unsigned k = 1; !term.is_zero(); ++k) {
    term = term.laplacian();
    term *= quarter / Rational(k);
    out += term;
  }
  return out;
}

}  // namespace bncsm

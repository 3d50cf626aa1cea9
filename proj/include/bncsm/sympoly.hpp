#pragma once

#include "bncsm/partition.hpp"
#include "bncsm/polynomial.hpp"
#include "bncsm/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bncsm {

/// Which coordinates a symmetric polynomial is written in: Y holds the
/// squared coordinates y_i = x_i^2 (B_N side), X the plain coordinates.
enum class VarTag { Y, X };

inline const char* to_string(VarTag tag) { return tag == VarTag::Y ? "Y" : "X"; }

/// Raised when two operands, or an operand and an operation, disagree on
/// variable count or coordinate convention.
class ContractViolation : public std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {

/// Distinct exponent vectors obtained by permuting the padded partition, in
/// lexicographic order. Memoized per (partition, n); the memo is guarded by
/// a shared mutex so concurrent readers never block each other.
inline const std::vector<Exponents>& orbit(const Partition& mu, std::size_t n) {
  using Key = std::pair<std::vector<int>, std::size_t>;
  static std::map<Key, std::vector<Exponents>> memo;
  static std::shared_mutex mutex;

  Key key{mu.parts(), n};
  {
    std::shared_lock lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  Exponents e = mu.padded(n);
  std::sort(e.begin(), e.end());
  std::vector<Exponents> members;
  do {
    members.push_back(e);
  } while (std::next_permutation(e.begin(), e.end()));

  std::unique_lock lock(mutex);
  auto [it, inserted] = memo.try_emplace(std::move(key), std::move(members));
  return it->second;
}

}  // namespace detail

/// Symmetric polynomial in the monomial symmetric basis: a finite map from
/// partitions to exact coefficients, with no stored zeros.
class SymPoly {
 public:
  using TermMap = std::map<Partition, Rational, CanonicalOrder>;

  SymPoly(std::size_t n_vars, VarTag tag) : n_vars_(n_vars), tag_(tag) {
    if (n_vars == 0) throw std::invalid_argument("SymPoly needs at least one variable");
  }

  static SymPoly constant(std::size_t n_vars, VarTag tag, const Rational& c) {
    SymPoly p(n_vars, tag);
    p.add_term(Partition{}, c);
    return p;
  }

  /// c * m_mu
  static SymPoly monomial(std::size_t n_vars, VarTag tag, const Partition& mu,
                          const Rational& c = Rational(1)) {
    SymPoly p(n_vars, tag);
    p.add_term(mu, c);
    return p;
  }

  std::size_t n_vars() const noexcept { return n_vars_; }
  VarTag tag() const noexcept { return tag_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Partition& mu) const {
    auto it = terms_.find(mu);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Partition& mu, const Rational& c) {
    if (mu.length() > n_vars_) {
      throw std::invalid_argument("partition " + mu.to_string() + " longer than n_vars = " +
                                  std::to_string(n_vars_));
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(mu, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Common weight of all terms, or nullopt when the weights differ. The zero
  /// polynomial reports degree 0.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return 0;
    const int d = terms_.begin()->first.weight();
    for (const auto& [mu, c] : terms_) {
      if (mu.weight() != d) return std::nullopt;
    }
    return d;
  }

  /// Largest weight present (0 for the zero polynomial).
  int max_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.weight(); }

  /// Terms of weight exactly d.
  SymPoly component(int d) const {
    SymPoly out(n_vars_, tag_);
    for (const auto& [mu, c] : terms_) {
      if (mu.weight() == d) out.terms_.emplace(mu, c);
    }
    return out;
  }

  /// Homogeneous pieces keyed by weight.
  std::map<int, SymPoly> components() const {
    std::map<int, SymPoly> out;
    for (const auto& [mu, c] : terms_) {
      out.try_emplace(mu.weight(), n_vars_, tag_).first->second.terms_.emplace(mu, c);
    }
    return out;
  }

  /// Explicit expansion over the variables (distinct monomials only).
  Polynomial expand() const {
    Polynomial out(n_vars_);
    for (const auto& [mu, c] : terms_) {
      for (const auto& e : detail::orbit(mu, n_vars_)) out.add_term(e, c);
    }
    return out;
  }

  SymPoly& operator+=(const SymPoly& other) {
    check_compatible(other);
    for (const auto& [mu, c] : other.terms_) add_term(mu, c);
    return *this;
  }

  SymPoly& operator-=(const SymPoly& other) {
    check_compatible(other);
    for (const auto& [mu, c] : other.terms_) add_term(mu, -c);
    return *this;
  }

  SymPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [mu, c] : terms_) c *= s;
    return *this;
  }

  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator-(SymPoly a) { return a *= Rational(-1); }
  friend SymPoly operator*(const Rational& s, SymPoly p) { return p *= s; }

  friend bool operator==(const SymPoly& a, const SymPoly& b) {
    return a.n_vars_ == b.n_vars_ && a.tag_ == b.tag_ && a.terms_ == b.terms_;
  }

  void check_compatible(const SymPoly& other) const {
    if (other.n_vars_ != n_vars_ || other.tag_ != tag_) {
      throw ContractViolation("SymPoly operands differ in n_vars or variable tag");
    }
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [mu, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + bncsm::to_string(c) + ")*m" + mu.to_string();
    }
    return s;
  }

 private:
  std::size_t n_vars_;
  VarTag tag_;
  TermMap terms_;
};

inline SymPoly add(const SymPoly& p, const SymPoly& q) { return p + q; }
inline SymPoly scale(const Rational& c, const SymPoly& p) { return c * p; }

/// Collects a symmetric explicit polynomial back into the monomial symmetric
/// basis. Every monomial must carry the same coefficient as its sorted
/// representative; a mismatch means an operator produced a non-symmetric
/// result, which is an internal error.
inline SymPoly collect_symmetric(const Polynomial& p, VarTag tag) {
  SymPoly out(p.n_vars(), tag);
  for (const auto& [e, c] : p.terms()) {
    if (std::is_sorted(e.begin(), e.end(), std::greater<>())) {
      out.add_term(Partition::from_exponents(e), c);
    }
  }
  for (const auto& [e, c] : p.terms()) {
    Exponents sorted = e;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (p.coefficient(sorted) != c) {
      throw std::logic_error("internal consistency: polynomial is not symmetric");
    }
  }
  return out;
}

/// Product re-expanded in the monomial symmetric basis. The coefficient of
/// m_nu is the number of pairs (a in orbit(mu), b in orbit(kappa)) with
/// a + b = nu, so only sums landing on a weakly decreasing vector are kept.
inline SymPoly multiply(const SymPoly& p, const SymPoly& q) {
  p.check_compatible(q);
  const std::size_t n = p.n_vars();
  SymPoly out(n, p.tag());
  Exponents sum(n);
  for (const auto& [mu, cp] : p.terms()) {
    const auto& left = detail::orbit(mu, n);
    for (const auto& [kappa, cq] : q.terms()) {
      const auto& right = detail::orbit(kappa, n);
      std::map<Exponents, int> counts;
      for (const auto& a : left) {
        for (const auto& b : right) {
          for (std::size_t i = 0; i < n; ++i) sum[i] = a[i] + b[i];
          if (std::is_sorted(sum.begin(), sum.end(), std::greater<>())) ++counts[sum];
        }
      }
      const Rational c = cp * cq;
      for (const auto& [nu, count] : counts) {
        out.add_term(Partition::from_exponents(nu), c * count);
      }
    }
  }
  return out;
}

inline SymPoly operator*(const SymPoly& p, const SymPoly& q) { return multiply(p, q); }

/// prod_l P_l^{n_l} with P_l = m_(l), expanded in the monomial basis.
inline SymPoly power_sum_product(const std::map<int, int>& exponents, std::size_t n_vars,
                                 VarTag tag) {
  SymPoly out = SymPoly::constant(n_vars, tag, Rational(1));
  for (const auto& [l, count] : exponents) {
    if (l < 1 || static_cast<std::size_t>(l) > n_vars) {
      throw std::domain_error("power sum index " + std::to_string(l) + " outside 1.." +
                              std::to_string(n_vars));
    }
    if (count < 0) throw std::domain_error("power sum exponent must be nonnegative");
    const SymPoly pl = SymPoly::monomial(n_vars, tag, Partition{l});
    for (int k = 0; k < count; ++k) out = multiply(out, pl);
  }
  return out;
}

/// Power-sum product labelled by a partition: part l occurs n_l times.
inline SymPoly power_sum_product(const Partition& label, std::size_t n_vars, VarTag tag) {
  return power_sum_product(label.multiplicities(), n_vars, tag);
}

/// Floating-point value at a point. Terms are visited in canonical order and
/// each m_mu is summed over its distinct exponent assignments in
/// lexicographic order, so the result is reproducible.
template <typename Real>
Real evaluate(const SymPoly& p, std::span<const Real> point) {
  if (point.size() != p.n_vars()) {
    throw ContractViolation("evaluation point has " + std::to_string(point.size()) +
                            " coordinates, polynomial has " + std::to_string(p.n_vars()));
  }
  Real total = 0;
  for (const auto& [mu, c] : p.terms()) {
    Real m = 0;
    for (const auto& e : detail::orbit(mu, p.n_vars())) {
      Real term = 1;
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (int k = 0; k < e[i]; ++k) term *= point[i];
      }
      m += term;
    }
    if constexpr (std::is_same_v<Real, long double>) {
      total += to_long_double(c) * m;
    } else {
      total += static_cast<Real>(to_double(c)) * m;
    }
  }
  return total;
}

inline double evaluate(const SymPoly& p, const std::vector<double>& point) {
  return evaluate<double>(p, std::span<const double>(point));
}

}  // namespace bncsm

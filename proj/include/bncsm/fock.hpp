#pragma once

#include "bncsm/partition.hpp"
#include "bncsm/polynomial.hpp"
#include "bncsm/rational.hpp"
#include "bncsm/sympoly.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bncsm {

// Oscillator states live in the transformed picture, where the creation and
// annihilation operators are a+ = x and a- = d/dx and |n> is x^n. In this
// (non-unitary) basis every matrix element is rational:
//   a+|n> = |n+1>,  a-|n> = n|n-1>,  K+|n> = 1/2 |n+2>,
//   K-|n> = n(n-1)/2 |n-2>,  H0|n> = (n + 1/2)|n>.

class TruncationError : public std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Single-mode state: occupation number -> amplitude, within a fixed cutoff.
class FockState {
 public:
  explicit FockState(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 0) throw std::invalid_argument("FockState cutoff must be nonnegative");
  }

  static FockState basis(int cutoff, int n) {
    FockState s(cutoff);
    s.add(n, Rational(1));
    return s;
  }

  int cutoff() const noexcept { return cutoff_; }
  const std::map<int, Rational>& amplitudes() const noexcept { return amps_; }
  bool is_zero() const noexcept { return amps_.empty(); }

  Rational amplitude(int n) const {
    auto it = amps_.find(n);
    return it == amps_.end() ? Rational(0) : it->second;
  }

  void add(int n, const Rational& c) {
    if (n < 0 || n > cutoff_) {
      throw TruncationError("occupation " + std::to_string(n) + " outside 0.." +
                            std::to_string(cutoff_));
    }
    if (c == 0) return;
    auto [it, inserted] = amps_.try_emplace(n, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) amps_.erase(it);
    }
  }

  bool even_sector() const {
    for (const auto& [n, c] : amps_) {
      if (n % 2 != 0) return false;
    }
    return true;
  }

  FockState& operator+=(const FockState& o) {
    for (const auto& [n, c] : o.amps_) add(n, c);
    return *this;
  }
  FockState& operator-=(const FockState& o) {
    for (const auto& [n, c] : o.amps_) add(n, -c);
    return *this;
  }
  FockState& operator*=(const Rational& s) {
    if (s == 0) amps_.clear();
    for (auto& [n, c] : amps_) c *= s;
    return *this;
  }
  friend FockState operator+(FockState a, const FockState& b) { return a += b; }
  friend FockState operator-(FockState a, const FockState& b) { return a -= b; }
  friend FockState operator*(const Rational& s, FockState a) { return a *= s; }
  friend bool operator==(const FockState&, const FockState&) = default;

  std::string to_string() const {
    if (amps_.empty()) return "0";
    std::string s;
    for (const auto& [n, c] : amps_) {
      if (!s.empty()) s += " + ";
      s += "(" + bncsm::to_string(c) + ")|" + std::to_string(n) + ">";
    }
    return s;
  }

 private:
  int cutoff_;
  std::map<int, Rational> amps_;
};

/// The single-mode ladder and SU(1,1) operators. `k_plus_scale` is the
/// prefactor of (a+)^2 in K+; it is 1/2 for the genuine algebra and is only
/// varied to build negative controls.
struct SingleModeOperators {
  Rational k_plus_scale{1, 2};

  FockState raise(const FockState& s) const {
    FockState out(s.cutoff());
    for (const auto& [n, c] : s.amplitudes()) out.add(n + 1, c);
    return out;
  }
  FockState lower(const FockState& s) const {
    FockState out(s.cutoff());
    for (const auto& [n, c] : s.amplitudes()) {
      if (n > 0) out.add(n - 1, c * n);
    }
    return out;
  }
  FockState k_plus(const FockState& s) const { return k_plus_scale * raise(raise(s)); }
  FockState k_minus(const FockState& s) const { return Rational(1, 2) * lower(lower(s)); }
  FockState h0(const FockState& s) const {
    return raise(lower(s)) + Rational(1, 2) * s;
  }
};

struct FockReport {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

/// Verifies [K-, K+] = H0, [H0, K+] = 2K+, [H0, K-] = -2K- and [a-, a+] = 1
/// on every basis state whose images stay inside the cutoff (occupation
/// <= cutoff - 4), and that K+ and K- map even occupations to even ones.
inline FockReport su11_fock_check(int cutoff, const SingleModeOperators& ops = {}) {
  if (cutoff < 6 || cutoff % 2 != 0) {
    throw std::invalid_argument("su11_fock_check: cutoff must be even and >= 6");
  }
  FockReport report{"su11", 0, {}};
  auto expect = [&](bool ok, const std::string& what, int n, const FockState& lhs,
                    const FockState& rhs) {
    ++report.checks;
    if (!ok) {
      report.violations.push_back(what + " on |" + std::to_string(n) + ">: " + lhs.to_string() +
                                  " != " + rhs.to_string());
    }
  };
  for (int n = 0; n <= cutoff - 4; ++n) {
    const FockState s = FockState::basis(cutoff, n);
    const FockState kp = ops.k_plus(s);
    const FockState km = ops.k_minus(s);

    const FockState comm_km_kp = ops.k_minus(kp) - ops.k_plus(km);
    const FockState h = ops.h0(s);
    expect(comm_km_kp == h, "[K-,K+] = H0", n, comm_km_kp, h);

    const FockState comm_h_kp = ops.h0(kp) - ops.k_plus(ops.h0(s));
    expect(comm_h_kp == Rational(2) * kp, "[H0,K+] = 2K+", n, comm_h_kp, Rational(2) * kp);

    const FockState comm_h_km = ops.h0(km) - ops.k_minus(ops.h0(s));
    expect(comm_h_km == Rational(-2) * km, "[H0,K-] = -2K-", n, comm_h_km, Rational(-2) * km);

    const FockState comm_a = ops.lower(ops.raise(s)) - ops.raise(ops.lower(s));
    expect(comm_a == s, "[a-,a+] = 1", n, comm_a, s);

    if (n % 2 == 0) {
      expect(kp.even_sector(), "K+ even-sector closure", n, kp, kp);
      expect(km.even_sector(), "K- even-sector closure", n, km, km);
    }
  }
  return report;
}

/// N-mode product state: occupation vector -> amplitude.
using ModeState = std::map<Exponents, Rational>;

namespace detail {

/// Applies prod_i (K^{sign}_i)^{powers_i} to a product state.
inline ModeState apply_k_powers(const ModeState& in, const Exponents& powers, bool raise) {
  ModeState out;
  for (const auto& [occ, amp] : in) {
    Exponents o = occ;
    Rational c = amp;
    for (std::size_t i = 0; i < o.size() && c != 0; ++i) {
      for (int k = 0; k < powers[i]; ++k) {
        if (raise) {
          c *= Rational(1, 2);
          o[i] += 2;
        } else {
          c *= Rational(o[i] * (o[i] - 1), 2);
          o[i] = o[i] >= 2 ? o[i] - 2 : 0;
          if (c == 0) break;
        }
      }
    }
    if (c == 0) continue;
    auto [it, inserted] = out.try_emplace(o, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

/// m_mu(K^{sign}_1, ..., K^{sign}_N) applied to a state.
inline ModeState apply_symmetric_k(const ModeState& in, const Partition& mu, std::size_t n,
                                   bool raise) {
  ModeState out;
  for (const auto& powers : orbit(mu, n)) {
    for (const auto& [occ, amp] : apply_k_powers(in, powers, raise)) {
      auto [it, inserted] = out.try_emplace(occ, amp);
      if (!inserted) {
        it->second += amp;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Overlap <<mu'|mu>> = <<0| m_mu'(K-) m_mu(K+) |0>, the vacuum amplitude
/// after lowering the ket built from the N decoupled SU(1,1) modes.
inline Rational fock_overlap(const Partition& bra, const Partition& ket, std::size_t n_modes) {
  const Exponents vacuum(n_modes, 0);
  ModeState state{{vacuum, Rational(1)}};
  state = detail::apply_symmetric_k(state, ket, n_modes, true);
  state = detail::apply_symmetric_k(state, bra, n_modes, false);
  auto it = state.find(vacuum);
  return it == state.end() ? Rational(0) : it->second;
}

/// All labels mu with |mu| <= n_max and at most N parts, level by level.
inline std::vector<Partition> occupation_labels(int n_max, std::size_t n_modes) {
  std::vector<Partition> labels;
  for (int n = 0; n <= n_max; ++n) {
    for (auto& mu : partitions_of(n, n > 0 ? n : 1, n_modes)) labels.push_back(std::move(mu));
  }
  return labels;
}

/// Checks <<mu'|mu>> = 0 for every pair of distinct labels up to n_max and
/// <<mu|mu>> > 0 on the diagonal.
inline FockReport fock_orthogonality_check(int n_max, std::size_t n_modes) {
  if (n_max < 0 || n_modes == 0) {
    throw std::invalid_argument("fock_orthogonality_check: need n_max >= 0 and N >= 1");
  }
  FockReport report{"orthogonality", 0, {}};
  const auto labels = occupation_labels(n_max, n_modes);
  for (const auto& bra : labels) {
    for (const auto& ket : labels) {
      const Rational overlap = fock_overlap(bra, ket, n_modes);
      ++report.checks;
      const bool ok = bra == ket ? overlap > 0 : overlap == 0;
      if (!ok) {
        report.violations.push_back("<<" + bra.to_string() + "|" + ket.to_string() +
                                    ">> = " + to_string(overlap));
      }
    }
  }
  return report;
}

}  // namespace bncsm

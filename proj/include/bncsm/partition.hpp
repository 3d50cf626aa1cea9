#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bncsm {

/// Weakly decreasing sequence of positive integers. The empty partition is
/// valid and labels the constant monomial.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) {
        throw std::invalid_argument("partition parts must be positive");
      }
      if (i > 0 && parts_[i] > parts_[i - 1]) {
        throw std::invalid_argument("partition parts must be weakly decreasing");
      }
    }
  }

  /// Sorts a vector of nonnegative exponents and drops the zeros.
  static Partition from_exponents(std::vector<int> exponents) {
    std::sort(exponents.begin(), exponents.end(), std::greater<>());
    while (!exponents.empty() && exponents.back() == 0) {
      exponents.pop_back();
    }
    return Partition(std::move(exponents));
  }

  /// Partition with part l repeated n_l times.
  static Partition from_multiplicities(const std::map<int, int>& multiplicities) {
    std::vector<int> parts;
    for (auto it = multiplicities.rbegin(); it != multiplicities.rend(); ++it) {
      if (it->first <= 0 || it->second < 0) {
        throw std::invalid_argument("multiplicity map needs positive parts and nonnegative counts");
      }
      parts.insert(parts.end(), static_cast<std::size_t>(it->second), it->first);
    }
    return Partition(std::move(parts));
  }

  const std::vector<int>& parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  int weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  bool empty() const noexcept { return parts_.empty(); }
  int largest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }
  int operator[](std::size_t i) const { return parts_.at(i); }

  /// Inverse of from_multiplicities: part l -> number of times it occurs.
  std::map<int, int> multiplicities() const {
    std::map<int, int> out;
    for (int p : parts_) {
      ++out[p];
    }
    return out;
  }

  /// Exponent vector of length n: the parts followed by zeros.
  std::vector<int> padded(std::size_t n) const {
    if (parts_.size() > n) {
      throw std::invalid_argument("partition longer than the number of variables");
    }
    std::vector<int> out(parts_);
    out.resize(n, 0);
    return out;
  }

  Partition scaled(int factor) const {
    std::vector<int> out(parts_);
    for (int& p : out) {
      p *= factor;
    }
    return Partition(std::move(out));
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i > 0) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + "]";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Canonical ordering: larger weight first, and within one weight the
/// reverse-lexicographic order ([3] before [2,1] before [1,1,1]).
struct CanonicalOrder {
  bool operator()(const Partition& a, const Partition& b) const {
    const int wa = a.weight();
    const int wb = b.weight();
    if (wa != wb) {
      return wa > wb;
    }
    return std::lexicographical_compare(b.parts().begin(), b.parts().end(), a.parts().begin(),
                                        a.parts().end());
  }
};

namespace detail {

inline void partitions_rec(int remaining, int max_part, std::size_t max_length,
                           std::vector<int>& current, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  if (current.size() == max_length) {
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    current.push_back(p);
    partitions_rec(remaining - p, p, max_length, current, out);
    current.pop_back();
  }
}

}  // namespace detail

/// Every partition of n with parts <= max_part and at most max_length parts,
/// in reverse-lexicographic order. n = 0 yields the single empty partition.
inline std::vector<Partition> partitions_of(int n, int max_part, std::size_t max_length) {
  if (n < 0) {
    throw std::invalid_argument("partitions_of: n must be nonnegative");
  }
  if (max_part <= 0 || max_length == 0) {
    if (n == 0) return {Partition{}};
    throw std::invalid_argument("partitions_of: max_part and max_length must be positive");
  }
  std::vector<Partition> out;
  std::vector<int> current;
  detail::partitions_rec(n, max_part, max_length, current, out);
  return out;
}

}  // namespace bncsm

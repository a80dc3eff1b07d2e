#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "pwsnf/errors.hpp"
#include "pwsnf/poly.hpp"

namespace pwsnf {

// All ordinary Bell polynomials for one argument sequence:
// at(k, i) = coefficient of x^k in (sum_j v_j x^j)^i, for 1 <= i <= k <= kmax.
// args[j-1] holds v_j; T needs +, * and T{} as zero.
template <class T>
class BellPowers {
 public:
  BellPowers(const std::vector<T>& args, int kmax) : kmax_(kmax) {
    pw_.assign(static_cast<std::size_t>(kmax) + 1, {});
    if (kmax < 1) return;
    // pw_[i][k] for k in [i, kmax]
    pw_[1].assign(static_cast<std::size_t>(kmax) + 1, T{});
    for (int k = 1; k <= kmax && k <= static_cast<int>(args.size()); ++k) pw_[1][k] = args[k - 1];
    for (int i = 2; i <= kmax; ++i) {
      pw_[i].assign(static_cast<std::size_t>(kmax) + 1, T{});
      for (int k = i; k <= kmax; ++k) {
        T acc{};
        for (int j = 1; j <= k - (i - 1) && j <= static_cast<int>(args.size()); ++j) acc = acc + args[j - 1] * pw_[i - 1][k - j];
        pw_[i][k] = std::move(acc);
      }
    }
  }
  const T& at(int k, int i) const {
    if (i < 1 || i > k || k > kmax_) throw Error("bell index out of range");
    return pw_[i][k];
  }
  int kmax() const { return kmax_; }

 private:
  int kmax_;
  std::vector<std::vector<T>> pw_;
};

// B^_{k,i}(v_1, ..., v_{k-i+1}).
template <class T>
T bell(int k, int i, const std::vector<T>& args) {
  if (k < 1 || i < 1 || i > k) throw InputError("bell(k,i) needs k >= i >= 1");
  if (static_cast<int>(args.size()) < k - i + 1)
    throw InputError("bell(" + std::to_string(k) + "," + std::to_string(i) + ") needs " +
                     std::to_string(k - i + 1) + " arguments");
  std::vector<T> used(args.begin(), args.begin() + (k - i + 1));
  return BellPowers<T>(used, k).at(k, i);
}

// Memoized B^_{k,i} as polynomials in abstract symbols v1..vK.
class BellTable {
 public:
  explicit BellTable(int max_k = 16);
  const Ring& ring() const { return ring_; }
  int max_k() const { return max_k_; }
  Poly get(int k, int i) const;

 private:
  int max_k_;
  Ring ring_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, Poly> memo_;
};

}  // namespace pwsnf

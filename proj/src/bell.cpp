#include "pwsnf/bell.hpp"

#include <string>

namespace pwsnf {

static Ring bell_ring(int max_k) {
  if (max_k < 1 || max_k > static_cast<int>(kMaxSymbols)) throw InputError("BellTable size out of range");
  std::vector<std::string> names;
  for (int j = 1; j <= max_k; ++j) names.push_back("v" + std::to_string(j));
  return make_ring(names, false);
}

BellTable::BellTable(int max_k) : max_k_(max_k), ring_(bell_ring(max_k)) {}

Poly BellTable::get(int k, int i) const {
  if (k > max_k_) throw InputError("BellTable too small for k=" + std::to_string(k));
  std::lock_guard<std::mutex> lock(mu_);
  auto it = memo_.find({k, i});
  if (it != memo_.end()) return it->second;
  std::vector<Poly> v;
  for (int j = 1; j <= k - i + 1; ++j) v.push_back(Poly::var(ring_, static_cast<std::size_t>(j - 1)));
  Poly b = bell(k, i, v);
  memo_.emplace(std::make_pair(k, i), b);
  return b;
}

}  // namespace pwsnf

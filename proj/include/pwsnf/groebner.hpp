#pragma once

#include <cstddef>
#include <vector>

#include "pwsnf/poly.hpp"

namespace pwsnf {

struct GroebnerOptions {
  // Counts S-pairs processed plus single reduction steps.
  std::size_t step_budget = 2'000'000;
};

// Reduced, monic Groebner basis (grevlex), sorted by increasing leading monomial.
// Inputs must not involve x, y. Throws ResourceError when the budget is exhausted.
std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const GroebnerOptions& opt = {});

// Complete reduction of f by G in the given order (remainder of multivariate division).
// Canonical only when G is a Groebner basis.
Poly divide_remainder(const Poly& f, const std::vector<Poly>& G, std::size_t* steps = nullptr,
                      std::size_t budget = static_cast<std::size_t>(-1));

// Normal form of f modulo the ideal generated by G. Zero iff f lies in the ideal.
Poly reduce_mod_set(const Poly& f, const std::vector<Poly>& G, const GroebnerOptions& opt = {});

class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(const std::vector<Poly>& gens, const GroebnerOptions& opt = {});
  const std::vector<Poly>& basis() const { return basis_; }
  bool is_zero_ideal() const { return basis_.empty(); }
  bool is_unit() const { return basis_.size() == 1 && basis_[0].is_constant(); }
  Poly reduce(const Poly& f) const;
  bool contains(const Poly& f) const { return reduce(f).is_zero(); }

 private:
  std::vector<Poly> basis_;
};

}  // namespace pwsnf

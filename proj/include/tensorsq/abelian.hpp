#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "tensorsq/group_ops.hpp"

namespace tensorsq {

// Canonical name of a finite abelian group: its prime-power cyclic factors,
// sorted descending. C4 x C4 x C2 x C2 is {4, 4, 2, 2}; the trivial group is
// the empty list.
class AbelianInvariants {
 public:
  AbelianInvariants() = default;

  explicit AbelianInvariants(std::vector<std::uint64_t> factors)
      : factors_(std::move(factors)) {
    factors_.erase(std::remove(factors_.begin(), factors_.end(), 1u),
                   factors_.end());
    std::sort(factors_.begin(), factors_.end(), std::greater<>());
  }

  // Splits each cyclic order into prime powers first, e.g. {6} -> {3, 2}.
  static AbelianInvariants from_cyclic_orders(
      std::vector<std::uint64_t> const& orders) {
    std::vector<std::uint64_t> f;
    for (std::uint64_t n : orders) {
      for (std::uint64_t p : prime_divisors(n)) {
        std::uint64_t q = 1;
        while (n % p == 0) {
          n /= p;
          q *= p;
        }
        f.push_back(q);
      }
    }
    return AbelianInvariants(std::move(f));
  }

  std::vector<std::uint64_t> const& factors() const noexcept { return factors_; }

  std::uint64_t order() const noexcept {
    return std::accumulate(factors_.begin(), factors_.end(), std::uint64_t{1},
                           std::multiplies<>());
  }

  bool is_elementary() const {
    return !factors_.empty() && is_prime(factors_.front()) &&
           std::all_of(factors_.begin(), factors_.end(),
                       [&](auto f) { return f == factors_.front(); });
  }

  // "C4^(2) x C2^(2)"; "1" for the trivial group.
  std::string name() const {
    if (factors_.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < factors_.size();) {
      std::size_t j = i;
      while (j < factors_.size() && factors_[j] == factors_[i]) {
        ++j;
      }
      if (!out.empty()) {
        out += " x ";
      }
      out += "C" + std::to_string(factors_[i]);
      if (j - i > 1) {
        out += "^(" + std::to_string(j - i) + ")";
      }
      i = j;
    }
    return out;
  }

  friend bool operator==(AbelianInvariants const&,
                         AbelianInvariants const&) = default;

 private:
  std::vector<std::uint64_t> factors_;
};

// For each prime p, the number of cyclic factors of order >= p^k equals
// log_p |Omega_k| - log_p |Omega_{k-1}|, where Omega_k = {x : x^{p^k} = 1}
// within the Sylow p-subgroup.
inline AbelianInvariants abelian_invariants(GroupTable const& g) {
  for (elem_t x = 0; x < g.order(); ++x) {
    for (elem_t y = x + 1; y < g.order(); ++y) {
      if (g.mul(x, y) != g.mul(y, x)) {
        throw NotAbelian(x, y);
      }
    }
  }
  std::vector<std::uint64_t> factors;
  for (std::uint64_t p : prime_divisors(g.order())) {
    // p-part of each element order
    std::vector<std::uint64_t> ppart;
    for (std::uint64_t o : g.elem_orders()) {
      if (o % p == 0 || o == 1) {
        std::uint64_t q = o;
        while (q % p == 0) {
          q /= p;
        }
        if (q == 1) {
          ppart.push_back(o);
        }
      }
    }
    std::vector<std::uint64_t> rank;  // rank[k] = log_p |Omega_k|
    rank.push_back(0);
    std::uint64_t sylow = ppart.size();
    for (std::uint64_t pk = p;; pk *= p) {
      std::uint64_t cnt = static_cast<std::uint64_t>(
          std::count_if(ppart.begin(), ppart.end(),
                        [&](std::uint64_t o) { return pk % o == 0; }));
      rank.push_back(log_p(p, cnt));
      if (cnt == sylow) {
        break;
      }
    }
    // at_least[k] = #factors with exponent >= k
    std::size_t const top = rank.size() - 1;
    for (std::size_t k = top; k >= 1; --k) {
      std::uint64_t at_least = rank[k] - rank[k - 1];
      std::uint64_t above = (k < top) ? rank[k + 1] - rank[k] : 0;
      for (std::uint64_t i = 0; i < at_least - above; ++i) {
        factors.push_back(ipow(p, k));
      }
    }
  }
  return AbelianInvariants(std::move(factors));
}

// Bilinear tensor product of finite abelian groups:
// C_a (x) C_b = C_gcd(a,b), extended over direct sums.
inline AbelianInvariants abelian_tensor(AbelianInvariants const& a,
                                        AbelianInvariants const& b) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t x : a.factors()) {
    for (std::uint64_t y : b.factors()) {
      f.push_back(std::gcd(x, y));
    }
  }
  return AbelianInvariants(std::move(f));
}

// G^ab = G / G'.
inline AbelianInvariants abelianization(GroupTable const& g) {
  return abelian_invariants(quotient(g, derived_subgroup(g)).group);
}

}  // namespace tensorsq

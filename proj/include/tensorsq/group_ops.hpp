#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "tensorsq/group_table.hpp"

namespace tensorsq {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      return false;
    }
  }
  return true;
}

// p^e, saturating at UINT64_MAX.
inline std::uint64_t ipow(std::uint64_t p, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / p) {
      return UINT64_MAX;
    }
    r *= p;
  }
  return r;
}

struct PrimePower {
  std::uint64_t p = 0;
  std::uint64_t e = 0;
};

// Decomposes n = p^e; nullopt unless n is a prime power (n = 1 gives nullopt).
inline std::optional<PrimePower> prime_power(std::uint64_t n) {
  if (n < 2) {
    return std::nullopt;
  }
  std::uint64_t p = 2;
  while (n % p != 0) {
    ++p;
  }
  std::uint64_t e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1) {
    return std::nullopt;
  }
  return PrimePower{p, e};
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) {
        n /= d;
      }
    }
  }
  if (n > 1) {
    out.push_back(n);
  }
  return out;
}

namespace detail {

// Closure of `gens` under right multiplication; returns members in
// discovery order.
inline std::vector<elem_t> closure_bfs(GroupTable const& g,
                                       std::vector<elem_t> const& gens,
                                       std::vector<bool>& in) {
  std::fill(in.begin(), in.end(), false);
  std::vector<elem_t> out{kIdentity};
  in[kIdentity] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (elem_t s : gens) {
      elem_t y = g.mul(out[i], s);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

}  // namespace detail

inline bool is_normal_subgroup(GroupTable const& g,
                               std::vector<elem_t> const& gens,
                               std::vector<bool> const& in) {
  for (elem_t h : gens) {
    for (elem_t x = 0; x < g.order(); ++x) {
      if (!in[g.conj(x, h)]) {
        return false;
      }
    }
  }
  return true;
}

inline bool is_normal_subgroup(GroupTable const& g,
                               std::vector<elem_t> const& members) {
  std::vector<bool> in(g.order(), false);
  for (elem_t x : members) {
    in[x] = true;
  }
  return is_normal_subgroup(g, members, in);
}

// Closure of the seed set under multiplication and inverses; with
// `normal_closure` also under conjugation by every element of g.
inline Subgroup subgroup_generated(GroupTable const& g,
                                   std::vector<elem_t> const& seed,
                                   bool normal_closure = false) {
  std::vector<bool> in(g.order(), false);
  std::vector<elem_t> gens;
  std::vector<elem_t> members = detail::closure_bfs(g, gens, in);
  auto absorb = [&](elem_t s) {
    if (!in[s]) {
      gens.push_back(s);
      members = detail::closure_bfs(g, gens, in);
    }
  };
  for (elem_t s : seed) {
    absorb(s);
  }
  if (normal_closure) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (elem_t x = 0; x < g.order(); ++x) {
        absorb(g.conj(x, gens[i]));
      }
    }
  }
  Subgroup out;
  out.is_normal = normal_closure || is_normal_subgroup(g, gens, in);
  std::sort(members.begin(), members.end());
  out.members = std::move(members);
  return out;
}

inline Subgroup whole_group(GroupTable const& g) {
  Subgroup s;
  s.members.resize(g.order());
  std::iota(s.members.begin(), s.members.end(), 0);
  return s;
}

inline Subgroup trivial_subgroup() { return Subgroup{}; }

// G' generated by all [x, y] = x y x^-1 y^-1.
inline Subgroup derived_subgroup(GroupTable const& g) {
  std::vector<bool> in(g.order(), false);
  std::vector<elem_t> gens;
  std::vector<elem_t> members = detail::closure_bfs(g, gens, in);
  for (elem_t x = 0; x < g.order(); ++x) {
    for (elem_t y = x + 1; y < g.order(); ++y) {
      elem_t c = g.comm(x, y);
      if (!in[c]) {
        gens.push_back(c);
        members = detail::closure_bfs(g, gens, in);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members), true};
}

inline Subgroup center(GroupTable const& g) {
  Subgroup z;
  z.members.clear();
  for (elem_t x = 0; x < g.order(); ++x) {
    bool central = true;
    for (elem_t y = 0; y < g.order() && central; ++y) {
      central = g.mul(x, y) == g.mul(y, x);
    }
    if (central) {
      z.members.push_back(x);
    }
  }
  return z;
}

inline bool is_central(GroupTable const& g, Subgroup const& s) {
  for (elem_t x : s.members) {
    for (elem_t y = 0; y < g.order(); ++y) {
      if (g.mul(x, y) != g.mul(y, x)) {
        return false;
      }
    }
  }
  return true;
}

inline Subgroup intersect(Subgroup const& a, Subgroup const& b) {
  Subgroup out;
  out.members.clear();
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(out.members));
  out.is_normal = a.is_normal && b.is_normal;
  return out;
}

struct Quotient {
  GroupTable group;
  GroupHom projection;
};

inline Quotient quotient(GroupTable const& g, Subgroup const& n) {
  if (!n.is_normal || !is_normal_subgroup(g, n.members)) {
    throw NotNormal("quotient requires a normal subgroup");
  }
  constexpr elem_t kUnset = ~elem_t{0};
  std::vector<elem_t> coset(g.order(), kUnset);
  std::vector<elem_t> reps;
  for (elem_t x = 0; x < g.order(); ++x) {
    if (coset[x] != kUnset) {
      continue;
    }
    auto id = static_cast<elem_t>(reps.size());
    reps.push_back(x);
    for (elem_t m : n.members) {
      coset[g.mul(x, m)] = id;
    }
  }
  std::size_t const k = reps.size();
  std::vector<elem_t> mult(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      mult[a * k + b] = coset[g.mul(reps[a], reps[b])];
    }
  }
  return Quotient{GroupTable(k, std::move(mult)), GroupHom{std::move(coset)}};
}

// Element (x, y) is indexed x * |b| + y.
inline GroupTable direct_product(GroupTable const& a, GroupTable const& b,
                                 std::size_t cap = kDefaultTableCap) {
  std::size_t const na = a.order(), nb = b.order(), n = na * nb;
  if (n > cap) {
    throw SizeLimit(n, cap);
  }
  std::vector<elem_t> mult(n * n);
  for (std::size_t x1 = 0; x1 < na; ++x1) {
    for (std::size_t y1 = 0; y1 < nb; ++y1) {
      std::size_t const r = x1 * nb + y1;
      for (std::size_t x2 = 0; x2 < na; ++x2) {
        elem_t const xa = a.mul(static_cast<elem_t>(x1), static_cast<elem_t>(x2));
        for (std::size_t y2 = 0; y2 < nb; ++y2) {
          mult[r * n + x2 * nb + y2] = static_cast<elem_t>(
              xa * nb + b.mul(static_cast<elem_t>(y1), static_cast<elem_t>(y2)));
        }
      }
    }
  }
  return GroupTable(n, std::move(mult));
}

// Central product identifying the central elements za in a and zb in b
// (must have equal order): (a x b) / <(za, zb^-1)>.
inline GroupTable central_product(GroupTable const& a, elem_t za,
                                  GroupTable const& b, elem_t zb,
                                  std::size_t cap = kDefaultTableCap) {
  GroupTable const ab = direct_product(a, b, cap * a.elem_order(za));
  elem_t const glue = static_cast<elem_t>(za * b.order() + b.inv(zb));
  Subgroup const n = subgroup_generated(ab, {glue});
  if (!n.is_normal || ab.order() / n.order() > cap) {
    throw SizeLimit(ab.order() / n.order(), cap);
  }
  return quotient(ab, n).group;
}

struct SubgroupTable {
  GroupTable group;
  std::vector<elem_t> embedding;  // local index -> parent element
};

// The subgroup's own Cayley table; local index 0 is the identity.
inline SubgroupTable subgroup_table(GroupTable const& g, Subgroup const& s) {
  std::vector<elem_t> local(g.order(), 0);
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    local[s.members[i]] = static_cast<elem_t>(i);
  }
  std::size_t const k = s.members.size();
  std::vector<elem_t> mult(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      mult[i * k + j] = local[g.mul(s.members[i], s.members[j])];
    }
  }
  return SubgroupTable{GroupTable(k, std::move(mult)), s.members};
}

inline std::uint64_t exponent(GroupTable const& g) {
  std::uint64_t e = 1;
  for (std::uint64_t o : g.elem_orders()) {
    e = std::lcm(e, o);
  }
  return e;
}

inline bool is_elementary_abelian(GroupTable const& g) {
  return g.order() > 1 && g.is_abelian() && is_prime(exponent(g));
}

// (p, n) with |G| = p^n, or nullopt when |G| is not a prime power.
inline std::optional<PrimePower> p_group_params(GroupTable const& g) {
  return prime_power(g.order());
}

inline std::uint64_t log_p(std::uint64_t p, std::uint64_t v) {
  std::uint64_t e = 0;
  while (v > 1) {
    v /= p;
    ++e;
  }
  return e;
}

// Z(G) = G' of prime order p and G/Z(G) elementary abelian.
inline bool is_extra_special(GroupTable const& g) {
  auto pp = p_group_params(g);
  if (!pp || g.is_abelian()) {
    return false;
  }
  Subgroup const z = center(g);
  if (z.order() != pp->p || derived_subgroup(g) != z) {
    return false;
  }
  return is_elementary_abelian(quotient(g, z).group);
}

// Greedy small generating set: repeatedly add the element that enlarges the
// generated subgroup most (lowest index wins ties).
inline std::vector<elem_t> greedy_generators(GroupTable const& g) {
  std::vector<elem_t> gens;
  std::vector<bool> in(g.order(), false);
  std::vector<bool> trial(g.order(), false);
  std::size_t have = detail::closure_bfs(g, gens, in).size();
  while (have < g.order()) {
    std::size_t best_size = 0;
    elem_t best = kIdentity;
    std::vector<bool> base = in;
    for (elem_t x = 1; x < g.order(); ++x) {
      if (base[x]) {
        continue;
      }
      auto cand = gens;
      cand.push_back(x);
      std::size_t sz = detail::closure_bfs(g, cand, trial).size();
      if (sz > best_size) {
        best_size = sz;
        best = x;
        if (sz == g.order()) {
          break;
        }
      }
    }
    gens.push_back(best);
    have = detail::closure_bfs(g, gens, in).size();
  }
  return gens;
}

// Shortest words (over generators and their inverses) for every element,
// found by BFS in the Cayley graph. A letter is 2k for gens[k] and 2k+1 for
// its inverse.
struct CayleyWords {
  std::vector<elem_t> parent;
  std::vector<std::uint32_t> letter;
  std::vector<elem_t> bfs_order;

  std::vector<std::uint32_t> word(elem_t x) const {
    std::vector<std::uint32_t> w;
    while (x != kIdentity) {
      w.push_back(letter[x]);
      x = parent[x];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
};

inline CayleyWords cayley_words(GroupTable const& g,
                                std::vector<elem_t> const& gens) {
  CayleyWords cw;
  cw.parent.assign(g.order(), kIdentity);
  cw.letter.assign(g.order(), 0);
  std::vector<bool> seen(g.order(), false);
  seen[kIdentity] = true;
  cw.bfs_order.push_back(kIdentity);
  for (std::size_t i = 0; i < cw.bfs_order.size(); ++i) {
    elem_t x = cw.bfs_order[i];
    for (std::uint32_t k = 0; k < 2 * gens.size(); ++k) {
      elem_t s = (k % 2 == 0) ? gens[k / 2] : g.inv(gens[k / 2]);
      elem_t y = g.mul(x, s);
      if (!seen[y]) {
        seen[y] = true;
        cw.parent[y] = x;
        cw.letter[y] = k;
        cw.bfs_order.push_back(y);
      }
    }
  }
  return cw;
}

}  // namespace tensorsq

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tensorsq/abelian.hpp"

namespace tensorsq {

namespace detail {

inline std::vector<std::uint64_t> centralizer_sizes(GroupTable const& g) {
  std::vector<std::uint64_t> out(g.order(), 0);
  for (elem_t x = 0; x < g.order(); ++x) {
    for (elem_t y = 0; y < g.order(); ++y) {
      out[x] += g.mul(x, y) == g.mul(y, x);
    }
  }
  return out;
}

inline std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> census(
    GroupTable const& g, std::vector<std::uint64_t> const& cent) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> c;
  for (elem_t x = 0; x < g.order(); ++x) {
    ++c[{g.elem_order(x), cent[x]}];
  }
  return c;
}

struct IsoSearch {
  GroupTable const& a;
  GroupTable const& b;
  std::vector<elem_t> gens;
  std::vector<std::vector<elem_t>> candidates;
  std::vector<std::size_t> prefix_order;  // |<gens[0..i]>| in a
  CayleyWords words;
  std::vector<elem_t> images;
  std::vector<bool> scratch;

  bool extend(std::size_t i) {
    if (i == gens.size()) {
      return try_map();
    }
    for (elem_t c : candidates[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        ok = b.elem_order(b.mul(c, images[j])) ==
                 a.elem_order(a.mul(gens[i], gens[j])) &&
             (b.mul(c, images[j]) == b.mul(images[j], c)) ==
                 (a.mul(gens[i], gens[j]) == a.mul(gens[j], gens[i]));
      }
      if (!ok) {
        continue;
      }
      images.push_back(c);
      if (closure_bfs(b, images, scratch).size() == prefix_order[i] &&
          extend(i + 1)) {
        return true;
      }
      images.pop_back();
    }
    return false;
  }

  bool try_map() {
    std::vector<elem_t> phi(a.order(), kIdentity);
    for (elem_t x : words.bfs_order) {
      if (x == kIdentity) {
        continue;
      }
      std::uint32_t k = words.letter[x];
      elem_t s = (k % 2 == 0) ? images[k / 2] : b.inv(images[k / 2]);
      phi[x] = b.mul(phi[words.parent[x]], s);
    }
    for (elem_t x = 0; x < a.order(); ++x) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (phi[a.mul(x, gens[k])] != b.mul(phi[x], images[k])) {
          return false;
        }
      }
    }
    std::vector<bool> hit(b.order(), false);
    for (elem_t y : phi) {
      if (hit[y]) {
        return false;
      }
      hit[y] = true;
    }
    return true;
  }
};

}  // namespace detail

// Backtracking search for an isomorphism: generator images are tried in
// ascending element order, pruned by the (element order, centralizer size)
// census, pairwise product orders, and the orders of the subgroups
// generated by each prefix of the generating set.
inline bool is_isomorphic(GroupTable const& a, GroupTable const& b,
                          std::size_t cap = kDefaultTableCap) {
  if (a.order() > cap || b.order() > cap) {
    throw SizeLimit(std::max(a.order(), b.order()), cap);
  }
  if (a.order() != b.order()) {
    return false;
  }
  bool const ab_a = a.is_abelian(), ab_b = b.is_abelian();
  if (ab_a != ab_b) {
    return false;
  }
  if (ab_a) {
    return abelian_invariants(a) == abelian_invariants(b);
  }
  auto const cent_a = detail::centralizer_sizes(a);
  auto const cent_b = detail::centralizer_sizes(b);
  if (detail::census(a, cent_a) != detail::census(b, cent_b) ||
      derived_subgroup(a).order() != derived_subgroup(b).order()) {
    return false;
  }
  detail::IsoSearch s{a, b, greedy_generators(a), {}, {}, {}, {}, {}};
  s.words = cayley_words(a, s.gens);
  s.scratch.assign(b.order(), false);
  std::vector<bool> tmp(a.order(), false);
  std::vector<elem_t> prefix;
  for (elem_t gen : s.gens) {
    prefix.push_back(gen);
    s.prefix_order.push_back(detail::closure_bfs(a, prefix, tmp).size());
    std::vector<elem_t> cand;
    for (elem_t y = 0; y < b.order(); ++y) {
      if (b.elem_order(y) == a.elem_order(gen) && cent_b[y] == cent_a[gen]) {
        cand.push_back(y);
      }
    }
    std::stable_sort(cand.begin(), cand.end(), [&](elem_t x, elem_t y) {
      return b.elem_order(x) < b.elem_order(y);
    });
    s.candidates.push_back(std::move(cand));
  }
  return s.extend(0);
}

}  // namespace tensorsq

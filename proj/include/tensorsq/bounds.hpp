#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tensorsq/abelian.hpp"
#include "tensorsq/catalog.hpp"
#include "tensorsq/group_ops.hpp"
#include "tensorsq/isomorphism.hpp"
#include "tensorsq/tensor.hpp"

namespace tensorsq {

// |G| = p^n, |G'| = p^m. Bounds are kept as exponents of p; the *_bound
// values are filled in when they fit in 64 bits.
struct BoundReport {
  std::string group_id;
  std::uint64_t p = 0, n = 0, m = 0;
  std::uint64_t tensor_order = 0;
  std::uint64_t j2_order = 0;
  std::uint64_t rocco_exp = 0;  // n(n - m)
  std::uint64_t paper_exp = 0;  // (n - 1)(n - m) + 2
  std::uint64_t pi3_exp = 0;    // n(n - m - 1) + 2
  std::optional<std::uint64_t> rocco_bound, paper_bound, pi3_bound;
  bool rocco_holds = false;
  bool paper_holds = false;
  bool paper_le_rocco = false;
  bool pi3_holds = false;
};

namespace detail {

inline std::optional<std::uint64_t> exact_power(std::uint64_t p, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / p) {
      return std::nullopt;
    }
    r *= p;
  }
  return r;
}

struct PGroup {
  std::uint64_t p, n, m;
};

inline PGroup nonabelian_p_group(GroupTable const& g) {
  auto pp = p_group_params(g);
  if (!pp) {
    throw Precondition("NotPGroup",
                       "order " + std::to_string(g.order()) + " is not a prime power");
  }
  if (g.is_abelian()) {
    throw Precondition("AbelianInput", "bounds are stated for non-abelian groups");
  }
  return {pp->p, pp->e, log_p(pp->p, derived_subgroup(g).order())};
}

}  // namespace detail

// Bound exponents from (n, m) alone.
inline BoundReport bound_exponents(std::uint64_t p, std::uint64_t n,
                                   std::uint64_t m) {
  BoundReport r;
  r.p = p;
  r.n = n;
  r.m = m;
  r.rocco_exp = n * (n - m);
  r.paper_exp = (n - 1) * (n - m) + 2;
  r.pi3_exp = n * (n - m - 1) + 2;
  r.rocco_bound = detail::exact_power(p, r.rocco_exp);
  r.paper_bound = detail::exact_power(p, r.paper_exp);
  r.pi3_bound = detail::exact_power(p, r.pi3_exp);
  r.paper_le_rocco = r.paper_exp <= r.rocco_exp;
  return r;
}

inline BoundReport bounds(GroupTable const& g, TensorSquare const& t,
                          std::string group_id = {}) {
  auto const [p, n, m] = detail::nonabelian_p_group(g);
  BoundReport r = bound_exponents(p, n, m);
  r.group_id = std::move(group_id);
  r.tensor_order = t.order();
  r.j2_order = t.j2.order();
  std::uint64_t const te = log_p(p, t.order());
  std::uint64_t const je = log_p(p, t.j2.order());
  r.rocco_holds = te <= r.rocco_exp;
  r.paper_holds = te <= r.paper_exp;
  r.pi3_holds = je <= r.pi3_exp;
  return r;
}

// The extremal order p^((n-1)^2 + 2) at m = 1.
inline std::uint64_t equality_exponent(std::uint64_t n) {
  return (n - 1) * (n - 1) + 2;
}

// E1(p) for odd p, Q8 for p = 2.
inline GroupTable extremal_factor(std::uint64_t p) {
  return parse_group_spec(p == 2 ? "Q8" : "E1_" + std::to_string(p));
}

struct ClassificationVerdict {
  std::string group_id;
  bool m_equals_one = false;
  bool attains_equality = false;
  bool recognized_HxE = false;
  std::optional<std::vector<elem_t>> h_members, e_members;
  bool consistent = false;
};

namespace detail {

// Extends a basis greedily: a complement of `base` inside the elementary
// abelian group `within`, of the requested order.
inline std::vector<elem_t> complement_in(GroupTable const& g,
                                         Subgroup const& within,
                                         Subgroup const& base,
                                         std::uint64_t target) {
  std::vector<elem_t> gens;
  Subgroup span = trivial_subgroup();
  Subgroup joined = base;
  for (elem_t x : within.members) {
    if (span.order() == target) {
      break;
    }
    if (joined.contains(x)) {
      continue;
    }
    gens.push_back(x);
    span = subgroup_generated(g, gens);
    std::vector<elem_t> both = gens;
    both.insert(both.end(), base.members.begin(), base.members.end());
    joined = subgroup_generated(g, both);
  }
  return span.order() == target ? span.members : std::vector<elem_t>{};
}

}  // namespace detail

// G ~ H x E with E elementary abelian and H = E1(p) or Q8 forces
// Z(G) = G' x E elementary abelian of order p^(n-2), and then any complement
// E of G' in Z(G) works. H is searched among 2-generated subgroups.
inline ClassificationVerdict classify_equality_m1(GroupTable const& g,
                                                  TensorSquare const& t,
                                                  std::string group_id = {}) {
  auto const [p, n, m] = detail::nonabelian_p_group(g);
  if (m != 1) {
    throw Precondition("PreconditionM", "|G'| must be p, got p^" + std::to_string(m));
  }
  ClassificationVerdict v;
  v.group_id = std::move(group_id);
  v.m_equals_one = true;
  v.attains_equality = log_p(p, t.order()) == equality_exponent(n);

  Subgroup const z = center(g);
  Subgroup const d = derived_subgroup(g);
  GroupTable const zt = subgroup_table(g, z).group;
  if (n >= 3 && z.order() == ipow(p, n - 2) && is_elementary_abelian(zt)) {
    std::vector<elem_t> em = detail::complement_in(g, z, d, ipow(p, n - 3));
    if (!em.empty() || n == 3) {
      if (em.empty()) {
        em = {kIdentity};
      }
      Subgroup const e{em, true};
      GroupTable const target = extremal_factor(p);
      if (is_isomorphic(quotient(g, e).group, target)) {
        for (elem_t a = 1; a < g.order() && !v.recognized_HxE; ++a) {
          for (elem_t b = a + 1; b < g.order(); ++b) {
            Subgroup const h = subgroup_generated(g, {a, b});
            if (h.order() != ipow(p, 3) || intersect(h, e).order() != 1) {
              continue;
            }
            if (is_isomorphic(subgroup_table(g, h).group, target)) {
              v.recognized_HxE = true;
              v.h_members = h.members;
              v.e_members = e.members;
              break;
            }
          }
        }
      }
    }
  }
  v.consistent = v.attains_equality == v.recognized_HxE;
  return v;
}

struct CorollaryCheck {
  AbelianInvariants expected;
  std::optional<AbelianInvariants> actual;
  bool matches = false;
};

// In the equality case T is C4^(2) x C2^((n-1)^2 - 2) for p = 2 and
// Cp^((n-1)^2 + 2) otherwise.
inline CorollaryCheck check_structure_corollary(GroupTable const& g,
                                                TensorSquare const& t) {
  auto const [p, n, m] = detail::nonabelian_p_group(g);
  std::uint64_t const k = equality_exponent(n);
  if (log_p(p, t.order()) != k || t.order() != ipow(p, k)) {
    throw Precondition("PreconditionEquality",
                       "|G (x) G| is not p^((n-1)^2 + 2)");
  }
  std::vector<std::uint64_t> f;
  if (p == 2) {
    f = {4, 4};
    f.resize(k - 2, 2);
  } else {
    f.assign(k, p);
  }
  CorollaryCheck c;
  c.expected = AbelianInvariants(f);
  c.actual = t.invariants();
  c.matches = c.actual && *c.actual == c.expected;
  return c;
}

struct StrictnessReport {
  bool condition_i = false;   // G^ab not elementary abelian
  bool condition_ii = false;  // G^ab elementary abelian, Z(G) not
  bool strict = false;        // |T| < p^((n-1)^2 + 2)
  bool holds = true;          // strict whenever a condition applies
};

inline StrictnessReport check_strictness_conditions(GroupTable const& g,
                                                    TensorSquare const& t) {
  auto const [p, n, m] = detail::nonabelian_p_group(g);
  if (m != 1) {
    throw Precondition("PreconditionM", "|G'| must be p, got p^" + std::to_string(m));
  }
  StrictnessReport r;
  bool const ab_elem = abelianization(g).is_elementary();
  bool const z_elem = is_elementary_abelian(subgroup_table(g, center(g)).group);
  r.condition_i = !ab_elem;
  r.condition_ii = ab_elem && !z_elem;
  r.strict = log_p(p, t.order()) < equality_exponent(n);
  if (r.condition_i || r.condition_ii) {
    r.holds = r.strict;
  }
  return r;
}

struct InductionReport {
  std::uint64_t tensor_order = 0;
  std::uint64_t k_tensor_ab = 0;        // |K (x) G^ab|
  std::uint64_t quotient_tensor = 0;    // |G/K (x) G/K|
  bool holds = false;
};

// A central subgroup of order p inside G': generated by the smallest
// element of order p in Z(G) n G'.
inline std::optional<Subgroup> induction_kernel(GroupTable const& g) {
  auto pp = p_group_params(g);
  if (!pp) {
    return std::nullopt;
  }
  Subgroup const zd = intersect(center(g), derived_subgroup(g));
  for (elem_t x : zd.members) {
    if (g.elem_order(x) == pp->p) {
      Subgroup k = subgroup_generated(g, {x});
      k.is_normal = true;
      return k;
    }
  }
  return std::nullopt;
}

// |G (x) G| <= |K (x) G^ab| |G/K (x) G/K| for K central of order p in G'.
inline InductionReport check_induction_step(
    GroupTable const& g, Subgroup const& k, TensorSquare const& t,
    std::uint64_t max_cosets = kDefaultMaxCosets,
    std::size_t cap = kDefaultTableCap) {
  auto const [p, n, m] = detail::nonabelian_p_group(g);
  Subgroup const d = derived_subgroup(g);
  bool const inside = std::all_of(k.members.begin(), k.members.end(),
                                  [&](elem_t x) { return d.contains(x); });
  if (m < 2 || k.order() != p || !is_central(g, k) || !inside) {
    throw Precondition("PreconditionK",
                       "need m >= 2 and K central of order p inside G'");
  }
  Subgroup kn = k;
  kn.is_normal = true;
  InductionReport r;
  r.tensor_order = t.order();
  r.k_tensor_ab =
      abelian_tensor(AbelianInvariants({p}), abelianization(g)).order();
  r.quotient_tensor = tensor_square(quotient(g, kn).group, max_cosets, cap).order();
  r.holds = r.tensor_order <= r.k_tensor_ab * r.quotient_tensor;
  return r;
}

}  // namespace tensorsq

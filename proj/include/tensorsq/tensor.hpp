#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tensorsq/abelian.hpp"
#include "tensorsq/coset_enum.hpp"
#include "tensorsq/isomorphism.hpp"

namespace tensorsq {

// nu(G): generators x_i and their copies x_i^phi, the relators of G on both
// sets, and for generators x, y and z ranging over generators and their
// inverses the compatibility relations
//   ^z [x, y^phi] = [^z x, (^z y)^phi] = ^(z^phi) [x, y^phi].
// In nu(G) the subgroup [G, G^phi] is isomorphic to G (x) G via
// g (x) h -> [g, h^phi].
struct NuPresentation {
  GroupTable base;
  std::vector<elem_t> gens;
  CayleyWords words;  // BFS words of base elements over gens
  Presentation presentation;

  std::size_t rank() const noexcept { return gens.size(); }

  // Word of a base element over x_i (or over x_i^phi when `phi`).
  Word element_word(elem_t e, bool phi = false) const {
    Word w;
    std::size_t const shift = phi ? gens.size() : 0;
    for (std::uint32_t l : words.word(e)) {
      w.push_back(l % 2 == 0 ? gen_letter(l / 2 + shift)
                             : inv_letter(l / 2 + shift));
    }
    return w;
  }

  // [w_g, w_h^phi], the word realizing g (x) h.
  Word pair_word(elem_t g, elem_t h) const {
    return commutator(element_word(g), element_word(h, true));
  }
};

inline NuPresentation nu_presentation(GroupTable const& g,
                                      std::size_t cap = kDefaultTableCap) {
  TablePresentation tp = presentation_from_table(g, cap);
  NuPresentation nu{g, tp.generators, std::move(tp.words), {}};
  std::size_t const k = nu.rank();
  Presentation& p = nu.presentation;
  for (std::size_t i = 0; i < k; ++i) {
    p.generator_names.push_back(tp.presentation.generator_names[i]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    p.generator_names.push_back(tp.presentation.generator_names[i] + "_phi");
  }
  auto shifted = [&](Word const& w) {
    Word out = w;
    for (Letter& l : out) {
      l = l > 0 ? l + static_cast<Letter>(k) : l - static_cast<Letter>(k);
    }
    return out;
  };
  std::set<Word> seen;
  auto add = [&](Word const& r) {
    Word c = detail::canonical_relator(r);
    if (!c.empty() && seen.insert(c).second) {
      p.relators.push_back(std::move(c));
    }
  };
  for (Word const& r : tp.presentation.relators) {
    add(r);
  }
  for (Word const& r : tp.presentation.relators) {
    add(shifted(r));
  }
  auto sym = [&](std::size_t i) {
    return i < k ? nu.gens[i] : g.inv(nu.gens[i - k]);
  };
  auto letter = [&](std::size_t i, bool phi) {
    std::size_t const base = (i < k ? i : i - k) + (phi ? k : 0);
    return i < k ? gen_letter(base) : inv_letter(base);
  };
  // Conjugators range over generators and their inverses; x and y over
  // generators only.
  for (std::size_t z = 0; z < 2 * k; ++z) {
    Word const wz{letter(z, false)};
    Word const wz_phi{letter(z, true)};
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) {
        Word const c = commutator({letter(x, false)}, {letter(y, true)});
        elem_t const zx = g.conj(sym(z), sym(x));
        elem_t const zy = g.conj(sym(z), sym(y));
        Word const rhs =
            commutator(nu.element_word(zx), nu.element_word(zy, true));
        add(concat({wz, c, inverse(wz), inverse(rhs)}));
        add(concat({wz_phi, c, inverse(wz_phi), inverse(rhs)}));
      }
    }
  }
  return nu;
}

struct TensorSquare {
  GroupTable base;
  GroupTable group;              // T = G (x) G
  std::vector<elem_t> pair;      // pair[g * |G| + h] = g (x) h in T
  GroupHom kappa;                // T -> G, g (x) h -> [g, h]
  Subgroup j2;                   // ker kappa
  Subgroup nabla;                // <g (x) g>
  std::uint64_t nu_order = 0;
  std::uint64_t derived_order = 0;

  std::uint64_t order() const noexcept { return group.order(); }
  elem_t pair_of(elem_t g, elem_t h) const noexcept {
    return pair[g * base.order() + h];
  }
  std::optional<AbelianInvariants> invariants() const {
    if (!group.is_abelian()) {
      return std::nullopt;
    }
    return abelian_invariants(group);
  }
};

// |nu(G)| >= |G|^2 * max(|G'|, |G^ab (x) G^ab|): kappa maps onto G' and
// G (x) G maps onto G^ab (x) G^ab.
inline std::uint64_t predicted_min_nu_order(GroupTable const& g) {
  std::uint64_t const n = g.order();
  std::uint64_t const d = derived_subgroup(g).order();
  std::uint64_t const ab = abelian_tensor(abelianization(g), abelianization(g)).order();
  return n * n * std::max(d, ab);
}

namespace detail {

inline bool check_tensor_relations(TensorSquare const& t) {
  GroupTable const& g = t.base;
  GroupTable const& T = t.group;
  for (elem_t a = 0; a < g.order(); ++a) {
    for (elem_t b = 0; b < g.order(); ++b) {
      for (elem_t h = 0; h < g.order(); ++h) {
        // gg' (x) h = (^g g' (x) ^g h)(g (x) h)
        if (t.pair_of(g.mul(a, b), h) !=
            T.mul(t.pair_of(g.conj(a, b), g.conj(a, h)), t.pair_of(a, h))) {
          return false;
        }
        // g (x) hh' = (g (x) h)(^h g (x) ^h h'), read with g=h, h=a, h'=b
        if (t.pair_of(h, g.mul(a, b)) !=
            T.mul(t.pair_of(h, a), t.pair_of(g.conj(a, h), g.conj(a, b)))) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace detail

// Both defining relations of G (x) G hold for the pair map (exhaustive).
inline bool tensor_relations_hold(TensorSquare const& t) {
  return detail::check_tensor_relations(t);
}

// Computes G (x) G as [G, G^phi] inside the regular representation of
// nu(G). Throws Capped when nu(G) is predicted or found to exceed
// `max_cosets`, CapExceeded when T exceeds the table cap, and
// ConstructionInvalid when a validation gate fails: |nu| = |G|^2 |T|, the
// defining relations on every element triple, and kappa being a
// homomorphism onto G'.
inline TensorSquare tensor_square(GroupTable const& g,
                                  std::uint64_t max_cosets = kDefaultMaxCosets,
                                  std::size_t cap = kDefaultTableCap) {
  std::uint64_t const predicted = predicted_min_nu_order(g);
  if (predicted > max_cosets) {
    throw Capped(max_cosets, predicted, "predicted minimum |nu(G)|");
  }
  TensorSquare t;
  t.base = g;
  std::size_t const n = g.order();
  Subgroup const derived = derived_subgroup(g);
  t.derived_order = derived.order();
  if (n == 1) {
    t.pair = {kIdentity};
    t.kappa = GroupHom{{kIdentity}};
    t.nu_order = 1;
    return t;
  }

  NuPresentation const nu = nu_presentation(g, cap);
  CosetTable table = coset_enumerate(nu.presentation, {}, max_cosets);
  if (table.status != EnumStatus::complete) {
    throw Capped(max_cosets, table.live_at_cap);
  }
  RegularRep const rep(std::move(table));
  t.nu_order = rep.order();

  std::size_t const k = nu.rank();
  std::vector<Word> seeds;
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      seeds.push_back(commutator({gen_letter(x)}, {gen_letter(y + k)}));
    }
  }
  EmbeddedSubgroup sub = subgroup_as_table(rep, seeds, true, cap);
  t.group = std::move(sub.group);
  if (t.nu_order != n * n * t.group.order()) {
    throw ConstructionInvalid("|nu(G)| = " + std::to_string(t.nu_order) +
                              " but |G|^2 |T| = " +
                              std::to_string(n * n * t.group.order()));
  }

  CosetTable const& ct = rep.table();
  std::vector<elem_t> local(ct.num_cosets, ~elem_t{0});
  for (std::size_t i = 0; i < sub.embedding.size(); ++i) {
    local[sub.embedding[i]] = static_cast<elem_t>(i);
  }

  t.pair.assign(n * n, kIdentity);
  for (elem_t a = 0; a < n; ++a) {
    Word const wa = nu.element_word(a);
    for (elem_t b = 0; b < n; ++b) {
      coset_t c = rep.element_of(commutator(wa, nu.element_word(b, true)));
      if (local[c] == ~elem_t{0}) {
        throw ConstructionInvalid("pair outside [G, G^phi]");
      }
      t.pair[a * n + b] = local[c];
    }
  }

  // Retraction nu(G) -> G sending x and x^phi to x.
  std::vector<elem_t> retract(ct.num_cosets, kIdentity);
  for (coset_t c : ct.bfs_order) {
    if (c == 0) {
      continue;
    }
    std::uint32_t col = ct.parent_column[c];
    elem_t s = nu.gens[(col / 2) % k];
    retract[c] = g.mul(retract[ct.parent[c]], col % 2 == 0 ? s : g.inv(s));
  }
  t.kappa.image.resize(t.group.order());
  for (std::size_t i = 0; i < sub.embedding.size(); ++i) {
    t.kappa.image[i] = retract[sub.embedding[i]];
  }

  if (!detail::check_tensor_relations(t)) {
    throw ConstructionInvalid("tensor relations fail on the pair map");
  }
  if (!is_homomorphism(t.group, g, t.kappa)) {
    throw ConstructionInvalid("kappa is not a homomorphism");
  }
  std::vector<elem_t> ker;
  for (elem_t x = 0; x < t.group.order(); ++x) {
    if (t.kappa(x) == kIdentity) {
      ker.push_back(x);
    }
  }
  t.j2 = Subgroup{ker, true};
  std::vector<elem_t> diag;
  for (elem_t a = 0; a < n; ++a) {
    diag.push_back(t.pair_of(a, a));
  }
  t.nabla = subgroup_generated(t.group, diag);
  return t;
}

// |Im kappa|
inline std::uint64_t kappa_image_order(TensorSquare const& t) {
  std::set<elem_t> img(t.kappa.image.begin(), t.kappa.image.end());
  return img.size();
}

struct SchurResult {
  GroupTable exterior;  // (G (x) G) / nabla
  AbelianInvariants multiplier;
  std::uint64_t multiplier_order = 0;
  bool decomposition_holds = false;  // |T| = |nabla| |M(G)| |G'|
};

// M(G) as the kernel of the map G ^ G -> G' induced by kappa.
inline SchurResult schur_multiplier(TensorSquare const& t) {
  Quotient const ext = quotient(t.group, t.nabla);
  std::vector<elem_t> kbar(ext.group.order(), kIdentity);
  for (elem_t x = 0; x < t.group.order(); ++x) {
    kbar[ext.projection(x)] = t.kappa(x);
  }
  std::vector<elem_t> ker;
  for (elem_t c = 0; c < ext.group.order(); ++c) {
    if (kbar[c] == kIdentity) {
      ker.push_back(c);
    }
  }
  Subgroup const m{ker, true};
  SchurResult r;
  r.exterior = ext.group;
  r.multiplier = abelian_invariants(subgroup_table(ext.group, m).group);
  r.multiplier_order = m.order();
  r.decomposition_holds =
      t.order() == t.nabla.order() * r.multiplier_order * t.derived_order;
  return r;
}

struct CentralExtensionReport {
  GroupTable h;
  Subgroup z;
  Subgroup im_l;  // in H (x) H
  std::uint64_t tensor_order = 0;
  std::uint64_t quotient_order = 0;            // |(H (x) H) / Im l|
  std::uint64_t quotient_tensor_order = 0;     // |(H/Z) (x) (H/Z)|
  std::optional<AbelianInvariants> quotient_invariants;
  bool im_l_central = false;
  bool matches_quotient_tensor = false;
};

// Checks the exact sequence (Z (x) H) x (H (x) Z) -> H (x) H -> G (x) G -> 1
// for G = H/Z: Im l is central and the cokernel is G (x) G.
inline CentralExtensionReport central_extension_check(
    TensorSquare const& th, Subgroup const& z,
    std::uint64_t max_cosets = kDefaultMaxCosets,
    std::size_t cap = kDefaultTableCap) {
  GroupTable const& h = th.base;
  if (!is_central(h, z)) {
    throw Precondition("NotCentral", "Z is not contained in the center");
  }
  CentralExtensionReport r;
  r.h = h;
  r.z = z;
  r.tensor_order = th.order();
  std::vector<elem_t> seed;
  for (elem_t a : z.members) {
    for (elem_t x = 0; x < h.order(); ++x) {
      seed.push_back(th.pair_of(a, x));
      seed.push_back(th.pair_of(x, a));
    }
  }
  r.im_l = subgroup_generated(th.group, seed);
  r.im_l_central = is_central(th.group, r.im_l);
  Subgroup zn = z;
  zn.is_normal = true;
  GroupTable const g = quotient(h, zn).group;
  TensorSquare const tg = tensor_square(g, max_cosets, cap);
  r.quotient_tensor_order = tg.order();
  Subgroup iml = r.im_l;
  iml.is_normal = r.im_l.is_normal;
  if (!iml.is_normal) {
    return r;
  }
  GroupTable const coker = quotient(th.group, iml).group;
  r.quotient_order = coker.order();
  if (coker.is_abelian()) {
    r.quotient_invariants = abelian_invariants(coker);
  }
  r.matches_quotient_tensor =
      coker.order() == tg.order() && is_isomorphic(coker, tg.group, cap);
  return r;
}

inline CentralExtensionReport central_extension_check(
    GroupTable const& h, Subgroup const& z,
    std::uint64_t max_cosets = kDefaultMaxCosets,
    std::size_t cap = kDefaultTableCap) {
  if (!is_central(h, z)) {
    throw Precondition("NotCentral", "Z is not contained in the center");
  }
  return central_extension_check(tensor_square(h, max_cosets, cap), z,
                                 max_cosets, cap);
}

// |H (x) H| |E (x) E| |E (x) H^ab|^2 for abelian E with invariants `e`.
inline std::uint64_t direct_product_prediction(TensorSquare const& th,
                                               AbelianInvariants const& e) {
  std::uint64_t const mixed = abelian_tensor(e, abelianization(th.base)).order();
  return th.order() * abelian_tensor(e, e).order() * mixed * mixed;
}

struct DirectProductCheck {
  std::uint64_t predicted = 0;  // |H (x) H| |E (x) E| |E (x) H^ab|^2
  std::optional<std::uint64_t> computed;
  std::optional<bool> holds;
  std::string skipped;  // reason the direct computation was skipped
};

// For abelian E: |(H x E) (x) (H x E)| = |H (x) H| |E (x) E| |E (x) H^ab|^2.
inline DirectProductCheck direct_product_order_check(
    GroupTable const& h, GroupTable const& e,
    std::uint64_t max_cosets = kDefaultMaxCosets,
    std::size_t cap = kDefaultTableCap) {
  if (!e.is_abelian()) {
    throw Precondition("NotAbelian", "E must be abelian");
  }
  DirectProductCheck r;
  TensorSquare const th = tensor_square(h, max_cosets, cap);
  AbelianInvariants const ei = abelian_invariants(e);
  r.predicted = direct_product_prediction(th, ei);
  try {
    TensorSquare const tp = tensor_square(direct_product(h, e, cap), max_cosets, cap);
    r.computed = tp.order();
    r.holds = tp.order() == r.predicted;
  } catch (Capped const& ex) {
    r.skipped = ex.what();
  } catch (CapExceeded const& ex) {
    r.skipped = ex.what();
  } catch (SizeLimit const& ex) {
    r.skipped = ex.what();
  }
  return r;
}

enum class ExtraSpecialKind { exponent_p, exponent_p2, dihedral, quaternion };

inline std::string to_string(ExtraSpecialKind k) {
  switch (k) {
    case ExtraSpecialKind::exponent_p: return "exponent-p";
    case ExtraSpecialKind::exponent_p2: return "exponent-p2";
    case ExtraSpecialKind::dihedral: return "dihedral";
    case ExtraSpecialKind::quaternion: return "quaternion";
  }
  return "?";
}

// Known tensor squares of extra-special groups of order p^(2m+1):
// D8 -> C4 x C2^(3), Q8 -> C4^(2) x C2^(2), E1 -> Cp^(6), E2 -> Cp^(4),
// and Cp^(4m^2) for every kind once m >= 2.
inline AbelianInvariants predicted_tensor_structure(std::uint64_t p,
                                                    std::uint64_t m,
                                                    ExtraSpecialKind kind) {
  bool const odd = p != 2;
  if (!is_prime(p) || m == 0) {
    throw Precondition("UnsupportedKind", "need a prime p and m >= 1");
  }
  bool const p2_kind =
      kind == ExtraSpecialKind::dihedral || kind == ExtraSpecialKind::quaternion;
  if (odd == p2_kind) {
    throw Precondition("UnsupportedKind",
                       to_string(kind) + " at p = " + std::to_string(p));
  }
  std::size_t copies = 0;
  if (m >= 2) {
    copies = 4 * m * m;
  } else {
    switch (kind) {
      case ExtraSpecialKind::dihedral: return AbelianInvariants({4, 2, 2, 2});
      case ExtraSpecialKind::quaternion: return AbelianInvariants({4, 4, 2, 2});
      case ExtraSpecialKind::exponent_p: copies = 6; break;
      case ExtraSpecialKind::exponent_p2: copies = 4; break;
    }
  }
  return AbelianInvariants(std::vector<std::uint64_t>(copies, p));
}

}  // namespace tensorsq

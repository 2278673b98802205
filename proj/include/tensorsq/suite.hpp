#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tensorsq/bounds.hpp"
#include "tensorsq/catalog.hpp"
#include "tensorsq/record.hpp"
#include "tensorsq/tensor.hpp"

namespace tensorsq {

struct Guards {
  std::uint64_t max_cosets = kDefaultMaxCosets;
  std::size_t cap = kDefaultTableCap;
  // Coset budget for probe and extended entries under --extended; about
  // 16 bytes per coset and generator column pair.
  std::uint64_t extended_max_cosets = 16'000'000;
  unsigned jobs = 1;
  bool timing = true;
};

struct Selector {
  std::vector<std::uint64_t> primes;  // empty: any
  std::optional<std::uint64_t> max_order;
  bool extended = false;
  bool abelian_only = false;
  std::vector<std::string> specs;  // explicit list; overrides the catalog
};

struct SuiteResult {
  Selector selector;
  std::vector<ComputationRecord> groups;

  std::size_t count_status(std::string_view s) const {
    return static_cast<std::size_t>(std::count_if(
        groups.begin(), groups.end(), [&](auto const& g) { return g.status == s; }));
  }
  std::size_t count_checks(std::string_view v) const {
    std::size_t k = 0;
    for (auto const& g : groups) {
      for (auto const& c : g.checks) {
        k += c.verdict == v;
      }
    }
    return k;
  }
  bool has_failures() const {
    return count_status(status::fail) + count_status(status::error) > 0;
  }
};

namespace detail {

inline std::string orders_eq(std::uint64_t a, std::uint64_t b) {
  return std::to_string(a) + (a == b ? " = " : " != ") + std::to_string(b);
}

inline void add(ComputationRecord& r, std::string name, bool ok,
                std::string detail) {
  r.checks.push_back({std::move(name), ok ? verdict::pass : verdict::fail,
                      std::move(detail)});
}

inline void skip(ComputationRecord& r, std::string name, char const* v,
                 std::string detail) {
  r.checks.push_back({std::move(name), v, std::move(detail)});
}

// H x E with E the product of the trailing cyclic factors, when the spec
// has that shape.
inline std::optional<std::pair<GroupSpec, GroupSpec>> split_direct_factor(
    GroupSpec const& spec) {
  if (spec.factors.size() < 2) {
    return std::nullopt;
  }
  for (std::size_t i = 1; i < spec.factors.size(); ++i) {
    if (spec.factors[i].atom.kind != "C") {
      return std::nullopt;
    }
  }
  GroupSpec h, e;
  h.factors = {spec.factors.front()};
  e.factors.assign(spec.factors.begin() + 1, spec.factors.end());
  return std::pair(h, e);
}

inline std::optional<ExtraSpecialKind> extra_special_kind(GroupTable const& g,
                                                          std::uint64_t p) {
  if (!is_extra_special(g)) {
    return std::nullopt;
  }
  if (p == 2) {
    std::size_t involutions = 0;
    for (elem_t x = 0; x < g.order(); ++x) {
      involutions += g.elem_order(x) == 2;
    }
    return involutions == 1 ? ExtraSpecialKind::quaternion
                            : ExtraSpecialKind::dihedral;
  }
  return exponent(g) == p ? ExtraSpecialKind::exponent_p
                          : ExtraSpecialKind::exponent_p2;
}

inline void extra_special_check(ComputationRecord& r, GroupTable const& g,
                                 std::optional<TensorSquare> const& t) {
  if (!r.p) {
    return;
  }
  auto kind = extra_special_kind(g, *r.p);
  if (!kind) {
    return;
  }
  std::uint64_t const m = (*r.n - 1) / 2;
  AbelianInvariants const want = predicted_tensor_structure(*r.p, m, *kind);
  std::string const label = to_string(*kind) + ", m = " + std::to_string(m) +
                            ": predicted " + want.name();
  if (!t) {
    skip(r, "extra_special_prediction", verdict::skipped_by_cap,
         "prediction unverified (scale): " + label);
    return;
  }
  auto got = t->invariants();
  add(r, "extra_special_prediction", got && *got == want,
      label + ", computed " + (got ? got->name() : std::string("non-abelian")));
}

inline void direct_product_check(ComputationRecord& r, GroupSpec const& spec,
                                 std::optional<TensorSquare> const& t,
                                 Guards const& guards) {
  auto split = split_direct_factor(spec);
  if (!split) {
    return;
  }
  try {
    GroupTable const h = build_group(split->first, guards.cap);
    GroupTable const e = build_group(split->second, guards.cap);
    TensorSquare const th = tensor_square(h, guards.max_cosets, guards.cap);
    std::uint64_t const predicted =
        direct_product_prediction(th, abelian_invariants(e));
    if (!t) {
      skip(r, "direct_product", verdict::skipped_by_cap,
           "predicted |T| = " + std::to_string(predicted) +
               ", direct computation exceeds the guard");
      return;
    }
    add(r, "direct_product", predicted == t->order(),
        "|T_H| |E(x)E| |E(x)H^ab|^2 = " + orders_eq(predicted, t->order()));
  } catch (Error const& ex) {
    skip(r, "direct_product", verdict::skipped_by_cap, ex.what());
  }
}

inline void fill_params(ComputationRecord& r, GroupTable const& g) {
  r.order = g.order();
  if (auto pp = p_group_params(g)) {
    r.p = pp->p;
    r.n = pp->e;
    r.m = log_p(pp->p, derived_subgroup(g).order());
  }
}

inline bool nonabelian_p(ComputationRecord const& r, GroupTable const& g) {
  return r.p && !g.is_abelian();
}

}  // namespace detail

// Tensor square, Schur multiplier, bounds and (at m = 1) the equality
// classification of one group. Cap failures become a skipped-by-cap record.
inline ComputationRecord compute_record(std::string spec, GroupTable const& g,
                                        std::uint64_t max_cosets = kDefaultMaxCosets,
                                        std::size_t cap = kDefaultTableCap) {
  ComputationRecord r;
  r.spec = std::move(spec);
  detail::fill_params(r, g);
  bool const nap = detail::nonabelian_p(r, g);
  if (nap) {
    r.bounds = bound_exponents(*r.p, *r.n, *r.m);
  }
  try {
    TensorSquare const t = tensor_square(g, max_cosets, cap);
    r.tensor = summarize(t, schur_multiplier(t));
    if (nap) {
      r.bounds = bounds(g, t, r.spec);
      if (*r.m == 1) {
        r.classification = classify_equality_m1(g, t, r.spec);
      }
    }
  } catch (Capped const& ex) {
    r.status = status::skipped_by_cap;
    r.reason = ex.what();
  } catch (CapExceeded const& ex) {
    r.status = status::skipped_by_cap;
    r.reason = ex.what();
  } catch (SizeLimit const& ex) {
    r.status = status::skipped_by_cap;
    r.reason = ex.what();
  }
  return r;
}

// Every applicable check on one group.
inline ComputationRecord evaluate_group(std::string const& spec_text,
                                        Guards const& guards) {
  using namespace detail;
  auto const start = std::chrono::steady_clock::now();
  ComputationRecord r;
  r.spec = spec_text;
  auto finish = [&]() -> ComputationRecord {
    if (guards.timing) {
      r.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    }
    return r;
  };

  GroupSpec spec;
  GroupTable g;
  try {
    spec = parse_spec(spec_text);
    r.order = spec.order();
    g = build_group(spec, guards.cap);
  } catch (SizeLimit const& ex) {
    r.status = status::skipped_by_cap;
    r.reason = ex.what();
    skip(r, "tensor_square", verdict::skipped_by_cap, ex.what());
    return finish();
  } catch (Error const& ex) {
    r.status = status::error;
    r.reason = ex.what();
    return finish();
  }
  fill_params(r, g);
  bool const nap = nonabelian_p(r, g);
  if (nap) {
    r.bounds = bound_exponents(*r.p, *r.n, *r.m);
  }

  std::optional<TensorSquare> t;
  try {
    t = tensor_square(g, guards.max_cosets, guards.cap);
  } catch (Capped const& ex) {
    r.status = status::skipped_by_cap;
    r.reason = ex.what();
  } catch (CapExceeded const& ex) {
    r.status = status::skipped_by_cap;
    r.reason = ex.what();
  } catch (ConstructionInvalid const& ex) {
    r.status = status::error;
    r.reason = ex.what();
    add(r, "nu_gate", false, ex.what());
    return finish();
  }

  if (!t) {
    skip(r, "tensor_square", verdict::skipped_by_cap, r.reason);
    if (nap) {
      skip(r, "bounds", verdict::skipped_by_cap,
           "p^" + std::to_string(r.bounds->rocco_exp) + ", p^" +
               std::to_string(r.bounds->paper_exp) + ", p^" +
               std::to_string(r.bounds->pi3_exp) + " not evaluated");
    }
    extra_special_check(r, g, t);
    direct_product_check(r, spec, t, guards);
    return finish();
  }

  SchurResult const s = schur_multiplier(*t);
  r.tensor = summarize(*t, s);
  std::uint64_t const n = g.order();
  std::uint64_t const d = t->derived_order;

  add(r, "nu_gate", t->nu_order == n * n * t->order(),
      "|nu| = " + std::to_string(t->nu_order) + ", |G|^2 |T| = " +
          std::to_string(n * n * t->order()));
  add(r, "tensor_relations", tensor_relations_hold(*t),
      "both defining relations on all " + std::to_string(n * n * n) + " triples");

  bool kappa_ok = true;
  for (elem_t a = 0; a < n && kappa_ok; ++a) {
    for (elem_t b = 0; b < n; ++b) {
      if (t->kappa(t->pair_of(a, b)) != g.comm(a, b)) {
        kappa_ok = false;
        break;
      }
    }
  }
  bool const nabla_in_j2 =
      std::all_of(t->nabla.members.begin(), t->nabla.members.end(),
                  [&](elem_t x) { return t->j2.contains(x); });
  std::uint64_t const im = kappa_image_order(*t);
  add(r, "kappa",
      kappa_ok && im == d && t->j2.order() * d == t->order() && nabla_in_j2,
      "kappa(g(x)h) = [g,h] " + std::string(kappa_ok ? "everywhere" : "violated") +
          "; |Im kappa| = " + std::to_string(im) + ", |G'| = " + std::to_string(d) +
          "; |J2| = " + std::to_string(t->j2.order()));
  add(r, "decomposition", s.decomposition_holds,
      std::to_string(t->order()) + " = " + std::to_string(t->nabla.order()) +
          " * " + std::to_string(s.multiplier_order) + " * " + std::to_string(d));

  if (g.is_abelian()) {
    AbelianInvariants const gi = abelian_invariants(g);
    AbelianInvariants const want = abelian_tensor(gi, gi);
    auto got = t->invariants();
    add(r, "abelian_coincidence", got && *got == want,
        "computed " + (got ? got->name() : std::string("non-abelian")) +
            ", bilinear " + want.name());
    skip(r, "bounds", verdict::not_applicable, "AbelianInput");
  } else if (!r.p) {
    skip(r, "bounds", verdict::not_applicable, "NotPGroup");
  }

  if (nap) {
    std::uint64_t const p = *r.p, m = *r.m;
    r.bounds = bounds(g, *t, spec_text);
    BoundReport const& b = *r.bounds;
    add(r, "bounds", b.rocco_holds && b.paper_holds && b.pi3_holds,
        "|T| = p^" + std::to_string(log_p(p, b.tensor_order)) + " vs p^" +
            std::to_string(b.rocco_exp) + ", p^" + std::to_string(b.paper_exp) +
            "; |J2| = p^" + std::to_string(log_p(p, b.j2_order)) + " vs p^" +
            std::to_string(b.pi3_exp));
    if (m == 1) {
      r.classification = classify_equality_m1(g, *t, spec_text);
      ClassificationVerdict const& c = *r.classification;
      add(r, "classification", c.consistent,
          std::string("equality ") + (c.attains_equality ? "attained" : "not attained") +
              ", H x E " + (c.recognized_HxE ? "recognized" : "not recognized"));
      bool const pi3_eq = log_p(p, b.j2_order) == b.pi3_exp;
      add(r, "pi3_equality", pi3_eq == c.recognized_HxE,
          std::string("|J2| ") + (pi3_eq ? "=" : "<") + " p^" +
              std::to_string(b.pi3_exp));
      StrictnessReport const st = check_strictness_conditions(g, *t);
      if (st.condition_i || st.condition_ii) {
        add(r, "strictness", st.holds,
            std::string(st.condition_i ? "condition (i)" : "condition (ii)") +
                (st.strict ? ", strict" : ", not strict"));
      } else {
        skip(r, "strictness", verdict::not_applicable, "neither condition holds");
      }
      if (c.attains_equality) {
        CorollaryCheck const cc = check_structure_corollary(g, *t);
        add(r, "structure_corollary", cc.matches,
            "expected " + cc.expected.name() + ", computed " +
                (cc.actual ? cc.actual->name() : std::string("non-abelian")));
      }
    } else if (auto k = induction_kernel(g)) {
      try {
        InductionReport const ir =
            check_induction_step(g, *k, *t, guards.max_cosets, guards.cap);
        add(r, "induction_step", ir.holds,
            std::to_string(ir.tensor_order) + " <= " + std::to_string(ir.k_tensor_ab) +
                " * " + std::to_string(ir.quotient_tensor));
      } catch (Error const& ex) {
        skip(r, "induction_step", verdict::skipped_by_cap, ex.what());
      }
    }
    try {
      CentralExtensionReport const ce =
          central_extension_check(*t, center(g), guards.max_cosets, guards.cap);
      add(r, "central_extension", ce.im_l_central && ce.matches_quotient_tensor,
          "Z = Z(G), |Im l| = " + std::to_string(ce.im_l.order()) +
              (ce.im_l_central ? " central" : " not central") + ", cokernel " +
              orders_eq(ce.quotient_order, ce.quotient_tensor_order));
    } catch (Capped const& ex) {
      skip(r, "central_extension", verdict::skipped_by_cap, ex.what());
    } catch (CapExceeded const& ex) {
      skip(r, "central_extension", verdict::skipped_by_cap, ex.what());
    }
  }
  extra_special_check(r, g, t);
  direct_product_check(r, spec, t, guards);

  bool const failed = std::any_of(r.checks.begin(), r.checks.end(),
                                  [](Check const& c) { return c.verdict == verdict::fail; });
  r.status = failed ? status::fail : status::ok;
  return finish();
}

inline std::vector<std::pair<std::string, Tier>> select_groups(
    Selector const& sel) {
  std::vector<std::pair<std::string, Tier>> out;
  if (!sel.specs.empty()) {
    for (auto const& s : sel.specs) {
      out.emplace_back(s, Tier::ci);
    }
    return out;
  }
  for (CatalogEntry const& e : builtin_catalog()) {
    if (e.tier == Tier::extended && !sel.extended) {
      continue;
    }
    GroupSpec const spec = parse_spec(e.spec);
    std::uint64_t const order = spec.order();
    if (sel.max_order && order > *sel.max_order) {
      continue;
    }
    if (!sel.primes.empty()) {
      auto pp = prime_power(order);
      if (!pp || std::find(sel.primes.begin(), sel.primes.end(), pp->p) ==
                     sel.primes.end()) {
        continue;
      }
    }
    if (sel.abelian_only &&
        std::any_of(spec.factors.begin(), spec.factors.end(),
                    [](SpecFactor const& f) { return f.atom.kind != "C"; })) {
      continue;
    }
    out.emplace_back(e.spec, e.tier);
  }
  return out;
}

// Evaluates the selected groups on `guards.jobs` threads. Results are
// stored by selection index, so output order does not depend on scheduling.
inline SuiteResult run_suite(Selector const& sel, Guards const& guards) {
  SuiteResult res;
  res.selector = sel;
  auto const picked = select_groups(sel);
  res.groups.resize(picked.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < picked.size(); i = next++) {
      Guards g = guards;
      if (sel.extended && picked[i].second != Tier::ci) {
        g.max_cosets = std::max(g.max_cosets, g.extended_max_cosets);
      }
      res.groups[i] = evaluate_group(picked[i].first, g);
    }
  };
  unsigned const jobs = std::max(1u, guards.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }
  return res;
}

inline nlohmann::ordered_json to_json(SuiteResult const& s) {
  nlohmann::ordered_json j;
  j["engine_version"] = kEngineVersion;
  j["selector"] = {{"p", s.selector.primes},
                   {"max_order", s.selector.max_order
                                     ? nlohmann::ordered_json(*s.selector.max_order)
                                     : nlohmann::ordered_json(nullptr)},
                   {"extended", s.selector.extended},
                   {"specs", s.selector.specs}};
  j["summary"] = {
      {"groups", s.groups.size()},
      {"ok", s.count_status(status::ok)},
      {"fail", s.count_status(status::fail)},
      {"error", s.count_status(status::error)},
      {"skipped_by_cap", s.count_status(status::skipped_by_cap)},
      {"checks",
       {{"pass", s.count_checks(verdict::pass)},
        {"fail", s.count_checks(verdict::fail)},
        {"skipped_by_cap", s.count_checks(verdict::skipped_by_cap)},
        {"not_applicable", s.count_checks(verdict::not_applicable)}}}};
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (auto const& g : s.groups) {
    groups.push_back(to_json(g));
  }
  j["groups"] = groups;
  return j;
}

}  // namespace tensorsq

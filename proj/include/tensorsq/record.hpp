#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tensorsq/abelian.hpp"
#include "tensorsq/bounds.hpp"
#include "tensorsq/tensor.hpp"

namespace tensorsq {

inline constexpr char kEngineVersion[] = "1.0.0";

namespace verdict {
inline constexpr char pass[] = "pass";
inline constexpr char fail[] = "fail";
inline constexpr char skipped_by_cap[] = "skipped-by-cap";
inline constexpr char not_applicable[] = "not-applicable";
}  // namespace verdict

namespace status {
inline constexpr char ok[] = "ok";
inline constexpr char fail[] = "fail";
inline constexpr char skipped_by_cap[] = "skipped-by-cap";
inline constexpr char error[] = "error";
}  // namespace status

struct Check {
  std::string name;
  std::string verdict;
  std::string detail;

  bool operator==(Check const&) const = default;
};

struct TensorSummary {
  std::uint64_t order = 0;
  bool abelian = false;
  std::optional<AbelianInvariants> invariants;
  std::uint64_t nabla_order = 0;
  std::uint64_t j2_order = 0;
  std::uint64_t multiplier_order = 0;
  AbelianInvariants multiplier;
  std::uint64_t kappa_image_order = 0;
  std::uint64_t exterior_order = 0;
  std::uint64_t nu_order = 0;
};

struct ComputationRecord {
  std::string spec;
  std::uint64_t order = 0;
  std::optional<std::uint64_t> p, n, m;
  std::string status = status::ok;
  std::string reason;
  std::optional<TensorSummary> tensor;
  std::optional<BoundReport> bounds;
  std::optional<ClassificationVerdict> classification;
  std::vector<Check> checks;
  std::optional<double> elapsed_ms;
};

inline TensorSummary summarize(TensorSquare const& t, SchurResult const& s) {
  TensorSummary out;
  out.order = t.order();
  out.abelian = t.group.is_abelian();
  out.invariants = t.invariants();
  out.nabla_order = t.nabla.order();
  out.j2_order = t.j2.order();
  out.multiplier_order = s.multiplier_order;
  out.multiplier = s.multiplier;
  out.kappa_image_order = kappa_image_order(t);
  out.exterior_order = s.exterior.order();
  out.nu_order = t.nu_order;
  return out;
}

namespace detail {

using nlohmann::ordered_json;

template <class T>
ordered_json opt(std::optional<T> const& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <class T>
std::optional<T> get_opt(ordered_json const& j, char const* key) {
  if (!j.contains(key) || j.at(key).is_null()) {
    return std::nullopt;
  }
  return j.at(key).get<T>();
}

inline ordered_json invariants_json(AbelianInvariants const& a) {
  return ordered_json(a.factors());
}

}  // namespace detail

inline nlohmann::ordered_json bounds_json(BoundReport const& b,
                                          bool evaluated = true) {
  using detail::opt;
  nlohmann::ordered_json j;
  j["rocco"] = opt(b.rocco_bound);
  j["paper"] = opt(b.paper_bound);
  j["pi3"] = opt(b.pi3_bound);
  j["exponents"] = {{"rocco", b.rocco_exp}, {"paper", b.paper_exp}, {"pi3", b.pi3_exp}};
  j["paper_le_rocco"] = b.paper_le_rocco;
  if (evaluated) {
    j["holds"] = {{"rocco", b.rocco_holds}, {"paper", b.paper_holds}, {"pi3", b.pi3_holds}};
  } else {
    j["holds"] = nullptr;
  }
  return j;
}

inline nlohmann::ordered_json to_json(ComputationRecord const& r) {
  using detail::opt;
  using nlohmann::ordered_json;
  ordered_json j;
  j["group"] = {{"spec", r.spec}, {"order", r.order}, {"p", opt(r.p)},
                {"n", opt(r.n)}, {"m", opt(r.m)}};
  if (r.tensor) {
    TensorSummary const& t = *r.tensor;
    ordered_json tj = {{"order", t.order}, {"abelian", t.abelian}};
    if (t.invariants) {
      tj["invariants"] = detail::invariants_json(*t.invariants);
      tj["name"] = t.invariants->name();
    }
    tj["nu_order"] = t.nu_order;
    j["tensor"] = tj;
    j["nabla_order"] = t.nabla_order;
    j["j2_order"] = t.j2_order;
    j["multiplier_order"] = t.multiplier_order;
    j["multiplier"] = detail::invariants_json(t.multiplier);
    j["exterior_order"] = t.exterior_order;
    j["kappa_image_order"] = t.kappa_image_order;
  } else {
    j["tensor"] = nullptr;
    j["nabla_order"] = nullptr;
    j["j2_order"] = nullptr;
    j["multiplier_order"] = nullptr;
    j["kappa_image_order"] = nullptr;
  }
  j["bounds"] = r.bounds ? bounds_json(*r.bounds, r.tensor.has_value())
                         : ordered_json(nullptr);
  if (r.classification) {
    ClassificationVerdict const& c = *r.classification;
    ordered_json cj = {{"m_equals_one", c.m_equals_one},
                       {"attains_equality", c.attains_equality},
                       {"recognized_HxE", c.recognized_HxE},
                       {"consistent", c.consistent}};
    if (c.h_members && c.e_members) {
      cj["witness"] = {{"H", *c.h_members}, {"E", *c.e_members}};
    }
    j["classification"] = cj;
  }
  if (!r.checks.empty()) {
    ordered_json cs = ordered_json::array();
    for (Check const& c : r.checks) {
      cs.push_back({{"name", c.name}, {"verdict", c.verdict}, {"detail", c.detail}});
    }
    j["checks"] = cs;
  }
  j["status"] = r.status;
  if (!r.reason.empty()) {
    j["reason"] = r.reason;
  }
  if (r.elapsed_ms) {
    j["elapsed_ms"] = *r.elapsed_ms;
  }
  j["engine_version"] = kEngineVersion;
  return j;
}

// Inverse of to_json; used by the cache.
inline ComputationRecord record_from_json(nlohmann::ordered_json const& j) {
  using detail::get_opt;
  ComputationRecord r;
  auto const& g = j.at("group");
  r.spec = g.at("spec").get<std::string>();
  r.order = g.at("order").get<std::uint64_t>();
  r.p = get_opt<std::uint64_t>(g, "p");
  r.n = get_opt<std::uint64_t>(g, "n");
  r.m = get_opt<std::uint64_t>(g, "m");
  if (!j.at("tensor").is_null()) {
    auto const& tj = j.at("tensor");
    TensorSummary t;
    t.order = tj.at("order").get<std::uint64_t>();
    t.abelian = tj.at("abelian").get<bool>();
    if (tj.contains("invariants")) {
      t.invariants = AbelianInvariants(tj.at("invariants").get<std::vector<std::uint64_t>>());
    }
    t.nu_order = tj.at("nu_order").get<std::uint64_t>();
    t.nabla_order = j.at("nabla_order").get<std::uint64_t>();
    t.j2_order = j.at("j2_order").get<std::uint64_t>();
    t.multiplier_order = j.at("multiplier_order").get<std::uint64_t>();
    t.multiplier = AbelianInvariants(j.at("multiplier").get<std::vector<std::uint64_t>>());
    t.exterior_order = j.at("exterior_order").get<std::uint64_t>();
    t.kappa_image_order = j.at("kappa_image_order").get<std::uint64_t>();
    r.tensor = t;
  }
  if (!j.at("bounds").is_null()) {
    auto const& bj = j.at("bounds");
    BoundReport b = bound_exponents(*r.p, *r.n, *r.m);
    if (r.tensor) {
      b.tensor_order = r.tensor->order;
      b.j2_order = r.tensor->j2_order;
    }
    if (!bj.at("holds").is_null()) {
      b.rocco_holds = bj.at("holds").at("rocco").get<bool>();
      b.paper_holds = bj.at("holds").at("paper").get<bool>();
      b.pi3_holds = bj.at("holds").at("pi3").get<bool>();
    }
    r.bounds = b;
  }
  if (j.contains("classification")) {
    auto const& cj = j.at("classification");
    ClassificationVerdict c;
    c.m_equals_one = cj.at("m_equals_one").get<bool>();
    c.attains_equality = cj.at("attains_equality").get<bool>();
    c.recognized_HxE = cj.at("recognized_HxE").get<bool>();
    c.consistent = cj.at("consistent").get<bool>();
    if (cj.contains("witness")) {
      c.h_members = cj.at("witness").at("H").get<std::vector<elem_t>>();
      c.e_members = cj.at("witness").at("E").get<std::vector<elem_t>>();
    }
    r.classification = c;
  }
  if (j.contains("checks")) {
    for (auto const& c : j.at("checks")) {
      r.checks.push_back({c.at("name").get<std::string>(),
                          c.at("verdict").get<std::string>(),
                          c.at("detail").get<std::string>()});
    }
  }
  r.status = j.at("status").get<std::string>();
  if (j.contains("reason")) {
    r.reason = j.at("reason").get<std::string>();
  }
  r.elapsed_ms = get_opt<double>(j, "elapsed_ms");
  return r;
}

}  // namespace tensorsq

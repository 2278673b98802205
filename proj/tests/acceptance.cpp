#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "tensorsq.hpp"

using namespace tensorsq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, std::string const& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

Check const* find_check(ComputationRecord const& r, std::string const& name) {
  for (auto const& c : r.checks) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

bool check_passes(ComputationRecord const& r, std::string const& name) {
  Check const* c = find_check(r, name);
  return c && c->verdict == verdict::pass;
}

std::string invariants_str(std::optional<AbelianInvariants> const& a) {
  if (!a) {
    return "non-abelian";
  }
  std::ostringstream os;
  os << '[';
  auto const f = a->factors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << (i ? "," : "") << f[i];
  }
  os << ']';
  return os.str();
}

struct Suite {
  std::vector<std::pair<std::string, Tier>> picked;
  SuiteResult result;
  double seconds = 0;
  std::map<std::string, ComputationRecord const*> by_spec;
  std::map<std::string, Tier> tier;

  bool is_ci(std::string const& s) const { return tier.at(s) == Tier::ci; }
};

Suite run_default_suite() {
  Suite s;
  Selector sel;
  Guards guards;
  guards.timing = false;
  s.picked = select_groups(sel);
  auto const t0 = Clock::now();
  s.result = run_suite(sel, guards);
  s.seconds = seconds_since(t0);
  for (std::size_t i = 0; i < s.picked.size(); ++i) {
    s.by_spec[s.picked[i].first] = &s.result.groups[i];
  }
  for (auto const& e : builtin_catalog()) {
    s.tier[e.spec] = e.tier;
  }
  return s;
}

void criterion_1() {
  struct Case {
    char const* spec;
    std::vector<std::uint64_t> want;
    double limit_s;
  };
  std::vector<Case> const cases = {{"Q8", {4, 4, 2, 2}, 5},
                                   {"D8", {4, 2, 2, 2}, 5},
                                   {"E1_3", {3, 3, 3, 3, 3, 3}, 60},
                                   {"E2_3", {3, 3, 3, 3}, 60}};
  bool ok = true;
  std::string detail;
  for (auto const& c : cases) {
    auto const t0 = Clock::now();
    TensorSquare const t = tensor_square(parse_group_spec(c.spec));
    double const s = seconds_since(t0);
    auto const inv = t.invariants();
    bool const hit = inv && inv->factors() == c.want && s < c.limit_s;
    ok = ok && hit;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s=%s (%.2fs) ", c.spec,
                  invariants_str(inv).c_str(), s);
    detail += buf;
  }
  report(1, ok, detail);
}

void criterion_2(Suite const& s) {
  ComputationRecord const& r = *s.by_spec.at("E1_3");
  bool ok = r.tensor && r.tensor->nabla_order == 27 && r.tensor->multiplier_order == 9 &&
            r.tensor->order == 729 &&
            r.tensor->order == r.tensor->nabla_order * r.tensor->multiplier_order * 3 &&
            check_passes(r, "decomposition");
  std::string detail = "E1_3: |nabla|=" +
                       (r.tensor ? std::to_string(r.tensor->nabla_order) : "?") +
                       " |M|=" + (r.tensor ? std::to_string(r.tensor->multiplier_order) : "?") +
                       " |T|=" + (r.tensor ? std::to_string(r.tensor->order) : "?");
  report(2, ok, detail);
}

void criterion_3(Suite const& s) {
  std::size_t checked = 0, bad = 0;
  for (auto const& [spec, r] : s.by_spec) {
    if (!s.is_ci(spec)) {
      continue;
    }
    ++checked;
    bad += !(r->status == status::ok && check_passes(*r, "decomposition"));
  }
  report(3, checked > 0 && bad == 0,
         std::to_string(checked) + " CI groups, " + std::to_string(bad) + " failures");
}

void criterion_4(Suite const& s) {
  std::size_t nonabelian = 0, bad = 0;
  std::set<std::string> equality;
  bool recognizer_agrees = true;
  for (auto const& [spec, r] : s.by_spec) {
    if (!s.is_ci(spec) || !r->bounds || !r->tensor) {
      continue;
    }
    ++nonabelian;
    BoundReport const& b = *r->bounds;
    std::uint64_t const t = r->tensor->order;
    std::uint64_t const j2 = r->tensor->j2_order;
    bool const holds = b.rocco_bound && b.paper_bound && b.pi3_bound &&
                       t <= *b.rocco_bound && t <= *b.paper_bound && j2 <= *b.pi3_bound;
    bad += !(holds && check_passes(*r, "bounds"));
    if (b.m == 1) {
      bool const eq = t == *b.paper_bound;
      if (eq) {
        equality.insert(spec);
      }
      recognizer_agrees = recognizer_agrees && r->classification &&
                          r->classification->attains_equality == eq &&
                          r->classification->recognized_HxE == eq &&
                          r->classification->consistent &&
                          check_passes(*r, "classification");
    }
  }
  std::set<std::string> const want = {"Q8", "E1_3", "Q8xC2"};
  bool const in_time = s.seconds < 600;
  std::string eqs;
  for (auto const& e : equality) {
    eqs += (eqs.empty() ? "" : ",") + e;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "; suite %.1fs", s.seconds);
  report(4, bad == 0 && equality == want && recognizer_agrees && in_time && nonabelian > 0,
         std::to_string(nonabelian) + " non-abelian CI groups, " + std::to_string(bad) +
             " bound failures; equality at m=1: {" + eqs + "}" + buf);
}

void criterion_5() {
  struct Case {
    char const* spec;
    std::vector<std::uint64_t> want;
  };
  std::vector<std::uint64_t> q8c2 = {4, 4};
  q8c2.resize(9, 2);
  std::vector<Case> const cases = {
      {"Q8", {4, 4, 2, 2}}, {"E1_3", std::vector<std::uint64_t>(6, 3)}, {"Q8xC2", q8c2}};
  bool ok = true;
  std::string detail;
  for (auto const& c : cases) {
    GroupTable const g = parse_group_spec(c.spec);
    CorollaryCheck const cc = check_structure_corollary(g, tensor_square(g));
    bool const hit = cc.matches && cc.expected.factors() == c.want;
    ok = ok && hit;
    detail += std::string(c.spec) + "=" + invariants_str(cc.actual) + " ";
  }
  report(5, ok, detail);
}

void criterion_6(Suite const& s) {
  std::size_t checked = 0, bad = 0;
  std::string excluded;
  for (auto const& [spec, r] : s.by_spec) {
    if (r->order > 16) {
      continue;
    }
    if (!s.is_ci(spec)) {
      excluded += " " + spec;
      continue;
    }
    ++checked;
    bool const kappa_ok = r->tensor && check_passes(*r, "kappa") &&
                          r->tensor->kappa_image_order ==
                              parse_group_spec(spec).order() /
                                  abelianization(parse_group_spec(spec)).order();
    bad += !(check_passes(*r, "tensor_relations") && kappa_ok);
  }
  report(6, checked > 0 && bad == 0,
         std::to_string(checked) + " groups of order <= 16, " + std::to_string(bad) +
             " violations; probe tier excluded:" + excluded);
}

void criterion_7() {
  bool ok = true;
  std::string detail;
  for (char const* spec : {"Q8", "D8"}) {
    GroupTable const h = parse_group_spec(spec);
    CentralExtensionReport const r = central_extension_check(h, center(h));
    bool const hit = r.im_l_central && r.matches_quotient_tensor;
    ok = ok && hit;
    detail += std::string(spec) + ": |Im l|=" + std::to_string(r.im_l.order()) +
              " cokernel " + std::to_string(r.quotient_order) + " vs " +
              std::to_string(r.quotient_tensor_order) + "; ";
  }
  report(7, ok, detail);
}

void criterion_8(Suite const& s) {
  std::size_t checked = 0, bad = 0;
  std::string excluded;
  for (auto const& [spec, r] : s.by_spec) {
    if (r->order > 16) {
      continue;
    }
    if (!s.is_ci(spec)) {
      excluded += " " + spec;
      continue;
    }
    GroupTable const g = parse_group_spec(spec);
    if (!g.is_abelian()) {
      continue;
    }
    ++checked;
    AbelianInvariants const a = abelian_invariants(g);
    bool const hit = r->tensor && r->tensor->invariants &&
                     *r->tensor->invariants == abelian_tensor(a, a) &&
                     check_passes(*r, "abelian_coincidence");
    bad += !hit;
  }
  report(8, checked > 0 && bad == 0,
         std::to_string(checked) + " abelian groups, " + std::to_string(bad) +
             " mismatches; probe tier excluded:" + excluded);
}

void criterion_9(Suite const& s) {
  Selector sel;
  Guards guards;
  guards.timing = false;
  std::string const first = to_json(s.result).dump(2);
  std::string const second = to_json(run_suite(sel, guards)).dump(2);
  report(9, first == second,
         "two verify runs, " + std::to_string(first.size()) + " bytes, " +
             (first == second ? "identical" : "differ"));
}

void criterion_10(Suite const& s) {
  std::size_t probes = 0, bad = 0;
  for (auto const& [spec, r] : s.by_spec) {
    if (s.tier.at(spec) != Tier::probe) {
      continue;
    }
    ++probes;
    bool passed_any = false;
    for (auto const& c : r->checks) {
      passed_any = passed_any || c.verdict == verdict::pass;
    }
    bad += !(r->status == status::skipped_by_cap && !passed_any);
  }
  bool const es_probe = s.by_spec.count("ES_2_2_+") && s.by_spec.count("ES_3_2_+");

  Guards ext;
  ext.timing = false;
  ext.max_cosets = ext.extended_max_cosets;
  ComputationRecord const r = evaluate_group("E1_3xC3", ext);
  bool passed_any = false;
  for (auto const& c : r.checks) {
    passed_any = passed_any || c.verdict == verdict::pass;
  }
  bool const e13 = r.status == status::skipped_by_cap && !passed_any;
  report(10, probes > 0 && bad == 0 && es_probe && e13,
         std::to_string(probes) + " probes skipped-by-cap; E1_3xC3 at " +
             std::to_string(ext.max_cosets) + " cosets: " + r.status + " (" + r.reason +
             ")");
}

}  // namespace

int main() {
  criterion_1();
  Suite const s = run_default_suite();
  criterion_2(s);
  criterion_3(s);
  criterion_4(s);
  criterion_5();
  criterion_6(s);
  criterion_7();
  criterion_8(s);
  criterion_9(s);
  criterion_10(s);
  return failures == 0 ? 0 : 1;
}

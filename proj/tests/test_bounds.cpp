#include <catch_amalgamated.hpp>

#include <map>

#include "tensorsq/bounds.hpp"
#include "tensorsq/catalog.hpp"

using namespace tensorsq;

namespace {

struct Computed {
  GroupTable g;
  TensorSquare t;
};

Computed const& computed(std::string const& spec) {
  static std::map<std::string, Computed> memo;
  auto it = memo.find(spec);
  if (it == memo.end()) {
    GroupTable g = parse_group_spec(spec);
    TensorSquare t = tensor_square(g);
    it = memo.emplace(spec, Computed{std::move(g), std::move(t)}).first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("bound arithmetic", "[bounds]") {
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (std::uint64_t n = 2; n <= 12; ++n) {
      for (std::uint64_t m = 1; m < n; ++m) {
        BoundReport const b = bound_exponents(p, n, m);
        INFO("p=" << p << " n=" << n << " m=" << m);
        CHECK(b.rocco_exp == n * (n - m));
        CHECK(b.paper_exp == (n - 1) * (n - m) + 2);
        CHECK(b.pi3_exp + 0 == n * (n - m - 1) + 2);
        CHECK(b.paper_le_rocco == (n - m >= 2));
        CHECK((b.paper_exp == b.rocco_exp) == (n - m == 2));
        if (b.paper_bound && b.rocco_bound) {
          CHECK((*b.paper_bound <= *b.rocco_bound) == (n - m >= 2));
        }
      }
    }
  }
}

TEST_CASE("bounds on Q8, D8 and Q8 x C2", "[bounds]") {
  auto const& q8 = computed("Q8");
  BoundReport const bq = bounds(q8.g, q8.t);
  CHECK(bq.rocco_bound == 64u);
  CHECK(bq.paper_bound == 64u);
  CHECK(bq.tensor_order == 64);
  CHECK(bq.rocco_holds);
  CHECK(bq.paper_holds);
  CHECK(bq.pi3_holds);

  auto const& d8 = computed("D8");
  BoundReport const bd = bounds(d8.g, d8.t);
  CHECK(bd.tensor_order == 32);
  CHECK(bd.tensor_order < *bd.paper_bound);

  auto const& q8c2 = computed("Q8xC2");
  BoundReport const b = bounds(q8c2.g, q8c2.t);
  CHECK(b.n == 4);
  CHECK(b.m == 1);
  CHECK(b.paper_bound == 2048u);
  CHECK(b.tensor_order == 2048);
  CHECK(b.paper_holds);
  CHECK(b.j2_order == b.tensor_order / 2);
}

TEST_CASE("bounds preconditions", "[bounds]") {
  GroupTable const s3 = parse_group_spec("S3");
  TensorSquare const t = tensor_square(s3);
  try {
    bounds(s3, t);
    FAIL("expected NotPGroup");
  } catch (Precondition const& e) {
    CHECK(e.kind() == "NotPGroup");
  }
  GroupTable const c4 = parse_group_spec("C4");
  try {
    bounds(c4, tensor_square(c4));
    FAIL("expected AbelianInput");
  } catch (Precondition const& e) {
    CHECK(e.kind() == "AbelianInput");
  }
}

TEST_CASE("classify_equality_m1", "[bounds]") {
  auto const& q8 = computed("Q8");
  ClassificationVerdict const vq = classify_equality_m1(q8.g, q8.t);
  CHECK(vq.attains_equality);
  CHECK(vq.recognized_HxE);
  CHECK(vq.consistent);
  REQUIRE(vq.e_members);
  CHECK(vq.e_members->size() == 1);

  auto const& d8 = computed("D8");
  ClassificationVerdict const vd = classify_equality_m1(d8.g, d8.t);
  CHECK_FALSE(vd.attains_equality);
  CHECK_FALSE(vd.recognized_HxE);
  CHECK(vd.consistent);

  auto const& e2 = computed("E2_3");
  ClassificationVerdict const ve = classify_equality_m1(e2.g, e2.t);
  CHECK(e2.t.order() == 81);
  CHECK_FALSE(ve.attains_equality);
  CHECK_FALSE(ve.recognized_HxE);
  CHECK(ve.consistent);

  auto const& q8c2 = computed("Q8xC2");
  ClassificationVerdict const v = classify_equality_m1(q8c2.g, q8c2.t);
  CHECK(v.attains_equality);
  CHECK(v.recognized_HxE);
  CHECK(v.consistent);
  REQUIRE(v.h_members);
  REQUIRE(v.e_members);
  CHECK(v.h_members->size() == 8);
  CHECK(v.e_members->size() == 2);

  auto const& pauli = computed("SG16_13");
  ClassificationVerdict const vp = classify_equality_m1(pauli.g, pauli.t);
  CHECK_FALSE(vp.attains_equality);
  CHECK_FALSE(vp.recognized_HxE);

  auto const& d16 = computed("D16");
  try {
    classify_equality_m1(d16.g, d16.t);
    FAIL("expected PreconditionM");
  } catch (Precondition const& e) {
    CHECK(e.kind() == "PreconditionM");
  }
}

TEST_CASE("classification witness is a direct decomposition", "[bounds]") {
  auto const& q8c2 = computed("Q8xC2");
  ClassificationVerdict const v = classify_equality_m1(q8c2.g, q8c2.t);
  REQUIRE(v.recognized_HxE);
  GroupTable const& g = q8c2.g;
  Subgroup const h{*v.h_members, true};
  Subgroup const e{*v.e_members, true};
  CHECK(intersect(h, e).order() == 1);
  CHECK(h.order() * e.order() == g.order());
  CHECK(is_normal_subgroup(g, h.members));
  CHECK(is_central(g, e));
  CHECK(is_extra_special(subgroup_table(g, h).group));
}

TEST_CASE("check_structure_corollary", "[bounds]") {
  auto const& q8 = computed("Q8");
  CorollaryCheck const cq = check_structure_corollary(q8.g, q8.t);
  CHECK(cq.expected.factors() == std::vector<std::uint64_t>{4, 4, 2, 2});
  CHECK(cq.matches);

  auto const& e1 = computed("E1_3");
  CorollaryCheck const ce = check_structure_corollary(e1.g, e1.t);
  CHECK(ce.expected.factors() == std::vector<std::uint64_t>(6, 3));
  CHECK(ce.matches);

  auto const& q8c2 = computed("Q8xC2");
  CorollaryCheck const c = check_structure_corollary(q8c2.g, q8c2.t);
  std::vector<std::uint64_t> want{4, 4};
  want.resize(9, 2);
  CHECK(c.expected.factors() == want);
  CHECK(c.expected.order() == 2048);
  CHECK(c.matches);

  auto const& d8 = computed("D8");
  try {
    check_structure_corollary(d8.g, d8.t);
    FAIL("expected PreconditionEquality");
  } catch (Precondition const& e) {
    CHECK(e.kind() == "PreconditionEquality");
  }
}

TEST_CASE("check_strictness_conditions", "[bounds]") {
  auto const& m16 = computed("M16");
  CHECK(abelianization(m16.g) == AbelianInvariants({4, 2}));
  StrictnessReport const sm = check_strictness_conditions(m16.g, m16.t);
  CHECK(sm.condition_i);
  CHECK(sm.strict);
  CHECK(sm.holds);

  auto const& d8 = computed("D8");
  StrictnessReport const sd = check_strictness_conditions(d8.g, d8.t);
  CHECK_FALSE(sd.condition_i);
  CHECK_FALSE(sd.condition_ii);

  // C4 o D8: G^ab = C2^(3) and Z(G) = C4.
  auto const& pauli = computed("SG16_13");
  StrictnessReport const sp = check_strictness_conditions(pauli.g, pauli.t);
  CHECK_FALSE(sp.condition_i);
  CHECK(sp.condition_ii);
  CHECK(sp.strict);
  CHECK(sp.holds);
}

TEST_CASE("check_induction_step", "[bounds]") {
  auto const& d8c2 = computed("D8xC2");
  Subgroup const k = subgroup_generated(d8c2.g, {derived_subgroup(d8c2.g).members.at(1)});
  try {
    check_induction_step(d8c2.g, k, d8c2.t);
    FAIL("expected PreconditionK");
  } catch (Precondition const& e) {
    CHECK(e.kind() == "PreconditionK");
  }

  for (char const* spec : {"D16", "Q16", "SD16"}) {
    INFO(spec);
    auto const& c = computed(spec);
    auto k2 = induction_kernel(c.g);
    REQUIRE(k2);
    InductionReport const r = check_induction_step(c.g, *k2, c.t);
    CHECK(r.holds);
    CHECK(r.tensor_order == 64);
  }
}

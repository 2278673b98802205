#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tensorsq/coset_enum.hpp"
#include "tensorsq/group_ops.hpp"

namespace tensorsq {

// Group specification strings.
//
//   spec   := factor ('x' factor)*
//   factor := atom ('^' k)?            repeated direct product
//   atom   := 'C'n                     cyclic of order n
//           | 'D'n                     dihedral of order n (n even, n >= 4)
//           | 'Q'n                     generalized quaternion, n = 2^k >= 8
//           | 'SD'n | 'M'n             semidihedral / modular, n = 2^k >= 16
//           | 'MC'a'_'b'_'r            <x, y | x^a, y^b, y x y^-1 = x^r>
//           | 'E1_'p | 'E2_'p          extra-special p^3, exponent p / p^2 (p odd)
//           | 'ES_'p'_'m'_'('+'|'-')   extra-special p^(2m+1)
//           | 'W'p                     wreath product C_p wr C_p
//           | 'S3' | 'SG16_3' | 'SG16_13'
//
// ES_p_m_+ is the central product of m copies of D8 (p = 2) or E1_p;
// ES_p_m_- replaces the first copy by Q8 (p = 2) or E2_p.
struct SpecAtom {
  std::string kind;
  std::vector<std::uint64_t> params;
  char sign = 0;  // ES only
  std::uint64_t order = 0;
};

struct SpecFactor {
  SpecAtom atom;
  std::uint64_t power = 1;
};

struct GroupSpec {
  std::string text;
  std::vector<SpecFactor> factors;

  // Product of atom orders (saturating).
  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (auto const& f : factors) {
      for (std::uint64_t i = 0; i < f.power; ++i) {
        n = (n > UINT64_MAX / f.atom.order) ? UINT64_MAX : n * f.atom.order;
      }
    }
    return n;
  }
};

namespace detail {

inline bool is_power_of_two(std::uint64_t n) { return n && !(n & (n - 1)); }

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) {
      r = r * b % m;
    }
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

class SpecParser {
 public:
  explicit SpecParser(std::string_view s) : s_(s) {}

  GroupSpec parse() {
    GroupSpec spec;
    spec.text = std::string(s_);
    spec.factors.push_back(factor());
    while (pos_ < s_.size()) {
      if (s_[pos_] != 'x') {
        throw ParseError(pos_, "'x' or end of spec");
      }
      ++pos_;
      spec.factors.push_back(factor());
    }
    return spec;
  }

 private:
  bool take(std::string_view p) {
    if (s_.substr(pos_, p.size()) == p) {
      pos_ += p.size();
      return true;
    }
    return false;
  }

  std::uint64_t number(char const* what) {
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (pos_ - start >= 9) {
        throw ParseError(pos_, std::string(what) + " below 10^9");
      }
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) {
      throw ParseError(pos_, what);
    }
    return v;
  }

  void underscore() {
    if (!take("_")) {
      throw ParseError(pos_, "'_'");
    }
  }

  SpecFactor factor() {
    SpecFactor f{atom(), 1};
    if (take("^")) {
      std::size_t at = pos_;
      f.power = number("repeat count");
      if (f.power == 0) {
        throw ParseError(at, "positive repeat count");
      }
    }
    return f;
  }

  std::uint64_t odd_prime() {
    std::size_t at = pos_;
    std::uint64_t p = number("odd prime");
    if (p == 2 || !is_prime(p)) {
      throw ParseError(at, "odd prime");
    }
    return p;
  }

  SpecAtom atom() {
    SpecAtom a;
    std::size_t const at = pos_;
    auto need = [&](bool ok, char const* what) {
      if (!ok) {
        throw ParseError(at, what);
      }
    };
    if (take("SG16_")) {
      a.kind = "SG16";
      std::uint64_t id = number("3 or 13");
      need(id == 3 || id == 13, "SG16_3 or SG16_13");
      a.params = {id};
      a.order = 16;
    } else if (take("SD")) {
      a.kind = "SD";
      std::uint64_t n = number("order");
      need(is_power_of_two(n) && n >= 16, "SD order 2^k >= 16");
      a.params = {n};
      a.order = n;
    } else if (take("S3")) {
      a.kind = "D";
      a.params = {6};
      a.order = 6;
    } else if (take("MC")) {
      a.kind = "MC";
      std::uint64_t m = number("cyclic order");
      underscore();
      std::uint64_t b = number("acting order");
      underscore();
      std::uint64_t r = number("exponent");
      need(m >= 1 && b >= 1 && std::gcd(r, m) == 1 && powmod(r, b, m) == 1 % m,
           "MC a_b_r with gcd(r, a) = 1 and r^b = 1 mod a");
      a.params = {m, b, r};
      a.order = m * b;
    } else if (take("M")) {
      a.kind = "M";
      std::uint64_t n = number("order");
      need(is_power_of_two(n) && n >= 16, "M order 2^k >= 16");
      a.params = {n};
      a.order = n;
    } else if (take("ES_")) {
      a.kind = "ES";
      std::size_t pat = pos_;
      std::uint64_t p = number("prime");
      if (!is_prime(p)) {
        throw ParseError(pat, "prime");
      }
      underscore();
      std::size_t mat = pos_;
      std::uint64_t m = number("m >= 1");
      if (m == 0 || m > 6) {
        throw ParseError(mat, "m between 1 and 6");
      }
      underscore();
      if (take("+")) {
        a.sign = '+';
      } else if (take("-")) {
        a.sign = '-';
      } else {
        throw ParseError(pos_, "'+' or '-'");
      }
      a.params = {p, m};
      a.order = ipow(p, 2 * m + 1);
    } else if (take("E1_") || take("E2_")) {
      a.kind = s_[pos_ - 2] == '1' ? "E1" : "E2";
      std::uint64_t p = odd_prime();
      a.params = {p};
      a.order = p * p * p;
    } else if (take("C")) {
      a.kind = "C";
      std::uint64_t n = number("order");
      need(n >= 1, "positive order");
      a.params = {n};
      a.order = n;
    } else if (take("D")) {
      a.kind = "D";
      std::uint64_t n = number("order");
      need(n >= 4 && n % 2 == 0, "even dihedral order >= 4");
      a.params = {n};
      a.order = n;
    } else if (take("Q")) {
      a.kind = "Q";
      std::uint64_t n = number("order");
      need(is_power_of_two(n) && n >= 8, "quaternion order 2^k >= 8");
      a.params = {n};
      a.order = n;
    } else if (take("W")) {
      a.kind = "W";
      std::size_t pat = pos_;
      std::uint64_t p = number("prime");
      if (!is_prime(p) || p > 5) {
        throw ParseError(pat, "prime p <= 5");
      }
      a.params = {p};
      a.order = ipow(p, p + 1);
    } else {
      throw ParseError(pos_,
                       "one of C, D, Q, SD, M, MC, E1_, E2_, ES_, W, S3, SG16_");
    }
    return a;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string n_(std::uint64_t v) { return std::to_string(v); }

inline GroupTable from_text(std::string const& pres, std::size_t cap) {
  return table_from_presentation(parse_presentation(pres), kDefaultMaxCosets,
                                 cap);
}

inline elem_t center_generator(GroupTable const& g) {
  return center(g).members.at(1);
}

inline GroupTable build_atom(SpecAtom const& a, std::size_t cap) {
  if (a.order > cap) {
    throw SizeLimit(a.order, cap);
  }
  auto const& q = a.params;
  if (a.kind == "C") {
    if (q[0] == 1) {
      return GroupTable();
    }
    return from_text("gens: a; rels: a^" + n_(q[0]), cap);
  }
  if (a.kind == "D") {
    return from_text("gens: r s; rels: r^" + n_(q[0] / 2) + ", s^2, (s*r)^2", cap);
  }
  if (a.kind == "Q") {
    return from_text("gens: a b; rels: a^" + n_(q[0] / 2) + ", b^2=a^" +
                         n_(q[0] / 4) + ", b*a*b^-1=a^-1",
                     cap);
  }
  if (a.kind == "SD") {
    return from_text("gens: a b; rels: a^" + n_(q[0] / 2) + ", b^2, b*a*b^-1=a^" +
                         n_(q[0] / 4 - 1),
                     cap);
  }
  if (a.kind == "M") {
    return from_text("gens: a b; rels: a^" + n_(q[0] / 2) + ", b^2, b*a*b^-1=a^" +
                         n_(q[0] / 4 + 1),
                     cap);
  }
  if (a.kind == "MC") {
    std::string rels = "x^" + n_(q[0]) + ", y^" + n_(q[1]) + ", y*x*y^-1=x^" + n_(q[2]);
    return from_text("gens: x y; rels: " + rels, cap);
  }
  if (a.kind == "E1") {
    std::string p = n_(q[0]);
    return from_text("gens: a b c; rels: a^" + p + ", b^" + p + ", c^" + p +
                         ", a*b*a^-1*b^-1=c, a*c=c*a, b*c=c*b",
                     cap);
  }
  if (a.kind == "E2") {
    return from_text("gens: a b; rels: a^" + n_(q[0] * q[0]) + ", b^" + n_(q[0]) +
                         ", b*a*b^-1=a^" + n_(q[0] + 1),
                     cap);
  }
  if (a.kind == "W") {
    std::string p = n_(q[0]);
    std::string rels = "a^" + p + ", t^" + p;
    for (std::uint64_t i = 1; i < q[0]; ++i) {
      std::string ti = "t^" + n_(i);
      rels += ", a*" + ti + "*a*t^-" + n_(i) + "=" + ti + "*a*t^-" + n_(i) + "*a";
    }
    return from_text("gens: a t; rels: " + rels, cap);
  }
  if (a.kind == "SG16") {
    if (q[0] == 3) {
      return from_text("gens: a b c; rels: a^4, b^2, c^2, a*b=b*a, b*c=c*b, c*a*c^-1=a*b", cap);
    }
    return from_text("gens: r s z; rels: r^4, s^2, (s*r)^2, z^2=r^2, z*r=r*z, z*s=s*z", cap);
  }
  if (a.kind == "ES") {
    std::uint64_t const p = q[0], m = q[1];
    SpecAtom plus{p == 2 ? "D" : "E1", {p == 2 ? 8u : p}, 0, p * p * p};
    SpecAtom minus{p == 2 ? "Q" : "E2", {p == 2 ? 8u : p}, 0, p * p * p};
    GroupTable out = build_atom(a.sign == '-' ? minus : plus, cap);
    GroupTable const piece = build_atom(plus, cap);
    for (std::uint64_t i = 1; i < m; ++i) {
      out = central_product(out, center_generator(out), piece,
                            center_generator(piece), cap);
    }
    return out;
  }
  throw ParseError(0, "known atom kind");
}

}  // namespace detail

inline GroupSpec parse_spec(std::string_view s) {
  return detail::SpecParser(s).parse();
}

// Builds the group a spec names. Throws ParseError or SizeLimit.
inline GroupTable build_group(GroupSpec const& spec,
                              std::size_t cap = kDefaultTableCap) {
  if (spec.order() > cap) {
    throw SizeLimit(spec.order(), cap);
  }
  GroupTable out;
  for (auto const& f : spec.factors) {
    GroupTable const a = detail::build_atom(f.atom, cap);
    for (std::uint64_t i = 0; i < f.power; ++i) {
      out = out.order() == 1 ? a : direct_product(out, a, cap);
    }
  }
  return out;
}

inline GroupTable parse_group_spec(std::string_view s,
                                   std::size_t cap = kDefaultTableCap) {
  return build_group(parse_spec(s), cap);
}

enum class Tier {
  ci,        // default verification catalog
  probe,     // beyond the default guard; reported as skipped-by-cap
  extended,  // attempted only with --extended
};

struct CatalogEntry {
  std::string spec;
  Tier tier;
  std::string note;
};

// Built-in groups, in the deterministic order used by the verifier.
inline std::vector<CatalogEntry> const& builtin_catalog() {
  static std::vector<CatalogEntry> const entries = {
      {"C2", Tier::ci, ""},
      {"C4", Tier::ci, ""},
      {"C2^2", Tier::ci, ""},
      {"C8", Tier::ci, ""},
      {"C4xC2", Tier::ci, ""},
      {"C2^3", Tier::ci, ""},
      {"D8", Tier::ci, "dihedral of order 8"},
      {"Q8", Tier::ci, "quaternion of order 8"},
      {"C16", Tier::ci, ""},
      {"C8xC2", Tier::ci, ""},
      {"C4^2", Tier::ci, ""},
      {"C4xC2^2", Tier::ci, ""},
      {"C2^4", Tier::probe, "tensor square of order 2^16 exceeds the table cap"},
      {"D8xC2", Tier::ci, ""},
      {"Q8xC2", Tier::ci, "equality case H x E"},
      {"MC4_4_3", Tier::ci, "C4 : C4"},
      {"M16", Tier::ci, "modular group C8 : C2"},
      {"D16", Tier::ci, ""},
      {"Q16", Tier::ci, ""},
      {"SD16", Tier::ci, ""},
      {"SG16_3", Tier::ci, "(C4 x C2) : C2"},
      {"SG16_13", Tier::ci, "Pauli group C4 o D8"},
      {"C3", Tier::ci, ""},
      {"C9", Tier::ci, ""},
      {"C3^2", Tier::ci, ""},
      {"C27", Tier::ci, ""},
      {"C9xC3", Tier::ci, ""},
      {"C3^3", Tier::probe, "tensor square of order 3^9 exceeds the table cap"},
      {"E1_3", Tier::ci, "extra-special 27, exponent 3"},
      {"E2_3", Tier::ci, "extra-special 27, exponent 9"},
      {"C5", Tier::ci, ""},
      {"C5^2", Tier::extended, ""},
      {"C7", Tier::ci, ""},
      {"ES_2_2_+", Tier::probe, "extra-special 2^5, predicted C2^(16)"},
      {"ES_2_2_-", Tier::probe, "extra-special 2^5, predicted C2^(16)"},
      {"ES_3_2_+", Tier::probe, "extra-special 3^5, predicted C3^(16)"},
      {"E1_3xC3", Tier::probe, "equality case H x E at p = 3, predicted 3^11"},
      {"Q8xC4", Tier::extended, "strictness condition (ii)"},
      {"D8xC4", Tier::extended, ""},
      {"D16xC2", Tier::extended, "|G'| = 4"},
      {"Q16xC2", Tier::extended, "|G'| = 4"},
      {"Q8xC2^2", Tier::extended, "equality case H x E, n = 5"},
      {"W3", Tier::extended, "C3 wr C3, |G'| = 9"},
  };
  return entries;
}

}  // namespace tensorsq

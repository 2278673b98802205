#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "tensorsq/error.hpp"

namespace tensorsq {

using elem_t = std::uint32_t;

inline constexpr elem_t kIdentity = 0;  // identity is index 0 in every table
inline constexpr std::size_t kDefaultTableCap = 4096;
inline constexpr std::size_t kAssociativityExhaustiveLimit = 256;

// A finite group given by its full multiplication table. Immutable once
// constructed; every constructor path goes through validation.
class GroupTable {
 public:
  GroupTable() : GroupTable(1, {0}) {}

  // Validates a flat row-major table: Latin square, identity at 0 and
  // associativity (exhaustive up to kAssociativityExhaustiveLimit, sampled
  // above). Throws NotAGroup with a witness on failure.
  GroupTable(std::size_t order, std::vector<elem_t> mult)
      : order_(order), mult_(std::move(mult)) {
    validate();
    fill_inverses_and_orders();
  }

  static GroupTable from_rows(std::vector<std::vector<elem_t>> const& rows) {
    std::size_t const n = rows.size();
    if (n == 0) {
      throw NotAGroup("empty table", {});
    }
    std::vector<elem_t> flat;
    flat.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n) {
        throw NotAGroup("row " + std::to_string(r) + " has wrong length",
                        {static_cast<elem_t>(r)});
      }
      for (elem_t v : rows[r]) {
        if (v >= n) {
          throw NotAGroup("entry out of range in row " + std::to_string(r),
                          {static_cast<elem_t>(r)});
        }
        flat.push_back(v);
      }
    }
    return GroupTable(n, std::move(flat));
  }

  std::size_t order() const noexcept { return order_; }

  elem_t mul(elem_t a, elem_t b) const noexcept { return mult_[a * order_ + b]; }
  elem_t inv(elem_t a) const noexcept { return inverse_[a]; }
  std::uint64_t elem_order(elem_t a) const noexcept { return elem_order_[a]; }

  std::span<elem_t const> row(elem_t a) const noexcept {
    return {mult_.data() + a * order_, order_};
  }
  std::vector<elem_t> const& flat() const noexcept { return mult_; }
  std::vector<elem_t> const& inverses() const noexcept { return inverse_; }
  std::vector<std::uint64_t> const& elem_orders() const noexcept {
    return elem_order_;
  }

  // ^g x = g x g^-1
  elem_t conj(elem_t g, elem_t x) const noexcept { return mul(mul(g, x), inv(g)); }
  // [g, h] = g h g^-1 h^-1
  elem_t comm(elem_t g, elem_t h) const noexcept {
    return mul(mul(g, h), mul(inv(g), inv(h)));
  }

  elem_t power(elem_t x, std::int64_t k) const noexcept {
    if (k < 0) {
      x = inv(x);
      k = -k;
    }
    elem_t r = kIdentity;
    for (std::int64_t i = 0; i < k; ++i) {
      r = mul(r, x);
    }
    return r;
  }

  bool is_abelian() const noexcept {
    for (std::size_t a = 0; a < order_; ++a) {
      for (std::size_t b = a + 1; b < order_; ++b) {
        if (mult_[a * order_ + b] != mult_[b * order_ + a]) {
          return false;
        }
      }
    }
    return true;
  }

  friend bool operator==(GroupTable const& a, GroupTable const& b) {
    return a.order_ == b.order_ && a.mult_ == b.mult_;
  }

 private:
  void validate() const {
    std::size_t const n = order_;
    if (n == 0 || mult_.size() != n * n) {
      throw NotAGroup("table is not square", {});
    }
    std::vector<std::uint32_t> seen(n, 0);
    std::uint32_t stamp = 0;
    for (std::size_t r = 0; r < n; ++r) {
      ++stamp;
      for (std::size_t c = 0; c < n; ++c) {
        elem_t v = mult_[r * n + c];
        if (v >= n) {
          throw NotAGroup("entry out of range", {static_cast<elem_t>(r)});
        }
        if (seen[v] == stamp) {
          throw NotAGroup("row " + std::to_string(r) + " is not a permutation",
                          {static_cast<elem_t>(r)});
        }
        seen[v] = stamp;
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      ++stamp;
      for (std::size_t r = 0; r < n; ++r) {
        elem_t v = mult_[r * n + c];
        if (seen[v] == stamp) {
          throw NotAGroup(
              "column " + std::to_string(c) + " is not a permutation",
              {static_cast<elem_t>(c)});
        }
        seen[v] = stamp;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (mult_[x] != x || mult_[x * n] != x) {
        throw NotAGroup("index 0 is not the identity",
                        {static_cast<elem_t>(x)});
      }
    }
    auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
      if (mult_[mult_[a * n + b] * n + c] != mult_[a * n + mult_[b * n + c]]) {
        throw NotAGroup("associativity fails",
                        {static_cast<elem_t>(a), static_cast<elem_t>(b),
                         static_cast<elem_t>(c)});
      }
    };
    if (n <= kAssociativityExhaustiveLimit) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t c = 0; c < n; ++c) {
            check(a, b, c);
          }
        }
      }
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (int i = 0; i < 20000; ++i) {
        check(pick(rng), pick(rng), pick(rng));
      }
    }
  }

  void fill_inverses_and_orders() {
    std::size_t const n = order_;
    inverse_.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      auto r = row(static_cast<elem_t>(x));
      inverse_[x] = static_cast<elem_t>(std::find(r.begin(), r.end(), kIdentity) -
                                        r.begin());
    }
    elem_order_.assign(n, 1);
    for (std::size_t x = 1; x < n; ++x) {
      elem_t y = static_cast<elem_t>(x);
      std::uint64_t k = 1;
      while (y != kIdentity) {
        y = mul(y, static_cast<elem_t>(x));
        ++k;
      }
      elem_order_[x] = k;
    }
  }

  std::size_t order_;
  std::vector<elem_t> mult_;
  std::vector<elem_t> inverse_;
  std::vector<std::uint64_t> elem_order_;
};

// A subgroup of some parent table; the parent is supplied to every
// operation. `members` is sorted and always contains the identity.
struct Subgroup {
  std::vector<elem_t> members{kIdentity};
  bool is_normal = true;

  std::size_t order() const noexcept { return members.size(); }
  bool contains(elem_t x) const noexcept {
    return std::binary_search(members.begin(), members.end(), x);
  }
  friend bool operator==(Subgroup const&, Subgroup const&) = default;
};

// Homomorphism given by the image of every source element.
struct GroupHom {
  std::vector<elem_t> image;

  elem_t operator()(elem_t x) const noexcept { return image[x]; }
};

inline bool is_homomorphism(GroupTable const& source, GroupTable const& target,
                            GroupHom const& h) {
  if (h.image.size() != source.order() || h.image[kIdentity] != kIdentity) {
    return false;
  }
  for (elem_t x = 0; x < source.order(); ++x) {
    for (elem_t y = 0; y < source.order(); ++y) {
      if (h.image[source.mul(x, y)] != target.mul(h.image[x], h.image[y])) {
        return false;
      }
    }
  }
  return true;
}

// Builds a full table from the right-multiplication permutations of a
// generating set: `right[k][x]` is x * s_k. Each entry costs O(1) once the
// BFS spanning tree from the identity is known.
inline GroupTable table_from_right_action(
    std::size_t order, std::vector<std::vector<elem_t>> const& right) {
  std::vector<elem_t> bfs{kIdentity};
  std::vector<elem_t> parent(order, 0);
  std::vector<std::size_t> via(order, 0);
  std::vector<bool> seen(order, false);
  seen[kIdentity] = true;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    for (std::size_t k = 0; k < right.size(); ++k) {
      elem_t y = right[k][bfs[i]];
      if (!seen[y]) {
        seen[y] = true;
        parent[y] = bfs[i];
        via[y] = k;
        bfs.push_back(y);
      }
    }
  }
  if (bfs.size() != order) {
    throw NotAGroup("right action does not generate the group", {});
  }
  std::vector<elem_t> mult(order * order);
  for (std::size_t i = 0; i < order; ++i) {
    elem_t* rowp = mult.data() + i * order;
    rowp[kIdentity] = static_cast<elem_t>(i);
    for (std::size_t t = 1; t < order; ++t) {
      elem_t j = bfs[t];
      rowp[j] = right[via[j]][rowp[parent[j]]];
    }
  }
  return GroupTable(order, std::move(mult));
}

// Cayley-table text format: first line N, then N rows of N indices.
// Blank lines and '#' comments are ignored.
inline GroupTable read_cayley(std::istream& in) {
  std::vector<std::uint64_t> numbers;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      std::uint64_t v = 0;
      try {
        v = std::stoull(tok, &used);
      } catch (std::exception const&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw ParseError(numbers.size(), "non-negative integer, got '" + tok + "'");
      }
      numbers.push_back(v);
    }
  }
  if (numbers.empty()) {
    throw ParseError(0, "group order");
  }
  std::uint64_t const n = numbers[0];
  if (n == 0 || numbers.size() != 1 + n * n) {
    throw ParseError(numbers.size(), std::to_string(n * n) + " table entries");
  }
  std::vector<std::vector<elem_t>> rows(n, std::vector<elem_t>(n));
  for (std::uint64_t r = 0; r < n; ++r) {
    for (std::uint64_t c = 0; c < n; ++c) {
      std::uint64_t v = numbers[1 + r * n + c];
      rows[r][c] = v >= n ? static_cast<elem_t>(n) : static_cast<elem_t>(v);
    }
  }
  return GroupTable::from_rows(rows);
}

inline void write_cayley(std::ostream& out, GroupTable const& g) {
  out << g.order() << '\n';
  for (elem_t r = 0; r < g.order(); ++r) {
    auto row = g.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? " " : "") << row[c];
    }
    out << '\n';
  }
}

}  // namespace tensorsq

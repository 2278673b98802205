#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tensorsq/group_ops.hpp"
#include "tensorsq/presentation.hpp"

namespace tensorsq {

inline constexpr std::uint64_t kDefaultMaxCosets = 2'000'000;

using coset_t = std::uint32_t;
inline constexpr coset_t kNoCoset = ~coset_t{0};

// Column of a letter: generator i acts in column 2i, its inverse in 2i+1.
inline std::uint32_t letter_column(Letter l) {
  auto g = static_cast<std::uint32_t>(l > 0 ? l : -l) - 1;
  return 2 * g + (l < 0 ? 1u : 0u);
}

enum class EnumStatus { complete, capped };

// Result of a coset enumeration. Coset 0 is the subgroup itself; indices are
// dense. Schreier representatives are stored as parent pointers from a BFS
// over the finished table, so `schreier_word(c)` is a shortest word taking
// coset 0 to c.
struct CosetTable {
  std::size_t num_generators = 0;
  std::size_t num_cosets = 0;
  std::vector<coset_t> action;  // num_cosets x (2 * num_generators)
  std::vector<coset_t> parent;
  std::vector<std::uint32_t> parent_column;
  std::vector<coset_t> bfs_order;
  EnumStatus status = EnumStatus::complete;
  std::uint64_t live_at_cap = 0;  // only meaningful when capped

  std::size_t columns() const noexcept { return 2 * num_generators; }

  coset_t act(coset_t c, std::uint32_t column) const noexcept {
    return action[c * columns() + column];
  }

  coset_t trace(coset_t c, Word const& w) const noexcept {
    for (Letter l : w) {
      c = act(c, letter_column(l));
    }
    return c;
  }

  // Word taking coset 0 to c.
  Word schreier_word(coset_t c) const {
    Word w;
    while (c != 0) {
      std::uint32_t col = parent_column[c];
      auto g = static_cast<Letter>(col / 2 + 1);
      w.push_back(col % 2 == 0 ? g : -g);
      c = parent[c];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  // Columns of the letter sequence of schreier_word(c), without building a
  // Word.
  std::vector<std::uint32_t> schreier_columns(coset_t c) const {
    std::vector<std::uint32_t> cols;
    while (c != 0) {
      cols.push_back(parent_column[c]);
      c = parent[c];
    }
    std::reverse(cols.begin(), cols.end());
    return cols;
  }

  coset_t trace_columns(coset_t c,
                        std::vector<std::uint32_t> const& cols) const noexcept {
    for (std::uint32_t col : cols) {
      c = act(c, col);
    }
    return c;
  }
};

namespace detail {

// HLT coset enumeration with lookahead. When the live count would exceed
// the budget, every relator is scanned at every live coset without making
// definitions; if that does not free enough room the run is reported as
// capped. Coincidences are resolved with a union-find over cosets.
class ToddCoxeter {
 public:
  ToddCoxeter(Presentation const& pres, std::vector<Word> const& subgroup,
              std::uint64_t max_cosets)
      : cols_(2 * pres.num_generators()), max_(max_cosets) {
    for (Word const& r : pres.relators) {
      rels_.push_back(to_columns(free_reduce(r)));
    }
    for (Word const& s : subgroup) {
      subgens_.push_back(to_columns(free_reduce(s)));
    }
    for (auto const& r : rels_) {
      reserve_ += r.size();
    }
    reserve_ += cols_ + 1;
  }

  CosetTable run() {
    new_coset();
    for (auto const& s : subgens_) {
      scan_and_fill(0, s);
    }
    for (coset_t a = 0; a < next_; ++a) {
      if (!alive(a)) {
        continue;
      }
      if (live_ + reserve_ > max_) {
        lookahead();
        a = compact(a);
        if (a >= next_) {
          break;
        }
        if (live_ + reserve_ > max_) {
          CosetTable t;
          t.status = EnumStatus::capped;
          t.live_at_cap = live_;
          return t;
        }
      }
      for (auto const& r : rels_) {
        scan_and_fill(a, r);
        if (!alive(a)) {
          break;
        }
      }
      if (!alive(a)) {
        continue;
      }
      for (std::uint32_t x = 0; x < cols_; ++x) {
        if (tab_[a * cols_ + x] == kNoCoset) {
          define(a, x);
        }
      }
    }
    compact(0);
    return finish();
  }

 private:
  static std::vector<std::uint32_t> to_columns(Word const& w) {
    std::vector<std::uint32_t> out;
    out.reserve(w.size());
    for (Letter l : w) {
      out.push_back(letter_column(l));
    }
    return out;
  }

  bool alive(coset_t c) const noexcept { return uf_[c] == c; }

  coset_t& entry(coset_t c, std::uint32_t x) noexcept { return tab_[c * cols_ + x]; }

  coset_t new_coset() {
    coset_t c = next_++;
    tab_.resize(static_cast<std::size_t>(next_) * cols_, kNoCoset);
    uf_.push_back(c);
    ++live_;
    return c;
  }

  void define(coset_t a, std::uint32_t x) {
    coset_t b = new_coset();
    entry(a, x) = b;
    entry(b, x ^ 1u) = a;
  }

  coset_t rep(coset_t c) {
    coset_t r = c;
    while (uf_[r] != r) {
      r = uf_[r];
    }
    while (uf_[c] != r) {
      coset_t n = uf_[c];
      uf_[c] = r;
      c = n;
    }
    return r;
  }

  void merge(coset_t k, coset_t l) {
    coset_t a = rep(k), b = rep(l);
    if (a == b) {
      return;
    }
    if (a > b) {
      std::swap(a, b);
    }
    uf_[b] = a;
    --live_;
    queue_.push_back(b);
  }

  void coincidence(coset_t a, coset_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      coset_t g = queue_[i];
      for (std::uint32_t x = 0; x < cols_; ++x) {
        coset_t d = entry(g, x);
        if (d == kNoCoset) {
          continue;
        }
        entry(d, x ^ 1u) = kNoCoset;
        coset_t mu = rep(g), nu = rep(d);
        if (entry(mu, x) != kNoCoset) {
          merge(nu, entry(mu, x));
        } else if (entry(nu, x ^ 1u) != kNoCoset) {
          merge(mu, entry(nu, x ^ 1u));
        } else {
          entry(mu, x) = nu;
          entry(nu, x ^ 1u) = mu;
        }
      }
    }
  }

  // Returns false only when `define` is off and the gap is wider than one.
  void scan_and_fill(coset_t a, std::vector<std::uint32_t> const& w,
                     bool define_new = true) {
    if (w.empty()) {
      return;
    }
    coset_t f = a, b = a;
    std::size_t i = 0;
    std::size_t j = w.size();  // one past the last unscanned letter
    while (true) {
      while (i < j && entry(f, w[i]) != kNoCoset) {
        f = entry(f, w[i]);
        ++i;
      }
      if (i == j) {
        if (f != b) {
          coincidence(f, b);
        }
        return;
      }
      while (j > i && entry(b, w[j - 1] ^ 1u) != kNoCoset) {
        b = entry(b, w[j - 1] ^ 1u);
        --j;
      }
      if (i == j) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        entry(f, w[i]) = b;
        entry(b, w[i] ^ 1u) = f;
        return;
      }
      if (!define_new) {
        return;
      }
      define(f, w[i]);
    }
  }

  void lookahead() {
    for (coset_t c = 0; c < next_; ++c) {
      for (auto const& r : rels_) {
        if (!alive(c)) {
          break;
        }
        scan_and_fill(c, r, false);
      }
    }
  }

  // Renumbers live cosets densely, preserving order. Returns the new index
  // of the first live coset at or after `pos`.
  coset_t compact(coset_t pos) {
    std::vector<coset_t> newid(next_, kNoCoset);
    coset_t n = 0;
    coset_t newpos = kNoCoset;
    for (coset_t c = 0; c < next_; ++c) {
      if (alive(c)) {
        if (c >= pos && newpos == kNoCoset) {
          newpos = n;
        }
        newid[c] = n++;
      }
    }
    if (n == next_) {
      return pos;
    }
    for (coset_t c = 0; c < next_; ++c) {
      if (newid[c] == kNoCoset) {
        continue;
      }
      for (std::uint32_t x = 0; x < cols_; ++x) {
        coset_t d = tab_[c * cols_ + x];
        tab_[newid[c] * cols_ + x] = d == kNoCoset ? kNoCoset : newid[d];
      }
    }
    next_ = n;
    tab_.resize(static_cast<std::size_t>(n) * cols_);
    tab_.shrink_to_fit();
    uf_.resize(n);
    for (coset_t c = 0; c < n; ++c) {
      uf_[c] = c;
    }
    live_ = n;
    return newpos == kNoCoset ? n : newpos;
  }

  CosetTable finish() {
    CosetTable t;
    t.num_generators = cols_ / 2;
    t.num_cosets = next_;
    t.action = std::move(tab_);
    t.parent.assign(next_, 0);
    t.parent_column.assign(next_, 0);
    std::vector<bool> seen(next_, false);
    seen[0] = true;
    t.bfs_order.push_back(0);
    for (std::size_t i = 0; i < t.bfs_order.size(); ++i) {
      coset_t c = t.bfs_order[i];
      for (std::uint32_t x = 0; x < cols_; ++x) {
        coset_t d = t.action[c * cols_ + x];
        if (!seen[d]) {
          seen[d] = true;
          t.parent[d] = c;
          t.parent_column[d] = x;
          t.bfs_order.push_back(d);
        }
      }
    }
    return t;
  }

  std::uint32_t cols_;
  std::uint64_t max_;
  std::uint64_t reserve_ = 0;
  std::vector<std::vector<std::uint32_t>> rels_;
  std::vector<std::vector<std::uint32_t>> subgens_;
  std::vector<coset_t> tab_;
  std::vector<coset_t> uf_;
  std::vector<coset_t> queue_;
  coset_t next_ = 0;
  std::uint64_t live_ = 0;
};

}  // namespace detail

// Enumerates the cosets of the subgroup generated by `subgroup_gens`.
// Deterministic for fixed input. Returns status == capped (with an empty
// table) when the live coset count would exceed `max_cosets`.
inline CosetTable coset_enumerate(Presentation const& pres,
                                  std::vector<Word> const& subgroup_gens,
                                  std::uint64_t max_cosets = kDefaultMaxCosets) {
  if (max_cosets < 1) {
    throw Precondition("InvalidArgument", "max_cosets must be at least 1");
  }
  bool const trivial_subgroup =
      std::all_of(subgroup_gens.begin(), subgroup_gens.end(),
                  [](Word const& w) { return free_reduce(w).empty(); });
  bool const no_relators =
      std::all_of(pres.relators.begin(), pres.relators.end(),
                  [](Word const& w) { return free_reduce(w).empty(); });
  if (pres.num_generators() > 0 && no_relators && trivial_subgroup) {
    throw FreeGroupSuspected();
  }
  if (pres.num_generators() == 0) {
    CosetTable t;
    t.num_cosets = 1;
    t.parent = {0};
    t.parent_column = {0};
    t.bfs_order = {0};
    return t;
  }
  return detail::ToddCoxeter(pres, subgroup_gens, max_cosets).run();
}

// Throws Capped unless the table is complete.
inline CosetTable const& require_complete(CosetTable const& t,
                                          std::uint64_t max_cosets) {
  if (t.status != EnumStatus::complete) {
    throw Capped(max_cosets, t.live_at_cap);
  }
  return t;
}

// The regular representation of a finitely presented group: its coset table
// over the trivial subgroup. The element of coset c is the one represented
// by schreier_word(c); right multiplication by a word traces it.
class RegularRep {
 public:
  explicit RegularRep(CosetTable table) : table_(std::move(table)) {}

  static RegularRep enumerate(Presentation const& pres,
                              std::uint64_t max_cosets = kDefaultMaxCosets) {
    return RegularRep(
        require_complete(coset_enumerate(pres, {}, max_cosets), max_cosets));
  }

  std::size_t order() const noexcept { return table_.num_cosets; }
  CosetTable const& table() const noexcept { return table_; }

  coset_t element_of(Word const& w) const noexcept { return table_.trace(0, w); }

  coset_t mul(coset_t a, coset_t b) const {
    return table_.trace_columns(a, table_.schreier_columns(b));
  }

 private:
  CosetTable table_;
};

struct EmbeddedSubgroup {
  GroupTable group;
  std::vector<coset_t> embedding;  // local index -> coset of the ambient rep
};

// Closes the seed elements under multiplication (and, with normal_closure,
// under conjugation by the ambient generators) and returns the subgroup's
// own table. Throws CapExceeded when the subgroup outgrows `cap`.
inline EmbeddedSubgroup subgroup_as_table(RegularRep const& rep,
                                          std::vector<Word> const& seed_words,
                                          bool normal_closure,
                                          std::size_t cap = kDefaultTableCap) {
  CosetTable const& t = rep.table();
  std::vector<coset_t> local(t.num_cosets, kNoCoset);
  std::vector<coset_t> members;
  std::vector<std::vector<std::uint32_t>> gen_cols;

  auto rebuild = [&]() {
    for (coset_t m : members) {
      local[m] = kNoCoset;
    }
    members.assign(1, 0);
    local[0] = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (auto const& g : gen_cols) {
        coset_t y = t.trace_columns(members[i], g);
        if (local[y] == kNoCoset) {
          local[y] = static_cast<coset_t>(members.size());
          members.push_back(y);
          if (members.size() > cap) {
            throw CapExceeded(members.size(), cap);
          }
        }
      }
    }
  };
  auto absorb = [&](coset_t c) {
    if (local[c] == kNoCoset) {
      gen_cols.push_back(t.schreier_columns(c));
      rebuild();
    }
  };

  rebuild();
  for (Word const& w : seed_words) {
    absorb(t.trace(0, w));
  }
  if (normal_closure) {
    for (std::size_t i = 0; i < gen_cols.size(); ++i) {
      for (std::uint32_t x = 0; x < t.columns(); ++x) {
        coset_t c = t.act(0, x);
        c = t.trace_columns(c, gen_cols[i]);
        c = t.act(c, x ^ 1u);
        absorb(c);
      }
    }
  }

  std::vector<std::vector<elem_t>> right(gen_cols.size(),
                                         std::vector<elem_t>(members.size()));
  for (std::size_t k = 0; k < gen_cols.size(); ++k) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      right[k][i] = local[t.trace_columns(members[i], gen_cols[k])];
    }
  }
  return EmbeddedSubgroup{table_from_right_action(members.size(), right),
                          std::move(members)};
}

// Table of a finitely presented group via its regular representation.
inline GroupTable table_from_presentation(
    Presentation const& pres, std::uint64_t max_cosets = kDefaultMaxCosets,
    std::size_t cap = kDefaultTableCap) {
  RegularRep rep = RegularRep::enumerate(pres, max_cosets);
  if (rep.order() > cap) {
    throw SizeLimit(rep.order(), cap);
  }
  CosetTable const& t = rep.table();
  std::vector<std::vector<elem_t>> right(t.num_generators,
                                         std::vector<elem_t>(t.num_cosets));
  for (std::size_t k = 0; k < t.num_generators; ++k) {
    for (coset_t c = 0; c < t.num_cosets; ++c) {
      right[k][c] = t.act(c, static_cast<std::uint32_t>(2 * k));
    }
  }
  return table_from_right_action(t.num_cosets, right);
}

namespace detail {

// Smallest rotation of w or its inverse, after cyclic reduction.
inline Word canonical_relator(Word w) {
  w = free_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  Word best = w;
  for (Word const& v : {w, inverse(w)}) {
    for (std::size_t r = 0; r < v.size(); ++r) {
      Word rot(v.begin() + static_cast<std::ptrdiff_t>(r), v.end());
      rot.insert(rot.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(r));
      best = std::min(best, rot);
    }
  }
  return best;
}

inline std::string generator_name(std::size_t i) {
  if (i < 26) {
    return std::string(1, static_cast<char>('a' + i));
  }
  return "g" + std::to_string(i);
}

}  // namespace detail

struct TablePresentation {
  Presentation presentation;
  std::vector<elem_t> generators;  // element realizing generator i
  CayleyWords words;               // BFS words over those generators
};

// Schreier-tree presentation: greedy generators, one relator
// w_u * s * w_{us}^-1 per non-tree edge of the Cayley graph.
inline TablePresentation presentation_from_table(
    GroupTable const& g, std::size_t cap = kDefaultTableCap) {
  if (g.order() > cap) {
    throw SizeLimit(g.order(), cap);
  }
  TablePresentation out;
  out.generators = greedy_generators(g);
  out.words = cayley_words(g, out.generators);
  auto word_of = [&](elem_t x) {
    Word w;
    for (std::uint32_t l : out.words.word(x)) {
      w.push_back(l % 2 == 0 ? gen_letter(l / 2) : inv_letter(l / 2));
    }
    return w;
  };
  std::vector<Word> elem_words(g.order());
  for (elem_t x = 0; x < g.order(); ++x) {
    elem_words[x] = word_of(x);
  }
  std::set<Word> seen;
  for (std::size_t k = 0; k < out.generators.size(); ++k) {
    out.presentation.generator_names.push_back(detail::generator_name(k));
  }
  for (elem_t u : out.words.bfs_order) {
    for (std::size_t k = 0; k < out.generators.size(); ++k) {
      elem_t v = g.mul(u, out.generators[k]);
      Word r = detail::canonical_relator(
          concat({elem_words[u], {gen_letter(k)}, inverse(elem_words[v])}));
      if (!r.empty() && seen.insert(r).second) {
        out.presentation.relators.push_back(r);
      }
    }
  }
  return out;
}

}  // namespace tensorsq

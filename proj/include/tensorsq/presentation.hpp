#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "tensorsq/error.hpp"

namespace tensorsq {

// A letter is a signed generator index: +(i+1) is generator i and -(i+1)
// its inverse.
using Letter = std::int32_t;
using Word = std::vector<Letter>;

inline Letter gen_letter(std::size_t i) { return static_cast<Letter>(i + 1); }
inline Letter inv_letter(std::size_t i) { return -static_cast<Letter>(i + 1); }

inline Word inverse(Word const& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) {
    l = -l;
  }
  return out;
}

inline Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (Word const& p : parts) {
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

inline Word power(Word const& w, std::int64_t k) {
  Word base = k < 0 ? inverse(w) : w;
  Word out;
  for (std::int64_t i = 0; i < std::llabs(k); ++i) {
    out.insert(out.end(), base.begin(), base.end());
  }
  return out;
}

// Cancels adjacent x x^-1 pairs.
inline Word free_reduce(Word const& w) {
  Word out;
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

// [u, v] = u v u^-1 v^-1
inline Word commutator(Word const& u, Word const& v) {
  return concat({u, v, inverse(u), inverse(v)});
}

struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;

  std::size_t num_generators() const noexcept { return generator_names.size(); }

  // Freely reduces every relator and drops empty ones.
  void normalize() {
    std::vector<Word> kept;
    for (Word const& r : relators) {
      Word w = free_reduce(r);
      if (!w.empty()) {
        kept.push_back(std::move(w));
      }
    }
    relators = std::move(kept);
  }
};

inline std::string word_to_string(Word const& w,
                                  std::vector<std::string> const& names) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) {
      ++j;
    }
    if (!out.empty()) {
      out += "*";
    }
    out += names[static_cast<std::size_t>(std::abs(w[i])) - 1];
    auto run = static_cast<long long>(j - i);
    if (w[i] < 0) {
      run = -run;
    }
    if (run != 1) {
      out += "^" + std::to_string(run);
    }
    i = j;
  }
  return out;
}

inline std::string to_string(Presentation const& p) {
  std::string out = "gens:";
  for (auto const& n : p.generator_names) {
    out += " " + n;
  }
  out += " ; rels:";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    out += (i ? ", " : " ") + word_to_string(p.relators[i], p.generator_names);
  }
  return out;
}

namespace detail {

class PresentationParser {
 public:
  explicit PresentationParser(std::string_view s) : s_(s) {}

  Presentation parse() {
    Presentation p;
    expect_keyword("gens");
    expect(':');
    while (true) {
      skip_ws();
      if (peek() == ';' || at_end()) {
        break;
      }
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      std::string name = identifier();
      for (auto const& n : p.generator_names) {
        if (n == name) {
          throw ParseError(pos_, "distinct generator name");
        }
      }
      p.generator_names.push_back(name);
    }
    names_ = &p.generator_names;
    skip_ws();
    if (at_end()) {
      return p;
    }
    expect(';');
    expect_keyword("rels");
    expect(':');
    skip_ws();
    while (!at_end()) {
      Word lhs = expr();
      skip_ws();
      if (peek() == '=') {
        ++pos_;
        Word rhs = expr();
        lhs = concat({lhs, inverse(rhs)});
      }
      p.relators.push_back(lhs);
      skip_ws();
      if (at_end()) {
        break;
      }
      expect(',');
      skip_ws();
    }
    p.normalize();
    return p;
  }

 private:
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      throw ParseError(pos_, std::string("'") + c + "'");
    }
    ++pos_;
  }
  void expect_keyword(std::string_view kw) {
    skip_ws();
    if (s_.substr(pos_, kw.size()) != kw) {
      throw ParseError(pos_, "'" + std::string(kw) + "'");
    }
    pos_ += kw.size();
  }
  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
      throw ParseError(pos_, "generator name");
    }
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') {
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      throw ParseError(pos_, "integer exponent");
    }
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }

  Word expr() {
    Word out = term();
    while (true) {
      skip_ws();
      char c = peek();
      if (c == '*') {
        ++pos_;
        Word t = term();
        out.insert(out.end(), t.begin(), t.end());
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
                 c == '(') {
        Word t = term();
        out.insert(out.end(), t.begin(), t.end());
      } else {
        return out;
      }
    }
  }

  Word term() {
    Word base = atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      return power(base, integer());
    }
    return base;
  }

  Word atom() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      Word w = expr();
      expect(')');
      return w;
    }
    if (peek() == '1') {
      ++pos_;
      return {};
    }
    std::size_t at = pos_;
    std::string name = identifier();
    for (std::size_t i = 0; i < names_->size(); ++i) {
      if ((*names_)[i] == name) {
        return {gen_letter(i)};
      }
    }
    throw ParseError(at, "declared generator, got '" + name + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> const* names_ = nullptr;
};

}  // namespace detail

// Parses `gens: a b ; rels: a^4, b^2=a^2, b*a*b^-1=a^-1`. A relation u=v
// becomes the relator u v^-1; '*' is optional between factors.
inline Presentation parse_presentation(std::string_view text) {
  return detail::PresentationParser(text).parse();
}

}  // namespace tensorsq

// Textual form grammar.
//
//   lattice  := term ( "++" term )*
//   term     := "<" [ int ( "," int )* ] ">"          diagonal form
//             | "[" int "," int "," int "]"            ax^2 + 2bxy + cy^2
//             | "gram" "[" row ( "," row )* "]"        general Gram matrix
//   row      := "[" int ( "," int )* "]"
//
// Whitespace is ignored everywhere. format_form() splits the Gram matrix into
// its consecutive orthogonal blocks and prints each in the most compact shape,
// so parse_form(format_form(L)) == L holds entry for entry.

#ifndef ESCALATOR_GRAMMAR_HPP
#define ESCALATOR_GRAMMAR_HPP

#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "escalator/forms.hpp"

namespace escalator {

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error("syntax error at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  [[nodiscard]] std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class FormParser {
 public:
  explicit FormParser(std::string_view text) : s_(text) {}

  GramLattice parse() {
    GramLattice acc = term();
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      if (s_.compare(pos_, 2, "++") != 0) fail("expected '++' or end of input");
      pos_ += 2;
      acc = orthogonal_sum(acc, term());
    }
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }

  Int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string_view tok = s_.substr(start, pos_ - start);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    Int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      pos_ = start;
      fail("expected integer");
    }
    return v;
  }

  std::vector<Int> int_list(char close) {
    std::vector<Int> out;
    if (accept(close)) return out;
    do {
      out.push_back(integer());
    } while (accept(','));
    expect(close);
    return out;
  }

  GramLattice term() {
    skip_ws();
    std::size_t start = pos_;
    try {
      if (accept('<')) {
        auto entries = int_list('>');
        return diagonal(entries);
      }
      if (accept('[')) {
        auto v = int_list(']');
        if (v.size() != 3) {
          pos_ = start;
          fail("binary form needs exactly three coefficients");
        }
        return GramLattice::from_binary({v[0], v[1], v[2]});
      }
      if (s_.compare(pos_, 4, "gram") == 0) {
        pos_ += 4;
        expect('[');
        std::vector<std::vector<Int>> rows;
        if (!accept(']')) {
          do {
            expect('[');
            rows.push_back(int_list(']'));
          } while (accept(','));
          expect(']');
        }
        return GramLattice::from_rows(rows);
      }
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      throw SyntaxError(e.what(), start);
    }
    fail("expected '<', '[' or 'gram'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string join_ints(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace detail

inline GramLattice parse_form(std::string_view text) { return detail::FormParser(text).parse(); }

/// Parses a binary form; accepts any rank-2 lattice expression.
inline BinaryForm parse_binary(std::string_view text) {
  GramLattice l = parse_form(text);
  if (l.rank() != 2) throw SyntaxError("expected a rank-2 form", 0);
  return {l.at(0, 0), l.at(0, 1), l.at(1, 1)};
}

inline std::string format_form(const GramLattice& l) {
  const std::size_t n = l.rank();
  if (n == 0) return "<>";
  std::vector<std::string> parts;
  std::vector<Int> pending_diag;
  auto flush = [&] {
    if (!pending_diag.empty()) parts.push_back("<" + detail::join_ints(pending_diag) + ">");
    pending_diag.clear();
  };
  std::size_t i = 0;
  while (i < n) {
    // Smallest e > i such that rows [i, e) have no entries beyond column e.
    std::size_t e = i + 1;
    for (std::size_t r = i; r < e; ++r)
      for (std::size_t s = e; s < n; ++s)
        if (l.at(r, s) != 0) e = s + 1;
    const std::size_t size = e - i;
    if (size == 1) {
      pending_diag.push_back(l.at(i, i));
    } else {
      flush();
      if (size == 2) {
        parts.push_back("[" + std::to_string(l.at(i, i)) + "," + std::to_string(l.at(i, i + 1)) +
                        "," + std::to_string(l.at(i + 1, i + 1)) + "]");
      } else {
        std::string g = "gram[";
        for (std::size_t r = i; r < e; ++r) {
          if (r != i) g += ',';
          std::vector<Int> row;
          for (std::size_t s = i; s < e; ++s) row.push_back(l.at(r, s));
          g += "[" + detail::join_ints(row) + "]";
        }
        parts.push_back(g + "]");
      }
    }
    i = e;
  }
  flush();
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += " ++ ";
    out += parts[k];
  }
  return out;
}

inline std::string format_form(const BinaryForm& f) {
  if (f.b == 0) return "<" + std::to_string(f.a) + "," + std::to_string(f.c) + ">";
  return "[" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + "]";
}

}  // namespace escalator

#endif  // ESCALATOR_GRAMMAR_HPP

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lctrs {

struct Sexp {
  bool atom = false;
  bool quoted = false;  // |...| symbol
  std::string text;     // atom text, quotes stripped
  std::vector<Sexp> items;
  std::size_t line = 0;

  bool is_atom(std::string_view s) const { return atom && !quoted && text == s; }
  bool is_list() const { return !atom; }
  std::size_t size() const { return items.size(); }
  const Sexp& operator[](std::size_t i) const { return items[i]; }
  std::string to_string() const;
};

/// Reads all top-level s-expressions. Line comments start with `;`; their
/// text (without the `;`) is appended to `comments` when given. Throws
/// ParseError on unbalanced input.
std::vector<Sexp> read_sexps(std::string_view text, std::vector<std::string>* comments = nullptr);

}  // namespace lctrs

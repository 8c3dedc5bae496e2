#include "lctrs/sexp.hpp"

#include "lctrs/error.hpp"

#include <cctype>

namespace lctrs {

std::string Sexp::to_string() const {
  if (atom) return quoted ? "|" + text + "|" : text;
  std::string s = "(";
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? " " : "") + items[i].to_string();
  return s + ")";
}

namespace {

class Reader {
 public:
  Reader(std::string_view t, std::vector<std::string>* c) : text_(t), comments_(c) {}

  std::vector<Sexp> all() {
    std::vector<Sexp> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(one());
      skip();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_) + ": " + msg);
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        if (comments_) comments_->emplace_back(text_.substr(pos_ + 1, end - pos_ - 1));
        pos_ = end;
      } else {
        break;
      }
    }
  }

  Sexp one() {
    Sexp s;
    s.line = line_;
    char c = text_[pos_];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      ++pos_;
      skip();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        s.items.push_back(one());
        skip();
      }
      if (pos_ >= text_.size()) fail("missing ')' for list opened on line " + std::to_string(s.line));
      ++pos_;
      return s;
    }
    s.atom = true;
    if (c == '|') {
      std::size_t end = text_.find('|', pos_ + 1);
      if (end == std::string_view::npos) fail("unterminated |symbol|");
      s.quoted = true;
      s.text = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
      for (char ch : s.text) line_ += ch == '\n';
      pos_ = end + 1;
      return s;
    }
    if (c == '"') {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && text_[end] != '"') ++end;
      if (end >= text_.size()) fail("unterminated string");
      s.text = std::string(text_.substr(pos_, end - pos_ + 1));
      pos_ = end + 1;
      return s;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '|') break;
      ++pos_;
    }
    s.text = std::string(text_.substr(start, pos_ - start));
    return s;
  }

  std::string_view text_;
  std::vector<std::string>* comments_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

std::vector<Sexp> read_sexps(std::string_view text, std::vector<std::string>* comments) {
  return Reader(text, comments).all();
}

}  // namespace lctrs

#pragma once

#include "lctrs/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lctrs {

enum class Answer { Yes, No, Maybe };
/// "YES", "NO" or "MAYBE".
const char* to_string(Answer a);

/// A ground peak t ←* s →* u with distinct normal forms t and u.
struct Counterexample {
  Term source;
  Term left;
  Term right;
};

struct Verdict {
  Answer answer = Answer::Maybe;
  std::string method;
  std::vector<std::string> proof;    // one line per entry; indentation is part of the text
  std::vector<std::string> reasons;  // why a method gave up
  double seconds = 0;
  std::optional<Counterexample> counterexample;

  /// The verdict followed by the proof or the reasons, one per line.
  std::string to_text() const;
};

}  // namespace lctrs

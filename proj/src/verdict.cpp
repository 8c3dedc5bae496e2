#include "lctrs/verdict.hpp"

namespace lctrs {

const char* to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "YES";
    case Answer::No: return "NO";
    case Answer::Maybe: return "MAYBE";
  }
  return "MAYBE";
}

std::string Verdict::to_text() const {
  std::string s = to_string(answer);
  s += "\n";
  if (!method.empty()) s += "method: " + method + "\n";
  for (const std::string& l : answer == Answer::Maybe ? reasons : proof) s += l + "\n";
  return s;
}

}  // namespace lctrs

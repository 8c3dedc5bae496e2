#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lctrs::testing {

std::string fixture_path(const std::string& name) { return std::string(LCTRS_FIXTURE_DIR) + "/" + name; }

std::string fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lctrs::testing

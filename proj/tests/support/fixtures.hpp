#pragma once

#include <string>

namespace lctrs::testing {

/// Contents of tests/fixtures/<name>.
std::string fixture(const std::string& name);
std::string fixture_path(const std::string& name);

}  // namespace lctrs::testing

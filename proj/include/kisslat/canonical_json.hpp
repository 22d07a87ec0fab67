#pragma once

#include <json.hpp>
#include <string>

namespace kisslat {

// Sorted keys, two-space indent, scalar arrays on one line, floats at 12
// significant digits. Ends with a newline.
std::string canonical_dump(const nlohmann::json& value);

}  // namespace kisslat

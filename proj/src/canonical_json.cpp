#include "kisslat/canonical_json.hpp"

#include <algorithm>
#include <cstdio>

namespace kisslat {

namespace {

using nlohmann::json;

void write_canonical(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map storage: keys already sorted
        if (!first) out += ",\n";
        first = false;
        out += pad + json(key).dump() + ": ";
        write_canonical(value, out, indent + 2);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (j.empty() || flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write_canonical(j[i], out, indent + 2);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_canonical(j[i], out, indent + 2);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& value) {
  std::string out;
  write_canonical(value, out, 0);
  return out + "\n";
}

}  // namespace kisslat

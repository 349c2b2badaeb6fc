#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wbrst {

using ParamId = std::uint16_t;

/// Process-wide registry of parameter names. The first ids are fixed to
/// c, g1, g2 so that exponent vectors are stable across a session; other
/// names are appended on first use. Safe to call from several threads.
class ParamRegistry {
 public:
  static ParamId id(const std::string& name);
  static bool known(const std::string& name);
  static std::string name(ParamId id);
  static std::vector<std::string> names();
};

}  // namespace wbrst

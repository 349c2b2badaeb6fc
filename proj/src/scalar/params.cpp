#include "wbrst/scalar/params.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace wbrst {
namespace {

struct Registry {
  std::mutex mu;
  std::vector<std::string> names{"c", "g1", "g2"};
  std::unordered_map<std::string, ParamId> ids{{"c", 0}, {"g1", 1}, {"g2", 2}};
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

ParamId ParamRegistry::id(const std::string& name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  auto it = r.ids.find(name);
  if (it != r.ids.end()) return it->second;
  if (r.names.size() >= 0xffff) throw std::length_error("too many parameters");
  auto id = static_cast<ParamId>(r.names.size());
  r.names.push_back(name);
  r.ids.emplace(name, id);
  return id;
}

bool ParamRegistry::known(const std::string& name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return r.ids.count(name) != 0;
}

std::string ParamRegistry::name(ParamId id) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return r.names.at(id);
}

std::vector<std::string> ParamRegistry::names() {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return r.names;
}

}  // namespace wbrst

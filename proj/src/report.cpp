#include "radoloc/report.hpp"

namespace radoloc {

void Report::absorb(const Report& other) {
  for (const auto& v : other.violations) violations.push_back(other.name + ": " + v);
  for (const auto& n : other.notes) notes.push_back(other.name + ": " + n);
}

std::string Report::render() const {
  std::string out = (passed() ? "[PASS] " : "[FAIL] ") + name + "\n";
  for (const auto& v : violations) out += "  violation: " + v + "\n";
  for (const auto& n : notes) out += "  note: " + n + "\n";
  return out;
}

}  // namespace radoloc

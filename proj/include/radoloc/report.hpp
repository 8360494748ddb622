#pragma once

#include <string>
#include <vector>

namespace radoloc {

// Outcome of a verifier. Violations fail the report; notes are informational.
struct Report {
  std::string name;
  std::vector<std::string> violations{};
  std::vector<std::string> notes{};

  bool passed() const { return violations.empty(); }
  void fail(std::string what) { violations.push_back(std::move(what)); }
  void note(std::string what) { notes.push_back(std::move(what)); }
  // Appends `other`'s lines, each prefixed with other.name.
  void absorb(const Report& other);
  // One "[PASS] name" / "[FAIL] name" header, then indented violations and notes.
  std::string render() const;
};

}  // namespace radoloc

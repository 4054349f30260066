#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homlie/exactlin.hpp"

namespace homlie {

/// Basis indices at which an identity failed, and the nonzero defect there.
struct Witness {
  std::vector<std::size_t> indices;
  Vector defect;
  std::string note;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::optional<Witness> witness;
  // Informational entries (is_lie, is_perfect, ...) describe the algebra and
  // never make a report fail.
  bool informational = false;
};

inline CheckResult passed_check(std::string name, bool informational = false) {
  return {std::move(name), true, std::nullopt, informational};
}

inline CheckResult failed_check(std::string name, Witness w, bool informational = false) {
  return {std::move(name), false, std::move(w), informational};
}

struct AlgebraReport {
  std::vector<CheckResult> checks;
  std::map<std::string, std::size_t> quantities;

  void add(CheckResult c) { checks.push_back(std::move(c)); }

  void merge(const AlgebraReport& other, const std::string& prefix = "") {
    for (auto c : other.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
    for (const auto& [k, v] : other.quantities) quantities[prefix + k] = v;
  }

  const CheckResult* find(const std::string& name) const {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
  }

  /// True iff the named entry exists and passed.
  bool holds(const std::string& name) const {
    const auto* c = find(name);
    return c != nullptr && c->passed;
  }

  /// All non-informational checks passed.
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.informational || c.passed; });
  }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.passed && !c.informational) out.push_back(c.name);
    return out;
  }
};

}  // namespace homlie

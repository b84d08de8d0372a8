#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "coloring.hpp"
#include "error.hpp"

namespace signcover {

/// Non-negative rational kept in lowest terms.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction of(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
  }

  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// `value <= bound`, compared by cross-multiplication.
struct BoundCheck {
  std::string name;
  std::int64_t value = 0;
  Fraction bound;

  bool holds() const { return value * bound.den <= bound.num; }
};

/// Audit record of one cover construction: which case of the argument ran,
/// which objects it chose, and every bound it asserted along the way.
struct BuildTrace {
  std::string case_label;
  std::optional<EdgeColoring> coloring;
  std::vector<std::string> notes;
  std::vector<BoundCheck> checks;
  std::int64_t length = 0;

  void note(std::string line) { notes.push_back(std::move(line)); }

  std::vector<BoundCheck> checks_named(const std::string& name) const {
    std::vector<BoundCheck> out;
    for (const auto& c : checks) {
      if (c.name == name) out.push_back(c);
    }
    return out;
  }
};

class BoundViolation : public Error {
 public:
  BoundViolation(const std::string& what, BuildTrace trace)
      : Error(ErrorCode::BoundViolation, what), trace_(std::move(trace)) {}

  const BuildTrace& trace() const noexcept { return trace_; }

 private:
  BuildTrace trace_;
};

/// Records the check on the trace and throws BoundViolation when it fails.
inline void assert_bound(BuildTrace& trace, std::string name, std::int64_t value, Fraction bound) {
  trace.checks.push_back({std::move(name), value, bound});
  const BoundCheck& check = trace.checks.back();
  if (!check.holds()) {
    throw BoundViolation(check.name + ": " + std::to_string(value) + " exceeds " + bound.str(), trace);
  }
}

}  // namespace signcover

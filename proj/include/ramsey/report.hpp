#pragma once

// Verification reports shared by the certificate checker and the lattice
// gadget verifier.

#include <optional>
#include <string>
#include <vector>

namespace ramsey {

/// One exact side condition. `lhs`/`rhs` are exact renderings; the approx
/// fields carry decimals for humans only.
struct Check {
  std::string what;
  std::string lhs;
  std::string rhs;
  std::string relation;
  bool pass = false;
  std::string lhs_approx;
  std::string rhs_approx;
};

enum class StepStatus { Passed, Failed, NotRun };

struct StepReport {
  std::string rule;
  std::vector<std::string> produces;
  std::vector<Check> checks;
  StepStatus status = StepStatus::NotRun;
  std::string error;  // set when the step could not be evaluated
};

enum class Verdict { Verified, Rejected };

struct VerificationReport {
  std::string id;
  Verdict verdict = Verdict::Rejected;
  /// Dependency and context conditions checked before the steps run.
  std::vector<Check> context_checks;
  std::vector<StepReport> steps;
  /// Conditions on the declared export, checked after the steps.
  std::vector<Check> export_checks;
  /// The validated export statement, empty if none.
  std::string exports;
  std::optional<double> elapsed_ms;
  std::string summary;

  bool verified() const { return verdict == Verdict::Verified; }

  /// First failing check or step error, for one-line diagnostics.
  std::string first_failure() const {
    for (const auto& c : context_checks) {
      if (!c.pass) return "context: " + render(c);
    }
    for (const auto& s : steps) {
      if (!s.error.empty()) return s.rule + ": " + s.error;
      for (const auto& c : s.checks) {
        if (!c.pass) return s.rule + ": " + render(c);
      }
    }
    for (const auto& c : export_checks) {
      if (!c.pass) return "export: " + render(c);
    }
    return summary;
  }

  static std::string render(const Check& c) {
    return c.what + ": " + c.lhs + " " + c.relation + " " + c.rhs + " fails";
  }
};

inline std::string to_string(Verdict v) {
  return v == Verdict::Verified ? "Verified" : "Rejected";
}

inline std::string to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Passed: return "pass";
    case StepStatus::Failed: return "fail";
    case StepStatus::NotRun: return "not-run";
  }
  return "?";
}

}  // namespace ramsey

#pragma once

// Single-field mutations of the builtin certificates, shared by the unit
// tests and the acceptance binary.

#include <string>
#include <vector>

#include "ramsey/certs/format.hpp"

namespace ramsey::testing {

struct Mutation {
  std::string cert;
  std::string kind;  // "literal", "rule" or "dependency"
  std::string pointer;
  std::string from;
  std::string to;
  certs::Json doc;

  std::string label() const;
};

/// Hand-picked mutations covering every builtin and every kind.
std::vector<Mutation> curated_mutations();

/// Every expression string in every builtin, shifted by +1.
std::vector<Mutation> literal_mutations();

/// Every dependency entry of every builtin, removed.
std::vector<Mutation> dependency_removals();

struct MutationOutcome {
  bool loaded = false;
  bool rejected = false;
  /// The report holds at least one failing comparison.
  bool failing_check = false;
  std::string detail;
};

MutationOutcome run_mutation(const Mutation& m);

}  // namespace ramsey::testing

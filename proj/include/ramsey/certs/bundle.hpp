#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/deduction/checker.hpp"

namespace ramsey::certs {

/// Ids of the builtin certificates in bundle order.
std::vector<std::string> builtin_ids();

/// JSON source of a builtin certificate, or nullopt for an unknown id.
std::optional<std::string> builtin_source(const std::string& id);

/// All builtin certificates in a valid topological order.
std::vector<deduction::Certificate> builtin_bundle();

/// Orders certificates so that dependencies present in the list come first;
/// ties keep input order. Certificates on a dependency cycle are returned in
/// `cyclic` and left out of the order.
struct Ordering {
  std::vector<std::size_t> order;
  std::vector<std::size_t> cyclic;
};
Ordering topological_order(const std::vector<deduction::Certificate>& certs);

struct BundleResult {
  /// One report per certificate, in verification order.
  std::vector<VerificationReport> reports;
  deduction::Registry registry;

  bool all_verified() const;
};

/// Verifies certificates in dependency order, registering each verified one.
/// A certificate whose dependency failed or is absent is rejected.
BundleResult verify_bundle(const std::vector<deduction::Certificate>& certs,
                           int digits = 6);

/// The certificate and everything in `pool` it transitively depends on, for
/// passing to verify_bundle.
std::vector<deduction::Certificate> with_dependencies(
    const deduction::Certificate& cert,
    const std::vector<deduction::Certificate>& pool);

/// Resolves a --cert argument: an existing path, else the first match in the
/// colon-separated RAMSEY_CERT_PATH directories.
std::optional<std::filesystem::path> resolve_cert_path(const std::string& name);

}  // namespace ramsey::certs

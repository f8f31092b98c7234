#pragma once

#include <map>
#include <set>
#include <string>

#include "ramsey/deduction/certificate.hpp"
#include "ramsey/report.hpp"

namespace ramsey::deduction {

struct RegistryEntry {
  CertificateKind kind = CertificateKind::Euclidean;
  std::vector<std::string> dependencies;
  std::optional<LemmaExport> exports;
  VerificationReport report;
};

/// Verified lemmas by id. Entries are only added from Verified reports.
class Registry {
 public:
  bool contains(const std::string& id) const { return entries_.count(id) != 0; }
  const RegistryEntry* find(const std::string& id) const;
  const std::map<std::string, RegistryEntry>& entries() const { return entries_; }

  /// Throws std::logic_error unless the report is Verified.
  void insert(const std::string& id, RegistryEntry entry);

 private:
  std::map<std::string, RegistryEntry> entries_;
};

/// A colour fact established during checking.
struct FactRecord {
  Locus locus;
  Color color = Color::Red;
  bool hypothesis = false;
  std::vector<std::string> premises;
};

class Checker {
 public:
  Checker(const Certificate& cert, const Registry& registry, int digits = 6);

  VerificationReport run();

  const std::map<std::string, FactRecord>& facts() const { return facts_; }

  /// Hypothesis facts reachable from the fact through justifications.
  std::set<std::string> premise_closure(const std::string& fact) const;

  /// The export with its signature filled in, when run() verified it.
  const std::optional<LemmaExport>& validated_export() const { return export_; }

 private:
  struct Impl;
  const Certificate& cert_;
  const Registry& registry_;
  int digits_;
  std::map<std::string, FactRecord> facts_;
  std::optional<LemmaExport> export_;
};

VerificationReport check_certificate(const Certificate& cert,
                                     const Registry& registry, int digits = 6);

/// Checks the certificate and, when verified, records it in the registry.
VerificationReport verify_and_register(const Certificate& cert,
                                       Registry& registry, int digits = 6);

/// Decomposes membership of p in the locus into exact comparisons.
std::vector<Check> membership_checks(const Point3& p, const Locus& l,
                                     const std::string& what, int digits);

}  // namespace ramsey::deduction

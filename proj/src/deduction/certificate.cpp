#include "ramsey/deduction/certificate.hpp"

namespace ramsey::deduction {

namespace {

template <typename T>
struct RuleTag;

#define RAMSEY_RULE_NAME(Type, text) \
  template <>                        \
  struct RuleTag<Type> {             \
    static constexpr const char* name = text; \
  };

RAMSEY_RULE_NAME(NeighborBlue, "neighbor_blue")
RAMSEY_RULE_NAME(PointFromLocus, "point_from_locus")
RAMSEY_RULE_NAME(ApForceRed, "ap_force_red")
RAMSEY_RULE_NAME(ApWitnessBlue, "ap_witness_blue")
RAMSEY_RULE_NAME(OrbitLift, "orbit_lift")
RAMSEY_RULE_NAME(ChordContradiction, "chord_contradiction")
RAMSEY_RULE_NAME(DiskContradiction, "disk_contradiction")
RAMSEY_RULE_NAME(LatticeDistance, "lattice_distance")
RAMSEY_RULE_NAME(LatticeForced, "lattice_propagate")
RAMSEY_RULE_NAME(LatticeUnsat, "lattice_unsat")
RAMSEY_RULE_NAME(LatticeCore, "lattice_core")
RAMSEY_RULE_NAME(PatternCheck, "pattern_check")
RAMSEY_RULE_NAME(PatternRedPair, "pattern_red_pair")

#undef RAMSEY_RULE_NAME

template <std::size_t... I>
std::vector<std::string> all_names(std::index_sequence<I...>) {
  return {RuleTag<std::variant_alternative_t<I, Rule>>::name...};
}

}  // namespace

std::string rule_name(const Rule& r) {
  return std::visit(
      [](const auto& x) -> std::string {
        return RuleTag<std::decay_t<decltype(x)>>::name;
      },
      r);
}

std::vector<std::string> rule_names() {
  return all_names(std::make_index_sequence<std::variant_size_v<Rule>>{});
}

lattice::Patch PatchSpec::patch() const {
  if (rhombus) {
    const auto [a0, a1, b0, b1] = *rhombus;
    return lattice::Patch::rhombus(a0, a1, b0, b1);
  }
  return lattice::Patch(points);
}

std::string to_string(const Signature& s) {
  std::string out = "no red l2";
  if (s.ap_len != 0) out += ", no blue l" + std::to_string(s.ap_len);
  if (s.lattice_blue_ap != 0) {
    out += ", lattice has a blue l" + std::to_string(s.lattice_blue_ap);
  }
  return out;
}

std::string kind_name(LemmaExport::Kind k) {
  switch (k) {
    case LemmaExport::Kind::ForbiddenRedDistance: return "forbiddenRedDistance";
    case LemmaExport::Kind::NoBlueDisk: return "noBlueDisk";
    case LemmaExport::Kind::BlueAPExists: return "blueAPExists";
  }
  return "?";
}

std::string to_string(const LemmaExport& e) {
  return kind_name(e.kind) + "(" + e.value.to_string() + ") under {" +
         to_string(e.signature) + "}";
}

const Locus* Certificate::find_scene(const std::string& name) const {
  for (const auto& [n, l] : scene) {
    if (n == name) return &l;
  }
  return nullptr;
}

}  // namespace ramsey::deduction

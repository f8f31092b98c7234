#pragma once

// Certificate data model. A certificate refutes a set of colour hypotheses
// (or, for lattice certificates, establishes a finite lattice fact) by a
// sequence of rule applications whose side conditions the checker
// re-verifies exactly.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ramsey/color.hpp"
#include "ramsey/geometry/geometry.hpp"
#include "ramsey/lattice/lattice.hpp"

namespace ramsey::deduction {

using algebra::TowerElem;
using geometry::Locus;
using geometry::Point3;
using geometry::Vec3;

inline const std::string kBaseSource = "base";
inline const std::string kHypothesisSource = "hypothesis";

struct DistanceEntry {
  TowerElem distance;
  std::string source;
};

struct DiskEntry {
  TowerElem radius;
  std::string source;
};

struct BlueApEntry {
  int length = 5;
  std::string source;
};

struct Hypothesis {
  std::string name;
  std::string locus;  // scene name
  Color color = Color::Red;
};

struct Context {
  int ap_len = 5;
  std::vector<DistanceEntry> red_distances;
  std::optional<DiskEntry> no_blue_disk;
  /// Lattice certificates only: the lattice contains a blue progression of
  /// this length.
  std::optional<BlueApEntry> lattice_blue_ap;
  std::vector<Hypothesis> hypotheses;
};

struct ApSpec {
  Point3 start;
  Vec3 step;
  int length = 0;
};

struct NeighborTarget {
  std::string locus;  // scene name of a point, sphere or circle
  std::string red;    // Red point fact
  TowerElem distance;
};

struct NeighborBlue {
  std::vector<NeighborTarget> targets;
};

struct PointFromLocus {
  std::vector<std::string> points;  // scene names
  std::string fact;
};

struct ApForceRed {
  ApSpec ap;
  /// Blue facts covering the non-missing terms, in index order.
  std::vector<std::string> blue;
  int missing = 0;
};

struct ApWitnessBlue {
  std::string target;  // scene point or circle
  ApSpec ap;
  std::vector<std::string> blue;
  std::vector<int> missing;
  /// One forbidden red distance per missing index.
  std::vector<TowerElem> distances;
};

struct OrbitLift {
  std::string fact;
  std::array<std::string, 2> axis;  // scene points
  std::string expect;               // scene locus
};

struct ChordContradiction {
  std::string fact;
};

struct DiskContradiction {
  std::string fact;
};

struct LatticeSeedEntry {
  std::string name;
  lattice::LatticePoint point;
  Color color = Color::Red;
  std::string source = kHypothesisSource;
};

struct PatchSpec {
  std::optional<std::array<long, 4>> rhombus;
  std::vector<lattice::LatticePoint> points;

  lattice::Patch patch() const;
};

struct NamedLatticePoint {
  std::string name;
  lattice::LatticePoint point;
};

struct LatticeDistance {
  std::vector<lattice::DistanceAssertion> pairs;
};

struct LatticeForced {
  bool probing = false;
  PatchSpec patch;
  std::vector<LatticeSeedEntry> seed;
  std::vector<NamedLatticePoint> red;
};

struct LatticeUnsat {
  PatchSpec patch;
  std::vector<LatticeSeedEntry> seed;
};

struct LatticeCore {
  PatchSpec patch;
  std::vector<LatticeSeedEntry> seed;
  long margin = 5;
  std::size_t limit = 16;
};

struct PatternCheck {
  std::string pattern = "mod5";
  long period = 5;
  int ap_len = 5;
};

struct PatternRedPair {
  std::string pattern = "mod5";
  long period = 5;
  long sq_dist = 3;
};

using Rule = std::variant<NeighborBlue, PointFromLocus, ApForceRed,
                          ApWitnessBlue, OrbitLift, ChordContradiction,
                          DiskContradiction, LatticeDistance, LatticeForced,
                          LatticeUnsat, LatticeCore, PatternCheck,
                          PatternRedPair>;

std::string rule_name(const Rule& r);
std::vector<std::string> rule_names();

struct Step {
  Rule rule;
  std::vector<std::string> produces;
};

/// Hypothesis signature under which an export holds. ap_len 0 means no
/// blue-progression assumption; lattice_blue_ap 0 means no assumption that
/// the lattice holds a blue progression.
struct Signature {
  int ap_len = 0;
  int lattice_blue_ap = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

std::string to_string(const Signature& s);

struct LemmaExport {
  enum class Kind { ForbiddenRedDistance, NoBlueDisk, BlueAPExists };
  Kind kind = Kind::ForbiddenRedDistance;
  /// Distance, radius, or progression length.
  TowerElem value;
  /// Filled in by the checker.
  Signature signature;
};

std::string kind_name(LemmaExport::Kind k);
std::string to_string(const LemmaExport& e);

enum class CertificateKind { Euclidean, Lattice };
enum class Goal { Contradiction, Established };

struct Certificate {
  std::string id;
  CertificateKind kind = CertificateKind::Euclidean;
  std::vector<std::string> dependencies;
  Context context;
  std::vector<std::pair<std::string, Locus>> scene;
  std::vector<Step> steps;
  Goal goal = Goal::Contradiction;
  std::optional<LemmaExport> exports;

  const Locus* find_scene(const std::string& name) const;
};

}  // namespace ramsey::deduction

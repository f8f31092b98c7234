#pragma once

// Colourings of the unit triangular lattice. A point (a, b) stands for
// a·(1,0) + b·(1/2, √3/2), so squared distances are integers.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ramsey/color.hpp"
#include "ramsey/report.hpp"

namespace ramsey::lattice {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LatticePoint {
  long a = 0;
  long b = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

LatticePoint operator+(LatticePoint p, LatticePoint q);
LatticePoint operator-(LatticePoint p, LatticePoint q);
LatticePoint operator*(long k, LatticePoint p);

std::string to_string(LatticePoint p);

long sqdist_lattice(LatticePoint p, LatticePoint q);

/// The three unit steps up to sign.
inline constexpr std::array<LatticePoint, 3> kDirections{
    {{1, 0}, {0, 1}, {1, -1}}};

struct RedDistanceRule {
  long sq_dist = 1;
  std::string source;
};

struct LatticeRules {
  std::vector<RedDistanceRule> red;
  int ap_len = 6;

  /// Throws LatticeError unless squared distance 1 is present and
  /// ap_len is 5 or 6.
  void validate() const;
  std::vector<long> sq_dists() const;
};

/// Finite set of lattice points, kept in lexicographic order.
class Patch {
 public:
  Patch() = default;
  explicit Patch(std::vector<LatticePoint> points);

  /// All (a, b) with a0 ≤ a ≤ a1 and b0 ≤ b ≤ b1.
  static Patch rhombus(long a0, long a1, long b0, long b1);
  static Patch rhombus(long radius) {
    return rhombus(-radius, radius, -radius, radius);
  }

  const std::vector<LatticePoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool contains(LatticePoint p) const;
  std::optional<std::size_t> index_of(LatticePoint p) const;

 private:
  std::vector<LatticePoint> points_;
};

using LatticeColoring = std::map<LatticePoint, Color>;

struct PropagationResult {
  LatticeColoring coloring;
  /// Set when some point was forced both ways.
  std::optional<LatticePoint> conflict;

  bool contradiction() const { return conflict.has_value(); }
};

/// Least fixpoint of the red-distance and blue-window rules. Throws
/// LatticeError if the seed leaves the patch.
PropagationResult propagate(const Patch& patch, const LatticeColoring& seed,
                            const LatticeRules& rules);

/// Same fixpoint, but pending deductions are processed in an order drawn
/// from `shuffle_seed`.
PropagationResult propagate_shuffled(const Patch& patch,
                                     const LatticeColoring& seed,
                                     const LatticeRules& rules,
                                     std::uint64_t shuffle_seed);

/// Propagation plus failed-literal probing: an undecided point whose
/// colouring with one colour propagates to a contradiction gets the other
/// colour. Repeats until no probe succeeds.
PropagationResult propagate_with_probing(const Patch& patch,
                                         const LatticeColoring& seed,
                                         const LatticeRules& rules);

struct EnumerationResult {
  std::vector<LatticeColoring> colorings;
  bool limit_exceeded = false;
  std::uint64_t nodes = 0;
};

/// Total colourings extending the seed, in canonical order (points in
/// lexicographic order, Blue before Red). Stops after `limit` colourings and
/// sets limit_exceeded if a further one exists.
EnumerationResult enumerate(const Patch& patch, const LatticeColoring& seed,
                            const LatticeRules& rules, std::size_t limit);

/// Red iff (2a + b) ≡ 0 (mod 5).
Color pattern_mod5(LatticePoint p);

using PatternFn = std::function<Color(LatticePoint)>;

/// Checks a pattern of the given period in both coordinates: no Red pair at
/// a forbidden squared distance and no all-Blue window of ap_len points
/// along a unit direction. Exhaustive over one fundamental domain.
bool check_pattern(const PatternFn& pattern, long period,
                   const std::vector<long>& sq_dists, int ap_len);

/// A Red pair of the pattern at the given squared distance with one point in
/// the fundamental domain, if any.
std::optional<std::pair<LatticePoint, LatticePoint>> find_red_pair(
    const PatternFn& pattern, long period, long sq_dist);

struct ForcedColors {
  std::vector<std::pair<std::string, LatticePoint>> points;
  Color color = Color::Red;
};

struct Unsatisfiable {};

struct Satisfiable {
  std::size_t limit = 1;
};

/// Every colouring of the patch agrees with pattern_mod5 on the points at
/// least `margin` away from the patch boundary, and at least one exists.
struct CoreMatchesPattern {
  long margin = 5;
  std::size_t limit = 16;
};

using Expectation =
    std::variant<ForcedColors, Unsatisfiable, Satisfiable, CoreMatchesPattern>;

struct DistanceAssertion {
  std::string p_name, q_name;
  LatticePoint p, q;
  long sq_dist = 0;
};

struct Gadget {
  std::string name;
  Patch patch;
  LatticeColoring seed;
  LatticeRules rules;
  Expectation expectation;
  bool probing = false;
  std::vector<DistanceAssertion> distances;
  /// Rhombus bounds when the patch is a rhombus (used for core margins).
  std::optional<std::array<long, 4>> bounds;
};

VerificationReport verify_gadget(const Gadget& gadget);

/// The builtin gadgets: fig8a, fig8b, fig9 and core15.
Gadget builtin_gadget(const std::string& name);
std::vector<std::string> builtin_gadget_names();

}  // namespace ramsey::lattice

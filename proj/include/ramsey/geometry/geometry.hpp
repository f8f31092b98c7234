#pragma once

// Exact points and loci in 3-space. Planar scenes live in z = 0 with the
// rotation axis along (0,0,1); there is no separate 2D code path.
//
// Loci store squared radii, except Annulus which stores its radii directly.
// Directions are unnormalized; parallelism and perpendicularity are decided
// by exact cross/dot product signs.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ramsey/algebra/tower.hpp"

namespace ramsey::geometry {

using algebra::TowerElem;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point3 {
  TowerElem x, y, z;

  friend bool operator==(const Point3& p, const Point3& q) {
    return p.x == q.x && p.y == q.y && p.z == q.z;
  }
};

using Vec3 = Point3;

Vec3 operator+(const Vec3& p, const Vec3& q);
Vec3 operator-(const Vec3& p, const Vec3& q);
Vec3 operator*(const TowerElem& s, const Vec3& p);
TowerElem dot(const Vec3& p, const Vec3& q);
Vec3 cross(const Vec3& p, const Vec3& q);
bool is_zero(const Vec3& v);
bool parallel(const Vec3& u, const Vec3& v);

TowerElem sqdist(const Point3& p, const Point3& q);

std::string to_string(const Point3& p);

/// Rotations about the line through two distinct points.
class RotationGroup {
 public:
  RotationGroup(Point3 a, Point3 b);

  const Point3& a() const { return a_; }
  const Point3& b() const { return b_; }
  Vec3 direction() const { return b_ - a_; }

  /// Foot of the perpendicular from p to the axis.
  Point3 foot(const Point3& p) const;
  TowerElem sqdist_to_axis(const Point3& p) const;
  bool on_axis(const Point3& p) const;

 private:
  Point3 a_, b_;
};

struct PointLocus {
  Point3 point;
};

struct Sphere {
  Point3 center;
  TowerElem sq_radius;
};

struct Circle {
  Point3 center;
  Vec3 normal;
  TowerElem sq_radius;
};

/// Closed disk in the plane through `center` orthogonal to `normal`.
struct Disk {
  Point3 center;
  Vec3 normal;
  TowerElem sq_radius;
};

/// Closed annulus r_inner ≤ |p − center| ≤ r_outer in the plane through
/// `center` orthogonal to `normal`.
struct Annulus {
  Point3 center;
  Vec3 normal;
  TowerElem r_inner;
  TowerElem r_outer;
};

using Locus = std::variant<PointLocus, Sphere, Circle, Disk, Annulus>;

// Validating constructors; throw GeometryError on a negative radius, a zero
// normal, or r_inner > r_outer.
Locus make_point(Point3 p);
Locus make_sphere(Point3 center, TowerElem sq_radius);
Locus make_circle(Point3 center, Vec3 normal, TowerElem sq_radius);
Locus make_disk(Point3 center, Vec3 normal, TowerElem sq_radius);
Locus make_annulus(Point3 center, Vec3 normal, TowerElem r_inner,
                   TowerElem r_outer);

std::string kind_name(const Locus& l);
std::string to_string(const Locus& l);

/// Exact locus equality: same kind, same center, parallel normals, equal radii.
bool same_locus(const Locus& a, const Locus& b);

/// True iff every point of the consecutive list is one unit step apart along
/// a common vector.
bool is_unit_ap(std::span<const Point3> points);

/// Unit arithmetic progression start, start+step, … of `length` points.
/// Throws GeometryError unless |step|² = 1 and length ≥ 2.
std::vector<Point3> unit_ap(const Point3& start, const Vec3& step, int length);

bool on_locus(const Point3& p, const Locus& l);

/// Supported pairs: Circle ⊆ Sphere, PointLocus ⊆ anything. Other pairs
/// throw GeometryError.
bool subset_locus(const Locus& inner, const Locus& outer);

/// Orbit of p under the rotation group: a coaxial circle, or the point
/// itself when p lies on the axis.
Locus orbit_of(const Point3& p, const RotationGroup& g);

/// Union of the rotated copies of a circle whose plane is orthogonal to the
/// axis: an annulus, or a disk when the circle passes through the axis.
Locus sweep_of(const Circle& c, const RotationGroup& g);

/// A circle contains two points at distance 1 iff its radius is ≥ 1/2.
bool contains_unit_chord(const Circle& c);

/// True iff the locus is mapped onto itself by every rotation of g.
bool invariant_under(const Locus& l, const RotationGroup& g);

}  // namespace ramsey::geometry

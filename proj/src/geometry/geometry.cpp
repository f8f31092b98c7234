#include "ramsey/geometry/geometry.hpp"

#include <utility>

namespace ramsey::geometry {

using algebra::sqrt_adjoin;

Vec3 operator+(const Vec3& p, const Vec3& q) {
  return {p.x + q.x, p.y + q.y, p.z + q.z};
}

Vec3 operator-(const Vec3& p, const Vec3& q) {
  return {p.x - q.x, p.y - q.y, p.z - q.z};
}

Vec3 operator*(const TowerElem& s, const Vec3& p) {
  return {s * p.x, s * p.y, s * p.z};
}

TowerElem dot(const Vec3& p, const Vec3& q) {
  return p.x * q.x + p.y * q.y + p.z * q.z;
}

Vec3 cross(const Vec3& p, const Vec3& q) {
  return {p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x};
}

bool is_zero(const Vec3& v) {
  return v.x.sign() == 0 && v.y.sign() == 0 && v.z.sign() == 0;
}

bool parallel(const Vec3& u, const Vec3& v) { return is_zero(cross(u, v)); }

TowerElem sqdist(const Point3& p, const Point3& q) {
  const Vec3 d = p - q;
  return dot(d, d);
}

std::string to_string(const Point3& p) {
  return "(" + p.x.to_string() + ", " + p.y.to_string() + ", " +
         p.z.to_string() + ")";
}

RotationGroup::RotationGroup(Point3 a, Point3 b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (sqdist(a_, b_).sign() <= 0) {
    throw GeometryError("rotation axis needs two distinct points");
  }
}

Point3 RotationGroup::foot(const Point3& p) const {
  const Vec3 dir = direction();
  const TowerElem t = dot(p - a_, dir) / dot(dir, dir);
  return a_ + t * dir;
}

TowerElem RotationGroup::sqdist_to_axis(const Point3& p) const {
  return sqdist(p, foot(p));
}

bool RotationGroup::on_axis(const Point3& p) const {
  return parallel(p - a_, direction());
}

namespace {

void require_nonnegative(const TowerElem& r, const char* what) {
  if (r.sign() < 0) throw GeometryError(std::string(what) + " is negative");
}

void require_normal(const Vec3& n) {
  if (is_zero(n)) throw GeometryError("normal vector is zero");
}

bool coplanar(const Point3& p, const Point3& center, const Vec3& normal) {
  return dot(p - center, normal).sign() == 0;
}

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Locus make_point(Point3 p) { return PointLocus{std::move(p)}; }

Locus make_sphere(Point3 center, TowerElem sq_radius) {
  require_nonnegative(sq_radius, "squared radius");
  return Sphere{std::move(center), std::move(sq_radius)};
}

Locus make_circle(Point3 center, Vec3 normal, TowerElem sq_radius) {
  require_nonnegative(sq_radius, "squared radius");
  require_normal(normal);
  return Circle{std::move(center), std::move(normal), std::move(sq_radius)};
}

Locus make_disk(Point3 center, Vec3 normal, TowerElem sq_radius) {
  require_nonnegative(sq_radius, "squared radius");
  require_normal(normal);
  return Disk{std::move(center), std::move(normal), std::move(sq_radius)};
}

Locus make_annulus(Point3 center, Vec3 normal, TowerElem r_inner,
                   TowerElem r_outer) {
  require_nonnegative(r_inner, "inner radius");
  require_normal(normal);
  if ((r_outer - r_inner).sign() < 0) {
    throw GeometryError("annulus inner radius exceeds outer radius");
  }
  return Annulus{std::move(center), std::move(normal), std::move(r_inner),
                 std::move(r_outer)};
}

std::string kind_name(const Locus& l) {
  static const char* const names[] = {"point", "sphere", "circle", "disk",
                                      "annulus"};
  return names[l.index()];
}

std::string to_string(const Locus& l) {
  return std::visit(
      Overloaded{
          [](const PointLocus& p) { return "point" + to_string(p.point); },
          [](const Sphere& s) {
            return "sphere(center=" + to_string(s.center) +
                   ", sqRadius=" + s.sq_radius.to_string() + ")";
          },
          [](const Circle& c) {
            return "circle(center=" + to_string(c.center) +
                   ", normal=" + to_string(c.normal) +
                   ", sqRadius=" + c.sq_radius.to_string() + ")";
          },
          [](const Disk& d) {
            return "disk(center=" + to_string(d.center) +
                   ", normal=" + to_string(d.normal) +
                   ", sqRadius=" + d.sq_radius.to_string() + ")";
          },
          [](const Annulus& a) {
            return "annulus(center=" + to_string(a.center) +
                   ", normal=" + to_string(a.normal) +
                   ", rInner=" + a.r_inner.to_string() +
                   ", rOuter=" + a.r_outer.to_string() + ")";
          },
      },
      l);
}

bool same_locus(const Locus& a, const Locus& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      Overloaded{
          [&](const PointLocus& p) {
            return p.point == std::get<PointLocus>(b).point;
          },
          [&](const Sphere& s) {
            const auto& t = std::get<Sphere>(b);
            return s.center == t.center && s.sq_radius == t.sq_radius;
          },
          [&](const Circle& c) {
            const auto& t = std::get<Circle>(b);
            return c.center == t.center && parallel(c.normal, t.normal) &&
                   c.sq_radius == t.sq_radius;
          },
          [&](const Disk& d) {
            const auto& t = std::get<Disk>(b);
            return d.center == t.center && parallel(d.normal, t.normal) &&
                   d.sq_radius == t.sq_radius;
          },
          [&](const Annulus& x) {
            const auto& t = std::get<Annulus>(b);
            return x.center == t.center && parallel(x.normal, t.normal) &&
                   x.r_inner == t.r_inner && x.r_outer == t.r_outer;
          },
      },
      a);
}

bool is_unit_ap(std::span<const Point3> points) {
  if (points.size() < 2) return false;
  const Vec3 step = points[1] - points[0];
  if (dot(step, step) != TowerElem(1)) return false;
  for (std::size_t i = 2; i < points.size(); ++i) {
    if (!(points[i] - points[i - 1] == step)) return false;
  }
  return true;
}

std::vector<Point3> unit_ap(const Point3& start, const Vec3& step, int length) {
  if (length < 2) throw GeometryError("a unit progression needs ≥ 2 points");
  if (dot(step, step) != TowerElem(1)) {
    throw GeometryError("progression step does not have length 1");
  }
  std::vector<Point3> out;
  out.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    out.push_back(start + TowerElem(static_cast<long>(i)) * step);
  }
  return out;
}

bool on_locus(const Point3& p, const Locus& l) {
  return std::visit(
      Overloaded{
          [&](const PointLocus& q) { return p == q.point; },
          [&](const Sphere& s) { return sqdist(p, s.center) == s.sq_radius; },
          [&](const Circle& c) {
            return coplanar(p, c.center, c.normal) &&
                   sqdist(p, c.center) == c.sq_radius;
          },
          [&](const Disk& d) {
            return coplanar(p, d.center, d.normal) &&
                   sqdist(p, d.center) <= d.sq_radius;
          },
          [&](const Annulus& a) {
            if (!coplanar(p, a.center, a.normal)) return false;
            const TowerElem r2 = sqdist(p, a.center);
            return a.r_inner * a.r_inner <= r2 && r2 <= a.r_outer * a.r_outer;
          },
      },
      l);
}

bool subset_locus(const Locus& inner, const Locus& outer) {
  if (const auto* p = std::get_if<PointLocus>(&inner)) {
    return on_locus(p->point, outer);
  }
  const auto* c = std::get_if<Circle>(&inner);
  const auto* s = std::get_if<Sphere>(&outer);
  if (c == nullptr || s == nullptr) {
    throw GeometryError("unsupported containment: " + kind_name(inner) +
                        " in " + kind_name(outer));
  }
  return parallel(c->center - s->center, c->normal) &&
         sqdist(c->center, s->center) + c->sq_radius == s->sq_radius;
}

Locus orbit_of(const Point3& p, const RotationGroup& g) {
  const Point3 f = g.foot(p);
  const TowerElem r2 = sqdist(p, f);
  if (r2.sign() == 0) return PointLocus{p};
  return Circle{f, g.direction(), r2};
}

Locus sweep_of(const Circle& c, const RotationGroup& g) {
  if (!parallel(c.normal, g.direction())) {
    throw GeometryError("circle plane is not orthogonal to the rotation axis");
  }
  const Point3 f = g.foot(c.center);
  const TowerElem d = sqrt_adjoin(sqdist(c.center, f));
  const TowerElem r = sqrt_adjoin(c.sq_radius);
  const TowerElem diff = d - r;
  const TowerElem r_outer = d + r;
  if (diff.sign() == 0) return Disk{f, c.normal, r_outer * r_outer};
  return Annulus{f, c.normal, diff.sign() < 0 ? -diff : diff, r_outer};
}

bool contains_unit_chord(const Circle& c) {
  return c.sq_radius >= TowerElem(algebra::Rat(1, 4));
}

bool invariant_under(const Locus& l, const RotationGroup& g) {
  const Vec3 dir = g.direction();
  return std::visit(
      Overloaded{
          [&](const PointLocus& p) { return g.on_axis(p.point); },
          [&](const Sphere& s) { return g.on_axis(s.center); },
          [&](const Circle& c) {
            return g.on_axis(c.center) && parallel(c.normal, dir);
          },
          [&](const Disk& d) {
            return g.on_axis(d.center) && parallel(d.normal, dir);
          },
          [&](const Annulus& a) {
            return g.on_axis(a.center) && parallel(a.normal, dir);
          },
      },
      l);
}

}  // namespace ramsey::geometry

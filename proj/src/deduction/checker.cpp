#include "ramsey/deduction/checker.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "ramsey/algebra/interval.hpp"

namespace ramsey::deduction {

using algebra::Rat;
using geometry::Annulus;
using geometry::Circle;
using geometry::Disk;
using geometry::PointLocus;
using geometry::Sphere;

const RegistryEntry* Registry::find(const std::string& id) const {
  const auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

void Registry::insert(const std::string& id, RegistryEntry entry) {
  if (!entry.report.verified()) {
    throw std::logic_error("only verified certificates enter the registry: " + id);
  }
  entries_[id] = std::move(entry);
}

namespace {

class StepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string approx(const TowerElem& x, int digits) {
  return algebra::approx_decimal(x, digits);
}

bool holds(const TowerElem& lhs, const std::string& rel, const TowerElem& rhs) {
  const int s = algebra::sign(lhs - rhs);
  if (rel == "=") return s == 0;
  if (rel == "<=") return s <= 0;
  if (rel == ">=") return s >= 0;
  if (rel == "<") return s < 0;
  if (rel == ">") return s > 0;
  throw std::logic_error("unknown relation " + rel);
}

Check compare(std::string what, const TowerElem& lhs, std::string rel,
              const TowerElem& rhs, int digits) {
  const bool pass = holds(lhs, rel, rhs);
  return Check{std::move(what), lhs.to_string(), rhs.to_string(), std::move(rel),
               pass, approx(lhs, digits), approx(rhs, digits)};
}

Check text(std::string what, std::string lhs, std::string rel, std::string rhs,
           bool pass) {
  return Check{std::move(what), std::move(lhs), std::move(rhs), std::move(rel),
               pass, "", ""};
}

Check equal_text(std::string what, const std::string& lhs, const std::string& rhs) {
  return text(std::move(what), lhs, "=", rhs, lhs == rhs);
}

Check equal_int(std::string what, long lhs, long rhs) {
  return equal_text(std::move(what), std::to_string(lhs), std::to_string(rhs));
}

TowerElem norm2(const Vec3& v) { return geometry::dot(v, v); }

void append(std::vector<Check>& out, std::vector<Check> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()),
             std::make_move_iterator(more.end()));
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

bool compatible(const Signature& sig, const Context& ctx) {
  const bool ap_ok = sig.ap_len == 0 || sig.ap_len == ctx.ap_len;
  const bool lattice_ok =
      sig.lattice_blue_ap == 0 ||
      (ctx.lattice_blue_ap && ctx.lattice_blue_ap->length == sig.lattice_blue_ap);
  return ap_ok && lattice_ok;
}

std::string context_signature(const Context& ctx) {
  Signature s{ctx.ap_len, ctx.lattice_blue_ap ? ctx.lattice_blue_ap->length : 0};
  return to_string(s);
}

/// Exact comparisons for "circle ⊆ sphere".
std::vector<Check> subset_checks(const Circle& c, const Point3& center,
                                 const TowerElem& sq_radius, const std::string& what,
                                 int digits) {
  return {compare(what + ": |(c - R) x n|^2", norm2(geometry::cross(c.center - center, c.normal)),
                  "=", TowerElem(0), digits),
          compare(what + ": sqdist(c, R) + r^2", geometry::sqdist(c.center, center) + c.sq_radius,
                  "=", sq_radius, digits)};
}

}  // namespace

std::vector<Check> membership_checks(const Point3& p, const Locus& l,
                                     const std::string& what, int digits) {
  auto coplanar = [&](const Point3& center, const Vec3& normal) {
    return compare(what + ": (p - c).n", geometry::dot(p - center, normal), "=",
                   TowerElem(0), digits);
  };
  if (const auto* q = std::get_if<PointLocus>(&l)) {
    return {compare(what + ": sqdist", geometry::sqdist(p, q->point), "=", TowerElem(0), digits)};
  }
  if (const auto* s = std::get_if<Sphere>(&l)) {
    return {compare(what + ": sqdist to center", geometry::sqdist(p, s->center), "=",
                    s->sq_radius, digits)};
  }
  if (const auto* c = std::get_if<Circle>(&l)) {
    return {coplanar(c->center, c->normal),
            compare(what + ": sqdist to center", geometry::sqdist(p, c->center), "=",
                    c->sq_radius, digits)};
  }
  if (const auto* d = std::get_if<Disk>(&l)) {
    return {coplanar(d->center, d->normal),
            compare(what + ": sqdist to center", geometry::sqdist(p, d->center), "<=",
                    d->sq_radius, digits)};
  }
  const auto& a = std::get<Annulus>(l);
  const TowerElem r2 = geometry::sqdist(p, a.center);
  return {coplanar(a.center, a.normal),
          compare(what + ": sqdist to center", r2, ">=", a.r_inner * a.r_inner, digits),
          compare(what + ": sqdist to center", r2, "<=", a.r_outer * a.r_outer, digits)};
}

struct Checker::Impl {
  Checker& self;
  const Certificate& cert;
  VerificationReport rep;
  bool contradiction = false;
  std::vector<std::string> step_summaries;

  explicit Impl(Checker& c) : self(c), cert(c.cert_) {}

  int digits() const { return self.digits_; }
  const Context& ctx() const { return cert.context; }

  // ---- lookups -----------------------------------------------------------

  const Locus& scene(const std::string& name) const {
    const Locus* l = cert.find_scene(name);
    if (l == nullptr) throw StepError("unknown scene name '" + name + "'");
    return *l;
  }

  const Point3& scene_point(const std::string& name) const {
    const auto* p = std::get_if<PointLocus>(&scene(name));
    if (p == nullptr) throw StepError("scene name '" + name + "' is not a point");
    return p->point;
  }

  const FactRecord& fact(const std::string& name) const {
    const auto it = self.facts_.find(name);
    if (it == self.facts_.end()) throw StepError("unknown fact '" + name + "'");
    return it->second;
  }

  void add_fact(const std::string& name, FactRecord f) {
    if (name.empty()) throw StepError("produced fact needs a name");
    if (self.facts_.count(name) != 0) throw StepError("fact '" + name + "' defined twice");
    self.facts_.emplace(name, std::move(f));
  }

  void expect_produces(const Step& s, std::size_t n) const {
    if (s.produces.size() != n) {
      throw StepError("step must produce " + std::to_string(n) + " fact(s), lists " +
                      std::to_string(s.produces.size()));
    }
  }

  std::string distance_set() const {
    std::string out = "{";
    for (std::size_t i = 0; i < ctx().red_distances.size(); ++i) {
      if (i != 0) out += ", ";
      out += ctx().red_distances[i].distance.to_string();
    }
    return out + "}";
  }

  Check distance_allowed(const TowerElem& d) const {
    bool found = false;
    for (const auto& e : ctx().red_distances) found = found || e.distance == d;
    return text("forbidden red distance", d.to_string(), "in", distance_set(), found);
  }

  Check colour_is(const std::string& name, const FactRecord& f, Color c) const {
    return equal_text("colour of " + name, to_string(f.color), to_string(c));
  }

  // ---- context -----------------------------------------------------------

  const LemmaExport* cited_export(const std::string& source, LemmaExport::Kind kind,
                                  std::vector<Check>& out) {
    const bool declared = std::find(cert.dependencies.begin(), cert.dependencies.end(),
                                    source) != cert.dependencies.end();
    out.push_back(text("source is a declared dependency", source, "in", "dependencies", declared));
    const RegistryEntry* e = self.registry_.find(source);
    if (!declared || e == nullptr) return nullptr;
    const bool kind_ok = e->exports && e->exports->kind == kind;
    out.push_back(equal_text("export kind of " + source,
                             e->exports ? kind_name(e->exports->kind) : "none", kind_name(kind)));
    if (!kind_ok) return nullptr;
    out.push_back(text("signature of " + source + " fits the context",
                       to_string(e->exports->signature), "within",
                       context_signature(ctx()), compatible(e->exports->signature, ctx())));
    return &*e->exports;
  }

  void check_context() {
    auto& out = rep.context_checks;
    for (const auto& d : cert.dependencies) {
      out.push_back(text("dependency is not the certificate itself", d, "!=", cert.id,
                         d != cert.id));
      const RegistryEntry* e = self.registry_.find(d);
      out.push_back(text("dependency verified", d, "in", "registry", e != nullptr));
      if (e == nullptr || e->kind != CertificateKind::Lattice || !e->exports) continue;
      // Lattice lemmas are split over several certificates; citing one
      // requires citing what it rests on.
      for (const auto& sub : e->dependencies) {
        const bool has = std::find(cert.dependencies.begin(), cert.dependencies.end(),
                                   sub) != cert.dependencies.end();
        out.push_back(text("dependency of " + d + " declared", sub, "in", "dependencies", has));
      }
    }
    out.push_back(text("blue progression length", std::to_string(ctx().ap_len), "in", "{5, 6}",
                       ctx().ap_len == 5 || ctx().ap_len == 6));

    bool has_unit = false;
    for (const auto& e : ctx().red_distances) {
      if (e.source == kBaseSource) {
        out.push_back(compare("base forbidden distance", e.distance, "=", TowerElem(1), digits()));
        has_unit = has_unit || e.distance == TowerElem(1);
        continue;
      }
      const LemmaExport* x = cited_export(e.source, LemmaExport::Kind::ForbiddenRedDistance, out);
      if (x != nullptr) {
        out.push_back(compare("distance exported by " + e.source, e.distance, "=", x->value,
                              digits()));
      }
    }
    out.push_back(text("unit distance forbidden by hypothesis", has_unit ? "1" : "missing", "in",
                       distance_set(), has_unit));

    if (const auto& disk = ctx().no_blue_disk) {
      if (const LemmaExport* x = cited_export(disk->source, LemmaExport::Kind::NoBlueDisk, out)) {
        out.push_back(compare("disk radius exported by " + disk->source, disk->radius, "=",
                              x->value, digits()));
      }
    }
    if (const auto& ap = ctx().lattice_blue_ap) {
      out.push_back(equal_text("lattice progression context", cert.kind == CertificateKind::Lattice
                                                                   ? "lattice"
                                                                   : "euclidean",
                               "lattice"));
      if (const LemmaExport* x = cited_export(ap->source, LemmaExport::Kind::BlueAPExists, out)) {
        out.push_back(compare("progression length exported by " + ap->source,
                              TowerElem(static_cast<long>(ap->length)), "=", x->value, digits()));
      }
    }
    for (const auto& h : ctx().hypotheses) {
      const Locus* l = cert.find_scene(h.locus);
      out.push_back(text("hypothesis " + h.name + " locus", h.locus, "in", "scene", l != nullptr));
      if (l == nullptr) continue;
      if (self.facts_.count(h.name) != 0) {
        out.push_back(text("hypothesis name unique", h.name, "!=", "earlier name", false));
        continue;
      }
      self.facts_.emplace(h.name, FactRecord{*l, h.color, true, {}});
    }
  }

  // ---- euclidean rules ---------------------------------------------------

  std::vector<Point3> ap_points(const ApSpec& ap, StepReport& s) const {
    s.checks.push_back(equal_int("progression length", ap.length, ctx().ap_len));
    s.checks.push_back(compare("|step|^2", norm2(ap.step), "=", TowerElem(1), digits()));
    if (ap.length < 2 || ap.length > 64) throw StepError("progression length out of range");
    std::vector<Point3> pts;
    for (int i = 0; i < ap.length; ++i) {
      pts.push_back(ap.start + TowerElem(static_cast<long>(i)) * ap.step);
    }
    return pts;
  }

  /// Blue facts, in order, must cover every term outside `missing`.
  void blue_coverage(const std::vector<Point3>& pts, const std::vector<int>& missing,
                     const std::vector<std::string>& blue, StepReport& s) const {
    std::size_t t = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::find(missing.begin(), missing.end(), static_cast<int>(i)) != missing.end()) {
        continue;
      }
      const std::string term = "term " + std::to_string(i + 1);
      if (t >= blue.size()) {
        s.checks.push_back(text(term + " covered by a blue fact", "none", "=", "blue fact", false));
        continue;
      }
      const FactRecord& f = fact(blue[t]);
      s.checks.push_back(colour_is(blue[t], f, Color::Blue));
      append(s.checks, membership_checks(pts[i], f.locus, term + " on " + blue[t], digits()));
      ++t;
    }
    s.checks.push_back(equal_int("blue facts listed", static_cast<long>(blue.size()),
                                 static_cast<long>(t)));
  }

  void apply(const Step& st, const NeighborBlue& r, StepReport& s) {
    expect_produces(st, r.targets.size());
    for (std::size_t i = 0; i < r.targets.size(); ++i) {
      const auto& t = r.targets[i];
      const FactRecord& red = fact(t.red);
      s.checks.push_back(colour_is(t.red, red, Color::Red));
      const auto* rp = std::get_if<PointLocus>(&red.locus);
      if (rp == nullptr) throw StepError("fact '" + t.red + "' is not about a point");
      s.checks.push_back(distance_allowed(t.distance));
      const TowerElem d2 = t.distance * t.distance;
      const Locus& target = scene(t.locus);
      const std::string what = t.locus + " at distance from " + t.red;
      if (const auto* p = std::get_if<PointLocus>(&target)) {
        s.checks.push_back(compare(what + ": sqdist", geometry::sqdist(p->point, rp->point), "=",
                                   d2, digits()));
      } else if (const auto* sp = std::get_if<Sphere>(&target)) {
        s.checks.push_back(compare(what + ": sqdist of centers",
                                   geometry::sqdist(sp->center, rp->point), "=", TowerElem(0),
                                   digits()));
        s.checks.push_back(compare(what + ": sqRadius", sp->sq_radius, "=", d2, digits()));
      } else if (const auto* c = std::get_if<Circle>(&target)) {
        append(s.checks, subset_checks(*c, rp->point, d2, what, digits()));
      } else {
        throw StepError("neighbor_blue target '" + t.locus + "' must be a point, sphere or circle");
      }
      add_fact(st.produces[i], FactRecord{target, Color::Blue, false, {t.red}});
    }
  }

  void apply(const Step& st, const PointFromLocus& r, StepReport& s) {
    expect_produces(st, r.points.size());
    const FactRecord& f = fact(r.fact);
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const Point3& p = scene_point(r.points[i]);
      append(s.checks, membership_checks(p, f.locus, r.points[i] + " on " + r.fact, digits()));
      add_fact(st.produces[i], FactRecord{PointLocus{p}, f.color, false, {r.fact}});
    }
  }

  void apply(const Step& st, const ApForceRed& r, StepReport& s) {
    expect_produces(st, 1);
    const auto pts = ap_points(r.ap, s);
    if (r.missing < 0 || r.missing >= static_cast<int>(pts.size())) {
      throw StepError("missing index out of range");
    }
    blue_coverage(pts, {r.missing}, r.blue, s);
    add_fact(st.produces[0],
             FactRecord{PointLocus{pts[static_cast<std::size_t>(r.missing)]}, Color::Red, false,
                        r.blue});
  }

  void apply(const Step& st, const ApWitnessBlue& r, StepReport& s) {
    expect_produces(st, 1);
    const auto pts = ap_points(r.ap, s);
    auto missing = r.missing;
    std::sort(missing.begin(), missing.end());
    if (missing.empty() || std::adjacent_find(missing.begin(), missing.end()) != missing.end() ||
        missing.front() < 0 || missing.back() >= static_cast<int>(pts.size())) {
      throw StepError("missing indices must be distinct and in range");
    }
    if (r.distances.size() != r.missing.size()) {
      throw StepError("one distance is needed per missing index");
    }
    blue_coverage(pts, missing, r.blue, s);
    const Locus& target = scene(r.target);
    for (std::size_t m = 0; m < r.missing.size(); ++m) {
      const auto j = static_cast<std::size_t>(r.missing[m]);
      const TowerElem& d = r.distances[m];
      s.checks.push_back(distance_allowed(d));
      const std::string what = r.target + " to term " + std::to_string(j + 1);
      if (const auto* p = std::get_if<PointLocus>(&target)) {
        s.checks.push_back(compare(what + ": sqdist", geometry::sqdist(p->point, pts[j]), "=",
                                   d * d, digits()));
      } else if (const auto* c = std::get_if<Circle>(&target)) {
        append(s.checks, subset_checks(*c, pts[j], d * d, what, digits()));
      } else {
        throw StepError("ap_witness_blue target '" + r.target + "' must be a point or circle");
      }
    }
    add_fact(st.produces[0], FactRecord{target, Color::Blue, false, r.blue});
  }

  void apply(const Step& st, const OrbitLift& r, StepReport& s) {
    expect_produces(st, 1);
    const FactRecord& f = fact(r.fact);
    const Point3& a = scene_point(r.axis[0]);
    const Point3& b = scene_point(r.axis[1]);
    s.checks.push_back(compare("axis " + r.axis[0] + r.axis[1] + ": sqdist", geometry::sqdist(a, b),
                               ">", TowerElem(0), digits()));
    if (!s.checks.back().pass) return;
    const geometry::RotationGroup g(a, b);
    for (const auto& leaf : self.premise_closure(r.fact)) {
      const bool inv = geometry::invariant_under(fact(leaf).locus, g);
      s.checks.push_back(text("premise " + leaf + " invariant under the rotation",
                              inv ? "invariant" : "not invariant", "=", "invariant", inv));
    }
    Locus image;
    if (const auto* p = std::get_if<PointLocus>(&f.locus)) {
      image = geometry::orbit_of(p->point, g);
    } else if (const auto* c = std::get_if<Circle>(&f.locus)) {
      if (!geometry::parallel(c->normal, g.direction())) {
        throw StepError("circle of '" + r.fact + "' is not orthogonal to the axis");
      }
      image = geometry::sweep_of(*c, g);
    } else {
      throw StepError("only point and circle facts can be lifted");
    }
    const Locus& expected = scene(r.expect);
    s.checks.push_back(equal_text("image kind", geometry::kind_name(image),
                                  geometry::kind_name(expected)));
    if (image.index() == expected.index()) append(s.checks, same_locus_checks(image, expected));
    add_fact(st.produces[0], FactRecord{expected, f.color, false, {r.fact}});
  }

  std::vector<Check> same_locus_checks(const Locus& got, const Locus& want) const {
    const std::string w = "image vs expected";
    auto centers = [&](const Point3& a, const Point3& b) {
      return compare(w + ": sqdist of centers", geometry::sqdist(a, b), "=", TowerElem(0),
                     digits());
    };
    auto normals = [&](const Vec3& a, const Vec3& b) {
      return compare(w + ": |n x n'|^2", norm2(geometry::cross(a, b)), "=", TowerElem(0),
                     digits());
    };
    if (const auto* p = std::get_if<PointLocus>(&got)) {
      return {centers(p->point, std::get<PointLocus>(want).point)};
    }
    if (const auto* c = std::get_if<Circle>(&got)) {
      const auto& e = std::get<Circle>(want);
      return {centers(c->center, e.center), normals(c->normal, e.normal),
              compare(w + ": sqRadius", c->sq_radius, "=", e.sq_radius, digits())};
    }
    if (const auto* d = std::get_if<Disk>(&got)) {
      const auto& e = std::get<Disk>(want);
      return {centers(d->center, e.center), normals(d->normal, e.normal),
              compare(w + ": sqRadius", d->sq_radius, "=", e.sq_radius, digits())};
    }
    if (const auto* a = std::get_if<Annulus>(&got)) {
      const auto& e = std::get<Annulus>(want);
      return {centers(a->center, e.center), normals(a->normal, e.normal),
              compare(w + ": rInner", a->r_inner, "=", e.r_inner, digits()),
              compare(w + ": rOuter", a->r_outer, "=", e.r_outer, digits())};
    }
    throw StepError("unsupported image kind");
  }

  void apply(const Step& st, const ChordContradiction& r, StepReport& s) {
    expect_produces(st, 0);
    const FactRecord& f = fact(r.fact);
    s.checks.push_back(colour_is(r.fact, f, Color::Red));
    const auto* c = std::get_if<Circle>(&f.locus);
    if (c == nullptr) throw StepError("fact '" + r.fact + "' is not about a circle");
    s.checks.push_back(compare("sqRadius of " + r.fact, c->sq_radius, ">=", TowerElem(Rat(1, 4)),
                               digits()));
    contradiction = true;
  }

  void apply(const Step& st, const DiskContradiction& r, StepReport& s) {
    expect_produces(st, 0);
    const auto& nbd = ctx().no_blue_disk;
    s.checks.push_back(text("no-blue-disk lemma available", nbd ? nbd->source : "none", "in",
                            "dependencies", nbd.has_value()));
    if (!nbd) return;
    const FactRecord& f = fact(r.fact);
    s.checks.push_back(colour_is(r.fact, f, Color::Blue));
    if (const auto* d = std::get_if<Disk>(&f.locus)) {
      s.checks.push_back(compare("sqRadius of " + r.fact, d->sq_radius, ">=",
                                 nbd->radius * nbd->radius, digits()));
    } else if (const auto* a = std::get_if<Annulus>(&f.locus)) {
      s.checks.push_back(compare("width of " + r.fact, a->r_outer - a->r_inner, ">=",
                                 TowerElem(2) * nbd->radius, digits()));
    } else {
      throw StepError("fact '" + r.fact + "' is not about a disk or annulus");
    }
    contradiction = true;
  }

  // ---- lattice rules -----------------------------------------------------

  void require_lattice() const {
    if (cert.kind != CertificateKind::Lattice) {
      throw StepError("lattice rule in a euclidean certificate");
    }
  }

  lattice::LatticeRules lattice_rules() const {
    lattice::LatticeRules rules;
    rules.ap_len = ctx().ap_len;
    for (const auto& e : ctx().red_distances) {
      const auto sq = (e.distance * e.distance).as_rational();
      if (!sq || sq->get_den() != 1 || !sq->get_num().fits_slong_p()) {
        throw StepError("distance " + e.distance.to_string() +
                        " has no integer square, so it is not a lattice distance");
      }
      rules.red.push_back({sq->get_num().get_si(), e.source});
    }
    return rules;
  }

  lattice::LatticeColoring seed(const std::vector<LatticeSeedEntry>& entries,
                                StepReport& s) const {
    lattice::LatticeColoring out;
    for (const auto& e : entries) {
      if (e.source != kHypothesisSource) {
        const bool declared = std::find(cert.dependencies.begin(), cert.dependencies.end(),
                                        e.source) != cert.dependencies.end();
        const RegistryEntry* r = self.registry_.find(e.source);
        s.checks.push_back(text("seed " + e.name + " justified", e.source, "in",
                                "verified lattice dependencies",
                                declared && r != nullptr && r->kind == CertificateKind::Lattice));
      }
      if (!out.emplace(e.point, e.color).second) {
        throw StepError("seed point " + lattice::to_string(e.point) + " listed twice");
      }
    }
    return out;
  }

  void run_gadget(lattice::Gadget g, StepReport& s) {
    g.rules = lattice_rules();
    const VerificationReport r = lattice::verify_gadget(g);
    for (const auto& sub : r.steps) {
      if (!sub.error.empty()) throw StepError(sub.error);
      append(s.checks, sub.checks);
    }
    if (!r.summary.empty()) step_summaries.push_back(r.summary);
  }

  lattice::Gadget gadget(const PatchSpec& patch, const std::vector<LatticeSeedEntry>& entries,
                         StepReport& s) const {
    lattice::Gadget g;
    g.name = cert.id;
    g.patch = patch.patch();
    g.bounds = patch.rhombus;
    g.seed = seed(entries, s);
    return g;
  }

  void apply(const Step& st, const LatticeDistance& r, StepReport& s) {
    require_lattice();
    expect_produces(st, 0);
    for (const auto& d : r.pairs) {
      s.checks.push_back(equal_int("sqdist(" + d.p_name + "," + d.q_name + ")",
                                   lattice::sqdist_lattice(d.p, d.q), d.sq_dist));
    }
  }

  void apply(const Step& st, const LatticeForced& r, StepReport& s) {
    require_lattice();
    expect_produces(st, r.red.size());
    lattice::Gadget g = gadget(r.patch, r.seed, s);
    g.probing = r.probing;
    lattice::ForcedColors f;
    for (const auto& p : r.red) f.points.push_back({p.name, p.point});
    g.expectation = f;
    run_gadget(std::move(g), s);
  }

  void apply(const Step& st, const LatticeUnsat& r, StepReport& s) {
    require_lattice();
    expect_produces(st, 0);
    lattice::Gadget g = gadget(r.patch, r.seed, s);
    g.expectation = lattice::Unsatisfiable{};
    run_gadget(std::move(g), s);
    contradiction = true;
  }

  void apply(const Step& st, const LatticeCore& r, StepReport& s) {
    require_lattice();
    expect_produces(st, 0);
    if (!r.patch.rhombus) throw StepError("core comparison needs a rhombus patch");
    lattice::Gadget g = gadget(r.patch, r.seed, s);
    g.expectation = lattice::CoreMatchesPattern{r.margin, r.limit};
    run_gadget(std::move(g), s);
  }

  static lattice::PatternFn pattern(const std::string& name) {
    if (name == "mod5") return lattice::pattern_mod5;
    throw StepError("unknown pattern '" + name + "'");
  }

  void apply(const Step& st, const PatternCheck& r, StepReport& s) {
    require_lattice();
    expect_produces(st, 0);
    const auto fn = pattern(r.pattern);
    for (long sq : lattice_rules().sq_dists()) {
      const auto pair = lattice::find_red_pair(fn, r.period, sq);
      s.checks.push_back(equal_text(
          "red pair at squared distance " + std::to_string(sq),
          pair ? lattice::to_string(pair->first) + "-" + lattice::to_string(pair->second) : "none",
          "none"));
    }
    const bool windows = lattice::check_pattern(fn, r.period, {}, r.ap_len);
    s.checks.push_back(equal_text("every " + std::to_string(r.ap_len) + "-window has a red point",
                                  windows ? "true" : "false", "true"));
  }

  void apply(const Step& st, const PatternRedPair& r, StepReport& s) {
    require_lattice();
    expect_produces(st, 0);
    const auto pair = lattice::find_red_pair(pattern(r.pattern), r.period, r.sq_dist);
    s.checks.push_back(text("red pair at squared distance " + std::to_string(r.sq_dist),
                            pair ? lattice::to_string(pair->first) + "-" +
                                       lattice::to_string(pair->second)
                                 : "none",
                            "!=", "none", pair.has_value()));
  }

  // ---- exports -----------------------------------------------------------

  template <typename T>
  const T* find_step() const {
    for (const auto& st : cert.steps) {
      if (const auto* r = std::get_if<T>(&st.rule)) return r;
    }
    return nullptr;
  }

  std::vector<const FactRecord*> hypotheses() const {
    std::vector<const FactRecord*> out;
    for (const auto& h : ctx().hypotheses) {
      const auto it = self.facts_.find(h.name);
      if (it != self.facts_.end()) out.push_back(&it->second);
    }
    return out;
  }

  void check_export() {
    if (!cert.exports) return;
    auto& out = rep.export_checks;
    LemmaExport x = *cert.exports;
    const bool euclid = cert.kind == CertificateKind::Euclidean;
    const auto hyps = hypotheses();
    auto red_points = [&](std::size_t n) {
      out.push_back(equal_int("hypothesis count", static_cast<long>(ctx().hypotheses.size()),
                              static_cast<long>(n)));
      std::vector<Point3> pts;
      for (const auto* h : hyps) {
        const auto* p = std::get_if<PointLocus>(&h->locus);
        out.push_back(equal_text("hypothesis kind", geometry::kind_name(h->locus), "point"));
        out.push_back(equal_text("hypothesis colour", to_string(h->color), "red"));
        if (p != nullptr) pts.push_back(p->point);
      }
      return pts;
    };
    const std::string goal = cert.goal == Goal::Contradiction ? "contradiction" : "established";

    switch (x.kind) {
      case LemmaExport::Kind::ForbiddenRedDistance: {
        if (euclid) {
          out.push_back(equal_text("goal", goal, "contradiction"));
          const auto pts = red_points(2);
          if (pts.size() == 2) {
            out.push_back(compare("sqdist of the red pair", geometry::sqdist(pts[0], pts[1]), "=",
                                  x.value * x.value, digits()));
          }
          x.signature = {ctx().ap_len, 0};
          break;
        }
        const auto* pc = find_step<PatternCheck>();
        const auto* rp = find_step<PatternRedPair>();
        const auto* core = find_step<LatticeCore>();
        out.push_back(equal_text("pattern check step", pc ? "present" : "missing", "present"));
        out.push_back(equal_text("pattern red pair step", rp ? "present" : "missing", "present"));
        out.push_back(equal_text("core uniqueness step", core ? "present" : "missing", "present"));
        if (rp != nullptr) {
          out.push_back(compare("squared distance of the pattern red pair",
                                TowerElem(rp->sq_dist), "=", x.value * x.value, digits()));
        }
        x.signature = {ctx().ap_len, pc ? pc->ap_len : 0};
        break;
      }
      case LemmaExport::Kind::NoBlueDisk: {
        out.push_back(equal_text("certificate kind", euclid ? "euclidean" : "lattice", "euclidean"));
        out.push_back(equal_text("goal", goal, "contradiction"));
        out.push_back(equal_int("hypothesis count", static_cast<long>(ctx().hypotheses.size()), 1));
        if (hyps.size() == 1) {
          out.push_back(colour_is(ctx().hypotheses[0].name, *hyps[0], Color::Blue));
          const auto* d = std::get_if<Disk>(&hyps[0]->locus);
          out.push_back(equal_text("hypothesis kind", geometry::kind_name(hyps[0]->locus), "disk"));
          if (d != nullptr) {
            out.push_back(compare("sqRadius of the blue disk", d->sq_radius, "=",
                                  x.value * x.value, digits()));
          }
        }
        x.signature = {ctx().ap_len, 0};
        break;
      }
      case LemmaExport::Kind::BlueAPExists: {
        out.push_back(equal_text("goal", goal, "contradiction"));
        out.push_back(compare("progression length", x.value, "=",
                              TowerElem(static_cast<long>(ctx().ap_len)), digits()));
        if (euclid) {
          red_points(1);
        } else {
          const auto* u = find_step<LatticeUnsat>();
          out.push_back(equal_text("lattice refutation step", u ? "present" : "missing", "present"));
          if (u != nullptr) {
            out.push_back(equal_int("seed size", static_cast<long>(u->seed.size()), 1));
            for (const auto& e : u->seed) {
              out.push_back(equal_text("seed colour", to_string(e.color), "red"));
              out.push_back(equal_text("seed source", e.source, kHypothesisSource));
            }
          }
        }
        x.signature = {0, 0};
        break;
      }
    }
    if (all_pass(out)) {
      self.export_ = x;
      rep.exports = to_string(x);
    }
  }

  // ---- driver ------------------------------------------------------------

  VerificationReport run() {
    const auto t0 = std::chrono::steady_clock::now();
    rep.id = cert.id;
    self.facts_.clear();
    self.export_.reset();
    check_context();

    bool ok = true;
    for (const auto& st : cert.steps) {
      StepReport s;
      s.rule = rule_name(st.rule);
      s.produces = st.produces;
      if (!ok) {
        rep.steps.push_back(std::move(s));
        continue;
      }
      try {
        std::visit([&](const auto& r) { apply(st, r, s); }, st.rule);
      } catch (const StepError& e) {
        s.error = e.what();
      } catch (const geometry::GeometryError& e) {
        s.error = e.what();
      } catch (const lattice::LatticeError& e) {
        s.error = e.what();
      } catch (const algebra::AlgebraError& e) {
        s.error = e.what();
      }
      s.status = s.error.empty() && all_pass(s.checks) ? StepStatus::Passed : StepStatus::Failed;
      ok = s.status == StepStatus::Passed;
      rep.steps.push_back(std::move(s));
    }

    bool goal_ok = false;
    if (ok) {
      const bool last_is_contradiction = contradiction && !cert.steps.empty() &&
                                         std::visit(
                                             [](const auto& r) {
                                               using T = std::decay_t<decltype(r)>;
                                               return std::is_same_v<T, ChordContradiction> ||
                                                      std::is_same_v<T, DiskContradiction> ||
                                                      std::is_same_v<T, LatticeUnsat>;
                                             },
                                             cert.steps.back().rule);
      goal_ok = cert.goal == Goal::Contradiction ? last_is_contradiction
                                                 : !contradiction && !cert.steps.empty();
      check_export();
    }

    const bool verified = all_pass(rep.context_checks) && ok && goal_ok && all_pass(rep.export_checks);
    rep.verdict = verified ? Verdict::Verified : Verdict::Rejected;
    if (!ok) {
      rep.summary = "step failed";
    } else if (!goal_ok) {
      rep.summary = cert.goal == Goal::Contradiction ? "goal not reached: no final contradiction"
                                                     : "goal not reached";
    } else {
      rep.summary = cert.goal == Goal::Contradiction ? "contradiction" : "established";
    }
    for (const auto& extra : step_summaries) rep.summary += "; " + extra;
    if (!verified) {
      self.export_.reset();
      rep.exports.clear();
    }
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }
};

Checker::Checker(const Certificate& cert, const Registry& registry, int digits)
    : cert_(cert), registry_(registry), digits_(digits) {}

VerificationReport Checker::run() { return Impl(*this).run(); }

std::set<std::string> Checker::premise_closure(const std::string& name) const {
  std::set<std::string> out;
  std::set<std::string> seen;
  std::vector<std::string> todo{name};
  while (!todo.empty()) {
    const std::string n = todo.back();
    todo.pop_back();
    if (!seen.insert(n).second) continue;
    const auto it = facts_.find(n);
    if (it == facts_.end()) throw std::out_of_range("unknown fact '" + n + "'");
    if (it->second.hypothesis) out.insert(n);
    for (const auto& p : it->second.premises) todo.push_back(p);
  }
  return out;
}

VerificationReport check_certificate(const Certificate& cert, const Registry& registry,
                                     int digits) {
  return Checker(cert, registry, digits).run();
}

VerificationReport verify_and_register(const Certificate& cert, Registry& registry, int digits) {
  Checker checker(cert, registry, digits);
  VerificationReport rep = checker.run();
  if (rep.verified()) {
    registry.insert(cert.id, RegistryEntry{cert.kind, cert.dependencies,
                                           checker.validated_export(), rep});
  }
  return rep;
}

}  // namespace ramsey::deduction

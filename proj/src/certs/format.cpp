#include "ramsey/certs/format.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ramsey/algebra/expr.hpp"

namespace ramsey::certs {

using namespace deduction;
using geometry::Annulus;
using geometry::Circle;
using geometry::Disk;
using geometry::PointLocus;
using geometry::Sphere;
using lattice::LatticePoint;

Json parse_json(std::string_view text) {
  // One set of seen keys per open object.
  std::vector<std::set<std::string>> keys;
  std::vector<std::string> path;
  Json::parser_callback_t cb = [&](int, Json::parse_event_t event, Json& parsed) {
    switch (event) {
      case Json::parse_event_t::object_start:
        keys.emplace_back();
        break;
      case Json::parse_event_t::object_end:
        keys.pop_back();
        break;
      case Json::parse_event_t::key: {
        const std::string k = parsed.get<std::string>();
        if (!keys.back().insert(k).second) throw CertificateError(k, "duplicate key");
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return Json::parse(text.begin(), text.end(), cb);
  } catch (const Json::parse_error& e) {
    throw CertificateError("", std::string("invalid JSON: ") + e.what());
  }
}

namespace {

class Field {
 public:
  Field(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& msg) const { throw CertificateError(path_, msg); }

  Field operator[](const char* key) const {
    require_object();
    const auto it = j_->find(key);
    if (it == j_->end()) fail(std::string("missing field '") + key + "'");
    return Field(*it, join(key));
  }

  std::optional<Field> optional(const char* key) const {
    require_object();
    const auto it = j_->find(key);
    if (it == j_->end() || it->is_null()) return std::nullopt;
    return Field(*it, join(key));
  }

  void only_keys(std::initializer_list<const char*> allowed) const {
    require_object();
    for (const auto& [k, v] : j_->items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
        fail("unknown field '" + k + "'");
      }
    }
  }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  Field at(std::size_t i) const {
    return Field((*j_)[i], path_ + "[" + std::to_string(i) + "]");
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  long integer() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<long>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  TowerElem expr() const {
    if (!j_->is_string()) fail("expected a radical expression string");
    const std::string s = j_->get<std::string>();
    try {
      return algebra::parse_value(s);
    } catch (const algebra::ParseError& e) {
      fail("cannot parse '" + s + "' at position " + std::to_string(e.position()) + ": " +
           e.what());
    } catch (const algebra::AlgebraError& e) {
      fail("cannot evaluate '" + s + "': " + e.what());
    }
  }

  template <typename F>
  auto list(F&& f) const {
    std::vector<decltype(f(at(0)))> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(f(at(i)));
    return out;
  }

 private:
  void require_object() const {
    if (!j_->is_object()) fail("expected an object");
  }

  std::string join(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const Json* j_;
  std::string path_;
};

std::vector<std::string> strings(const Field& f) {
  return f.list([](const Field& x) { return x.string(); });
}

Point3 point3(const Field& f) {
  if (f.size() != 3) f.fail("expected three coordinates");
  return {f.at(0).expr(), f.at(1).expr(), f.at(2).expr()};
}

LatticePoint lattice_point(const Field& f) {
  if (f.size() != 2) f.fail("expected two lattice coordinates");
  return {f.at(0).integer(), f.at(1).integer()};
}

Color color(const Field& f) {
  const auto c = parse_color(f.string());
  if (!c) f.fail("expected \"red\" or \"blue\"");
  return *c;
}

template <typename F>
Locus guarded(const Field& f, F&& make) {
  try {
    return make();
  } catch (const geometry::GeometryError& e) {
    f.fail(e.what());
  }
}

Locus locus(const Field& f) {
  f.only_keys({"point", "sphere", "circle", "disk", "annulus"});
  if (f.json().size() != 1) f.fail("expected exactly one of point, sphere, circle, disk, annulus");
  if (auto p = f.optional("point")) return geometry::make_point(point3(*p));
  if (auto s = f.optional("sphere")) {
    s->only_keys({"center", "sqRadius"});
    return guarded(*s, [&] {
      return geometry::make_sphere(point3((*s)["center"]), (*s)["sqRadius"].expr());
    });
  }
  if (auto c = f.optional("circle")) {
    c->only_keys({"center", "normal", "sqRadius"});
    return guarded(*c, [&] {
      return geometry::make_circle(point3((*c)["center"]), point3((*c)["normal"]),
                                   (*c)["sqRadius"].expr());
    });
  }
  if (auto d = f.optional("disk")) {
    d->only_keys({"center", "normal", "sqRadius"});
    return guarded(*d, [&] {
      return geometry::make_disk(point3((*d)["center"]), point3((*d)["normal"]),
                                 (*d)["sqRadius"].expr());
    });
  }
  const Field a = f["annulus"];
  a.only_keys({"center", "normal", "rInner", "rOuter"});
  return guarded(a, [&] {
    return geometry::make_annulus(point3(a["center"]), point3(a["normal"]), a["rInner"].expr(),
                                  a["rOuter"].expr());
  });
}

ApSpec ap_spec(const Field& f) {
  f.only_keys({"start", "step", "length"});
  return {point3(f["start"]), point3(f["step"]), static_cast<int>(f["length"].integer())};
}

PatchSpec patch_spec(const Field& f) {
  f.only_keys({"rhombus", "points"});
  PatchSpec p;
  if (auto r = f.optional("rhombus")) {
    if (r->size() != 4) r->fail("expected [a0, a1, b0, b1]");
    p.rhombus = std::array<long, 4>{r->at(0).integer(), r->at(1).integer(), r->at(2).integer(),
                                    r->at(3).integer()};
    if ((*p.rhombus)[0] > (*p.rhombus)[1] || (*p.rhombus)[2] > (*p.rhombus)[3]) {
      r->fail("empty range");
    }
  } else {
    p.points = f["points"].list(lattice_point);
  }
  return p;
}

std::vector<LatticeSeedEntry> seed(const Field& f) {
  return f.list([](const Field& e) {
    e.only_keys({"name", "point", "color", "source"});
    return LatticeSeedEntry{e["name"].string(), lattice_point(e["point"]), color(e["color"]),
                            e["source"].string()};
  });
}

std::vector<NamedLatticePoint> named_points(const Field& f) {
  return f.list([](const Field& e) {
    e.only_keys({"name", "point"});
    return NamedLatticePoint{e["name"].string(), lattice_point(e["point"])};
  });
}

std::vector<int> ints(const Field& f) {
  return f.list([](const Field& x) { return static_cast<int>(x.integer()); });
}

Rule rule(const std::string& name, const Field& a) {
  if (name == "neighbor_blue") {
    a.only_keys({"targets"});
    return NeighborBlue{a["targets"].list([](const Field& t) {
      t.only_keys({"locus", "red", "distance"});
      return NeighborTarget{t["locus"].string(), t["red"].string(), t["distance"].expr()};
    })};
  }
  if (name == "point_from_locus") {
    a.only_keys({"points", "fact"});
    return PointFromLocus{strings(a["points"]), a["fact"].string()};
  }
  if (name == "ap_force_red") {
    a.only_keys({"ap", "blue", "missing"});
    return ApForceRed{ap_spec(a["ap"]), strings(a["blue"]),
                      static_cast<int>(a["missing"].integer())};
  }
  if (name == "ap_witness_blue") {
    a.only_keys({"target", "ap", "blue", "missing", "distances"});
    return ApWitnessBlue{a["target"].string(), ap_spec(a["ap"]), strings(a["blue"]),
                         ints(a["missing"]),
                         a["distances"].list([](const Field& x) { return x.expr(); })};
  }
  if (name == "orbit_lift") {
    a.only_keys({"fact", "axis", "expect"});
    const auto axis = strings(a["axis"]);
    if (axis.size() != 2) a["axis"].fail("expected two scene points");
    return OrbitLift{a["fact"].string(), {axis[0], axis[1]}, a["expect"].string()};
  }
  if (name == "chord_contradiction") {
    a.only_keys({"fact"});
    return ChordContradiction{a["fact"].string()};
  }
  if (name == "disk_contradiction") {
    a.only_keys({"fact"});
    return DiskContradiction{a["fact"].string()};
  }
  if (name == "lattice_distance") {
    a.only_keys({"pairs"});
    return LatticeDistance{a["pairs"].list([](const Field& p) {
      p.only_keys({"names", "points", "sqDist"});
      const auto names = strings(p["names"]);
      const Field pts = p["points"];
      if (names.size() != 2) p["names"].fail("expected two names");
      if (pts.size() != 2) pts.fail("expected two points");
      return lattice::DistanceAssertion{names[0], names[1], lattice_point(pts.at(0)),
                                        lattice_point(pts.at(1)), p["sqDist"].integer()};
    })};
  }
  if (name == "lattice_propagate") {
    a.only_keys({"probing", "patch", "seed", "red"});
    return LatticeForced{a["probing"].boolean(), patch_spec(a["patch"]), seed(a["seed"]),
                         named_points(a["red"])};
  }
  if (name == "lattice_unsat") {
    a.only_keys({"patch", "seed"});
    return LatticeUnsat{patch_spec(a["patch"]), seed(a["seed"])};
  }
  if (name == "lattice_core") {
    a.only_keys({"patch", "seed", "margin", "limit"});
    const long limit = a["limit"].integer();
    if (limit < 1) a["limit"].fail("limit must be at least 1");
    return LatticeCore{patch_spec(a["patch"]), seed(a["seed"]), a["margin"].integer(),
                       static_cast<std::size_t>(limit)};
  }
  if (name == "pattern_check") {
    a.only_keys({"pattern", "period", "apLen"});
    return PatternCheck{a["pattern"].string(), a["period"].integer(),
                        static_cast<int>(a["apLen"].integer())};
  }
  if (name == "pattern_red_pair") {
    a.only_keys({"pattern", "period", "sqDist"});
    return PatternRedPair{a["pattern"].string(), a["period"].integer(), a["sqDist"].integer()};
  }
  throw CertificateError("", "unknown rule '" + name + "'");
}

LemmaExport::Kind export_kind(const Field& f) {
  const std::string k = f.string();
  for (auto kind : {LemmaExport::Kind::ForbiddenRedDistance, LemmaExport::Kind::NoBlueDisk,
                    LemmaExport::Kind::BlueAPExists}) {
    if (kind_name(kind) == k) return kind;
  }
  f.fail("unknown export kind '" + k + "'");
}

Context context(const Field& f) {
  f.only_keys({"apLen", "forbiddenRedDistances", "noBlueDisk", "latticeBlueAP", "hypotheses"});
  Context c;
  c.ap_len = static_cast<int>(f["apLen"].integer());
  c.red_distances = f["forbiddenRedDistances"].list([](const Field& e) {
    e.only_keys({"distance", "source"});
    return DistanceEntry{e["distance"].expr(), e["source"].string()};
  });
  if (auto d = f.optional("noBlueDisk")) {
    d->only_keys({"radius", "source"});
    c.no_blue_disk = DiskEntry{(*d)["radius"].expr(), (*d)["source"].string()};
  }
  if (auto l = f.optional("latticeBlueAP")) {
    l->only_keys({"length", "source"});
    c.lattice_blue_ap =
        BlueApEntry{static_cast<int>((*l)["length"].integer()), (*l)["source"].string()};
  }
  c.hypotheses = f["hypotheses"].list([](const Field& h) {
    h.only_keys({"name", "locus", "color"});
    return Hypothesis{h["name"].string(), h["locus"].string(), color(h["color"])};
  });
  return c;
}

Certificate certificate(const Field& root) {
  root.only_keys({"id", "kind", "dependencies", "context", "scene", "steps", "goal", "export"});
  Certificate c;
  c.id = root["id"].string();
  if (c.id.empty()) root["id"].fail("id must not be empty");
  const std::string kind = root["kind"].string();
  if (kind == "euclidean") {
    c.kind = CertificateKind::Euclidean;
  } else if (kind == "lattice") {
    c.kind = CertificateKind::Lattice;
  } else {
    root["kind"].fail("expected \"euclidean\" or \"lattice\"");
  }
  c.dependencies = strings(root["dependencies"]);
  {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < c.dependencies.size(); ++i) {
      if (!seen.insert(c.dependencies[i]).second) {
        root["dependencies"].at(i).fail("duplicate dependency");
      }
    }
  }
  c.context = context(root["context"]);
  const Field scene = root["scene"];
  if (!scene.json().is_object()) scene.fail("expected an object");
  for (const auto& [name, value] : scene.json().items()) {
    c.scene.emplace_back(name, locus(Field(value, scene.path() + "." + name)));
  }
  const Field steps = root["steps"];
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Field s = steps.at(i);
    s.only_keys({"rule", "args", "produces"});
    const std::string name = s["rule"].string();
    Step step;
    try {
      step.rule = rule(name, s["args"]);
    } catch (const CertificateError& e) {
      if (!e.path().empty()) throw;
      s["rule"].fail(e.what());
    }
    step.produces = strings(s["produces"]);
    c.steps.push_back(std::move(step));
  }
  const std::string goal = root["goal"].string();
  if (goal == "contradiction") {
    c.goal = Goal::Contradiction;
  } else if (goal == "established") {
    c.goal = Goal::Established;
  } else {
    root["goal"].fail("expected \"contradiction\" or \"established\"");
  }
  if (auto e = root.optional("export")) {
    e->only_keys({"kind", "value"});
    LemmaExport x;
    x.kind = export_kind((*e)["kind"]);
    x.value = (*e)["value"].expr();
    c.exports = x;
  }
  return c;
}

// ---- serialization ---------------------------------------------------------

Json expr(const TowerElem& x) { return x.to_string(); }

Json point3(const Point3& p) { return Json::array({expr(p.x), expr(p.y), expr(p.z)}); }

Json lattice_point(LatticePoint p) { return Json::array({p.a, p.b}); }

Json locus(const Locus& l) {
  Json out = Json::object();
  if (const auto* p = std::get_if<PointLocus>(&l)) {
    out["point"] = point3(p->point);
  } else if (const auto* s = std::get_if<Sphere>(&l)) {
    out["sphere"] = {{"center", point3(s->center)}, {"sqRadius", expr(s->sq_radius)}};
  } else if (const auto* c = std::get_if<Circle>(&l)) {
    out["circle"] = {{"center", point3(c->center)},
                     {"normal", point3(c->normal)},
                     {"sqRadius", expr(c->sq_radius)}};
  } else if (const auto* d = std::get_if<Disk>(&l)) {
    out["disk"] = {{"center", point3(d->center)},
                   {"normal", point3(d->normal)},
                   {"sqRadius", expr(d->sq_radius)}};
  } else {
    const auto& a = std::get<Annulus>(l);
    out["annulus"] = {{"center", point3(a.center)},
                      {"normal", point3(a.normal)},
                      {"rInner", expr(a.r_inner)},
                      {"rOuter", expr(a.r_outer)}};
  }
  return out;
}

Json ap_spec(const ApSpec& ap) {
  return {{"start", point3(ap.start)}, {"step", point3(ap.step)}, {"length", ap.length}};
}

Json patch_spec(const PatchSpec& p) {
  if (p.rhombus) {
    return {{"rhombus", Json::array({(*p.rhombus)[0], (*p.rhombus)[1], (*p.rhombus)[2],
                                     (*p.rhombus)[3]})}};
  }
  Json pts = Json::array();
  for (const auto& q : p.points) pts.push_back(lattice_point(q));
  return {{"points", pts}};
}

Json seed(const std::vector<LatticeSeedEntry>& s) {
  Json out = Json::array();
  for (const auto& e : s) {
    out.push_back({{"name", e.name},
                   {"point", lattice_point(e.point)},
                   {"color", to_string(e.color)},
                   {"source", e.source}});
  }
  return out;
}

Json args(const Rule& r) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NeighborBlue>) {
          Json t = Json::array();
          for (const auto& e : x.targets) {
            t.push_back({{"locus", e.locus}, {"red", e.red}, {"distance", expr(e.distance)}});
          }
          return {{"targets", t}};
        } else if constexpr (std::is_same_v<T, PointFromLocus>) {
          return {{"points", x.points}, {"fact", x.fact}};
        } else if constexpr (std::is_same_v<T, ApForceRed>) {
          return {{"ap", ap_spec(x.ap)}, {"blue", x.blue}, {"missing", x.missing}};
        } else if constexpr (std::is_same_v<T, ApWitnessBlue>) {
          Json d = Json::array();
          for (const auto& v : x.distances) d.push_back(expr(v));
          return {{"target", x.target}, {"ap", ap_spec(x.ap)}, {"blue", x.blue},
                  {"missing", x.missing}, {"distances", d}};
        } else if constexpr (std::is_same_v<T, OrbitLift>) {
          return {{"fact", x.fact}, {"axis", Json::array({x.axis[0], x.axis[1]})},
                  {"expect", x.expect}};
        } else if constexpr (std::is_same_v<T, ChordContradiction> ||
                             std::is_same_v<T, DiskContradiction>) {
          return {{"fact", x.fact}};
        } else if constexpr (std::is_same_v<T, LatticeDistance>) {
          Json pairs = Json::array();
          for (const auto& p : x.pairs) {
            pairs.push_back({{"names", Json::array({p.p_name, p.q_name})},
                             {"points", Json::array({lattice_point(p.p), lattice_point(p.q)})},
                             {"sqDist", p.sq_dist}});
          }
          return {{"pairs", pairs}};
        } else if constexpr (std::is_same_v<T, LatticeForced>) {
          Json red = Json::array();
          for (const auto& p : x.red) {
            red.push_back({{"name", p.name}, {"point", lattice_point(p.point)}});
          }
          return {{"probing", x.probing}, {"patch", patch_spec(x.patch)}, {"seed", seed(x.seed)},
                  {"red", red}};
        } else if constexpr (std::is_same_v<T, LatticeUnsat>) {
          return {{"patch", patch_spec(x.patch)}, {"seed", seed(x.seed)}};
        } else if constexpr (std::is_same_v<T, LatticeCore>) {
          return {{"patch", patch_spec(x.patch)}, {"seed", seed(x.seed)}, {"margin", x.margin},
                  {"limit", x.limit}};
        } else if constexpr (std::is_same_v<T, PatternCheck>) {
          return {{"pattern", x.pattern}, {"period", x.period}, {"apLen", x.ap_len}};
        } else {
          return {{"pattern", x.pattern}, {"period", x.period}, {"sqDist", x.sq_dist}};
        }
      },
      r);
}

/// Re-renders every string that parses as a radical expression.
void normalize_strings(Json& j) {
  if (j.is_string()) {
    try {
      j = algebra::parse_value(j.get<std::string>()).to_string();
    } catch (const algebra::ParseError&) {
    } catch (const algebra::AlgebraError&) {
    }
    return;
  }
  if (j.is_object() || j.is_array()) {
    for (auto& child : j) normalize_strings(child);
  }
}

}  // namespace

Certificate load_certificate(std::string_view text) {
  const Json j = parse_json(text);
  return certificate(Field(j, ""));
}

Certificate load_certificate_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CertificateError(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_certificate(buf.str());
}

Json serialize(const Certificate& c) {
  Json out;
  out["id"] = c.id;
  out["kind"] = c.kind == CertificateKind::Euclidean ? "euclidean" : "lattice";
  out["dependencies"] = c.dependencies;

  Json ctx;
  ctx["apLen"] = c.context.ap_len;
  Json dists = Json::array();
  for (const auto& e : c.context.red_distances) {
    dists.push_back({{"distance", expr(e.distance)}, {"source", e.source}});
  }
  ctx["forbiddenRedDistances"] = dists;
  if (c.context.no_blue_disk) {
    ctx["noBlueDisk"] = {{"radius", expr(c.context.no_blue_disk->radius)},
                         {"source", c.context.no_blue_disk->source}};
  }
  if (c.context.lattice_blue_ap) {
    ctx["latticeBlueAP"] = {{"length", c.context.lattice_blue_ap->length},
                            {"source", c.context.lattice_blue_ap->source}};
  }
  Json hyps = Json::array();
  for (const auto& h : c.context.hypotheses) {
    hyps.push_back({{"name", h.name}, {"locus", h.locus}, {"color", to_string(h.color)}});
  }
  ctx["hypotheses"] = hyps;
  out["context"] = ctx;

  Json scene = Json::object();
  for (const auto& [name, l] : c.scene) scene[name] = locus(l);
  out["scene"] = scene;

  Json steps = Json::array();
  for (const auto& s : c.steps) {
    steps.push_back({{"rule", rule_name(s.rule)}, {"args", args(s.rule)}, {"produces", s.produces}});
  }
  out["steps"] = steps;
  out["goal"] = c.goal == Goal::Contradiction ? "contradiction" : "established";
  if (c.exports) {
    out["export"] = {{"kind", kind_name(c.exports->kind)}, {"value", expr(c.exports->value)}};
  }
  return out;
}

Json normalize(std::string_view text) {
  Json j = parse_json(text);
  normalize_strings(j);
  return j;
}

}  // namespace ramsey::certs

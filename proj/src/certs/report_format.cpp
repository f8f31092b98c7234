#include "ramsey/certs/report_format.hpp"

#include <iomanip>
#include <sstream>

#include "ramsey/algebra/interval.hpp"

namespace ramsey::certs {

using Json = nlohmann::ordered_json;
using namespace deduction;

namespace {

Json check_json(const Check& c) {
  Json j;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["relation"] = c.relation;
  j["pass"] = c.pass;
  if (c.lhs_approx.empty() && c.rhs_approx.empty()) {
    j["approx"] = nullptr;
  } else {
    j["approx"] = {{"lhs", c.lhs_approx}, {"rhs", c.rhs_approx}};
  }
  j["what"] = c.what;
  return j;
}

Json checks_json(const std::vector<Check>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(check_json(c));
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

void failure_lines(std::ostream& os, const std::vector<Check>& cs, const std::string& indent) {
  for (const auto& c : cs) {
    if (c.pass) continue;
    os << indent << "FAIL " << c.what << ": " << c.lhs << " " << c.relation << " " << c.rhs;
    if (!c.lhs_approx.empty()) os << "  [" << c.lhs_approx << " vs " << c.rhs_approx << "]";
    os << "\n";
  }
}

}  // namespace

Json report_json(const VerificationReport& r, bool timing) {
  Json j;
  j["id"] = r.id;
  j["verdict"] = to_string(r.verdict);
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json sj;
    sj["rule"] = s.rule;
    sj["checks"] = checks_json(s.checks);
    sj["status"] = to_string(s.status);
    sj["produces"] = s.produces;
    sj["error"] = s.error.empty() ? Json(nullptr) : Json(s.error);
    steps.push_back(sj);
  }
  j["steps"] = steps;
  j["context"] = checks_json(r.context_checks);
  j["export"] = {{"statement", r.exports.empty() ? Json(nullptr) : Json(r.exports)},
                 {"checks", checks_json(r.export_checks)}};
  j["summary"] = r.summary;
  j["elapsed_ms"] = timing && r.elapsed_ms ? Json(*r.elapsed_ms) : Json(nullptr);
  return j;
}

std::string emit_report(const VerificationReport& r, const EmitOptions& opts) {
  if (opts.json) return report_json(r, opts.timing).dump(2) + "\n";
  std::ostringstream os;
  os << r.id << ": " << to_string(r.verdict);
  if (!r.summary.empty()) os << " (" << r.summary << ")";
  if (opts.timing && r.elapsed_ms) {
    os << " in " << std::fixed << std::setprecision(1) << *r.elapsed_ms << " ms";
  }
  os << "\n";
  failure_lines(os, r.context_checks, "  context: ");
  std::size_t n = 0;
  for (const auto& s : r.steps) {
    ++n;
    os << "  " << std::setw(2) << n << "  " << std::left << std::setw(22) << s.rule
       << std::setw(8) << to_string(s.status) << std::right << join(s.produces) << "\n";
    if (!s.error.empty()) os << "        ERROR " << s.error << "\n";
    failure_lines(os, s.checks, "        ");
  }
  failure_lines(os, r.export_checks, "  export: ");
  if (!r.exports.empty()) os << "  exports " << r.exports << "\n";
  return os.str();
}

std::string emit_reports(const std::vector<VerificationReport>& rs, const EmitOptions& opts) {
  if (opts.json) {
    Json arr = Json::array();
    for (const auto& r : rs) arr.push_back(report_json(r, opts.timing));
    return arr.dump(2) + "\n";
  }
  std::string out;
  for (const auto& r : rs) out += (out.empty() ? "" : "\n") + emit_report(r, opts);
  return out;
}

namespace {

class Explainer {
 public:
  Explainer(std::ostream& os, int digits) : os_(os), digits_(digits) {}

  std::string num(const TowerElem& x) const {
    const std::string exact = x.to_string();
    if (x.as_rational()) return exact;
    return exact + " ≈ " + algebra::approx_decimal(x, digits_);
  }

  std::string pt(const Point3& p) const {
    return "(" + num(p.x) + ", " + num(p.y) + ", " + num(p.z) + ")";
  }

  std::string locus(const Locus& l) const {
    using namespace geometry;
    if (const auto* p = std::get_if<PointLocus>(&l)) return "point " + pt(p->point);
    if (const auto* s = std::get_if<Sphere>(&l)) {
      return "sphere center " + pt(s->center) + ", sqRadius " + num(s->sq_radius);
    }
    if (const auto* c = std::get_if<Circle>(&l)) {
      return "circle center " + pt(c->center) + ", normal " + pt(c->normal) + ", sqRadius " +
             num(c->sq_radius);
    }
    if (const auto* d = std::get_if<Disk>(&l)) {
      return "disk center " + pt(d->center) + ", normal " + pt(d->normal) + ", sqRadius " +
             num(d->sq_radius);
    }
    const auto& a = std::get<Annulus>(l);
    return "annulus center " + pt(a.center) + ", normal " + pt(a.normal) + ", radii " +
           num(a.r_inner) + " .. " + num(a.r_outer);
  }

  std::string ap(const ApSpec& a) const {
    return "progression from " + pt(a.start) + " step " + pt(a.step) + ", " +
           std::to_string(a.length) + " terms";
  }

  static std::string lp(lattice::LatticePoint p) { return lattice::to_string(p); }

  std::string patch(const PatchSpec& p) const {
    if (p.rhombus) {
      const auto [a0, a1, b0, b1] = *p.rhombus;
      return "rhombus a in [" + std::to_string(a0) + "," + std::to_string(a1) + "], b in [" +
             std::to_string(b0) + "," + std::to_string(b1) + "]";
    }
    return std::to_string(lattice::Patch(p.points).size()) + " listed points";
  }

  std::string seed(const std::vector<LatticeSeedEntry>& s) const {
    std::string out;
    for (const auto& e : s) {
      out += (out.empty() ? "" : ", ") + e.name + lp(e.point) + " " + to_string(e.color);
      if (e.source != kHypothesisSource) out += " [" + e.source + "]";
    }
    return out;
  }

  std::vector<std::string> detail(const Rule& r) const {
    return std::visit(
        [&](const auto& x) -> std::vector<std::string> {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, NeighborBlue>) {
            std::vector<std::string> out;
            for (const auto& t : x.targets) {
              out.push_back(t.locus + " blue: distance " + num(t.distance) + " from " + t.red);
            }
            return out;
          } else if constexpr (std::is_same_v<T, PointFromLocus>) {
            return {join(x.points) + " lie on " + x.fact};
          } else if constexpr (std::is_same_v<T, ApForceRed>) {
            return {ap(x.ap), "blue terms from " + join(x.blue) + "; term " +
                                  std::to_string(x.missing + 1) + " forced red"};
          } else if constexpr (std::is_same_v<T, ApWitnessBlue>) {
            std::vector<std::string> out{ap(x.ap), "blue terms from " + join(x.blue)};
            for (std::size_t i = 0; i < x.missing.size() && i < x.distances.size(); ++i) {
              out.push_back("term " + std::to_string(x.missing[i] + 1) + " at distance " +
                            num(x.distances[i]) + " from " + x.target);
            }
            return out;
          } else if constexpr (std::is_same_v<T, OrbitLift>) {
            return {"rotate " + x.fact + " about " + x.axis[0] + x.axis[1] + " onto " + x.expect};
          } else if constexpr (std::is_same_v<T, ChordContradiction>) {
            return {x.fact + " is a red circle with a unit chord"};
          } else if constexpr (std::is_same_v<T, DiskContradiction>) {
            return {x.fact + " is blue and holds a disk of the forbidden radius"};
          } else if constexpr (std::is_same_v<T, LatticeDistance>) {
            std::vector<std::string> out;
            for (const auto& p : x.pairs) {
              out.push_back("sqdist(" + p.p_name + lp(p.p) + ", " + p.q_name + lp(p.q) +
                            ") = " + std::to_string(p.sq_dist));
            }
            return out;
          } else if constexpr (std::is_same_v<T, LatticeForced>) {
            std::string red;
            for (const auto& p : x.red) red += (red.empty() ? "" : ", ") + p.name + lp(p.point);
            return {patch(x.patch) + (x.probing ? ", with probing" : ""), "seed " + seed(x.seed),
                    "forced red: " + red};
          } else if constexpr (std::is_same_v<T, LatticeUnsat>) {
            return {patch(x.patch), "seed " + seed(x.seed), "no colouring exists"};
          } else if constexpr (std::is_same_v<T, LatticeCore>) {
            return {patch(x.patch), "seed " + seed(x.seed),
                    "colourings agree with the pattern at margin " + std::to_string(x.margin)};
          } else if constexpr (std::is_same_v<T, PatternCheck>) {
            return {"pattern " + x.pattern + " has no forbidden red pair and no blue l" +
                    std::to_string(x.ap_len)};
          } else {
            return {"pattern " + x.pattern + " has a red pair at squared distance " +
                    std::to_string(x.sq_dist)};
          }
        },
        r);
  }

 private:
  std::ostream& os_;
  int digits_;
};

}  // namespace

std::string explain(const Certificate& c, int digits) {
  std::ostringstream os;
  const Explainer ex(os, digits);
  os << c.id << " (" << (c.kind == CertificateKind::Euclidean ? "euclidean" : "lattice")
     << ", no blue l" << c.context.ap_len << ")\n";
  os << "dependencies: " << (c.dependencies.empty() ? "none" : join(c.dependencies)) << "\n";
  os << "forbidden red distances:";
  for (const auto& e : c.context.red_distances) {
    os << " " << ex.num(e.distance) << " [" << e.source << "]";
  }
  os << "\n";
  if (c.context.no_blue_disk) {
    os << "no blue disk of radius " << ex.num(c.context.no_blue_disk->radius) << " ["
       << c.context.no_blue_disk->source << "]\n";
  }
  if (c.context.lattice_blue_ap) {
    os << "lattice holds a blue l" << c.context.lattice_blue_ap->length << " ["
       << c.context.lattice_blue_ap->source << "]\n";
  }
  for (const auto& h : c.context.hypotheses) {
    os << "hypothesis " << h.name << ": " << h.locus << " is " << to_string(h.color) << "\n";
  }
  if (!c.scene.empty()) os << "scene:\n";
  for (const auto& [name, l] : c.scene) os << "  " << name << " = " << ex.locus(l) << "\n";
  os << "steps:\n";
  std::size_t n = 0;
  for (const auto& s : c.steps) {
    os << "  " << ++n << ". " << rule_name(s.rule);
    if (!s.produces.empty()) os << " -> " << join(s.produces);
    os << "\n";
    for (const auto& line : ex.detail(s.rule)) os << "       " << line << "\n";
  }
  os << "goal: " << (c.goal == Goal::Contradiction ? "contradiction" : "established") << "\n";
  if (c.exports) os << "export: " << kind_name(c.exports->kind) << "(" << ex.num(c.exports->value) << ")\n";
  return os.str();
}

}  // namespace ramsey::certs

#include "mutations.hpp"

#include <algorithm>

#include "ramsey/algebra/expr.hpp"
#include "ramsey/certs/bundle.hpp"

namespace ramsey::testing {

namespace {

using certs::Json;
using Pointer = Json::json_pointer;

Json builtin_doc(const std::string& id) { return certs::parse_json(*certs::builtin_source(id)); }

std::string render(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

Mutation set_field(const std::string& cert, const std::string& kind, const std::string& ptr,
                   Json value) {
  Mutation m;
  m.cert = cert;
  m.kind = kind;
  m.pointer = ptr;
  m.doc = builtin_doc(cert);
  Json& slot = m.doc.at(Pointer(ptr));
  m.from = render(slot);
  m.to = render(value);
  slot = std::move(value);
  return m;
}

Mutation drop_dependency(const std::string& cert, std::size_t index) {
  Mutation m;
  m.cert = cert;
  m.kind = "dependency";
  m.pointer = "/dependencies/" + std::to_string(index);
  m.doc = builtin_doc(cert);
  auto& deps = m.doc["dependencies"];
  m.from = deps.at(index).get<std::string>();
  m.to = "(removed)";
  deps.erase(deps.begin() + static_cast<long>(index));
  return m;
}

bool is_expression(const Json& v) {
  if (!v.is_string()) return false;
  try {
    algebra::parse_value(v.get<std::string>());
    return true;
  } catch (const algebra::AlgebraError&) {
    return false;
  }
}

void collect_expressions(const Json& j, const std::string& at, std::vector<std::string>& out) {
  if (is_expression(j)) {
    out.push_back(at);
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) collect_expressions(v, at + "/" + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      collect_expressions(j[i], at + "/" + std::to_string(i), out);
    }
  }
}

bool any_failing(const std::vector<Check>& cs) {
  return std::any_of(cs.begin(), cs.end(), [](const Check& c) { return !c.pass; });
}

}  // namespace

std::string Mutation::label() const {
  return cert + " " + kind + " " + pointer + ": " + from + " -> " + to;
}

std::vector<Mutation> curated_mutations() {
  return {
      set_field("l52", "literal", "/scene/C1/circle/sqRadius", "1"),
      set_field("l52", "rule", "/steps/3/rule", "disk_contradiction"),
      set_field("l5r7", "literal", "/scene/C2/circle/center/0", "-2/sqrt(7)"),
      set_field("l5r7", "literal", "/export/value", "3"),
      set_field("l5r7", "rule", "/steps/3/rule", "disk_contradiction"),
      set_field("thm_l5", "literal", "/steps/1/args/ap/start/1", "sqrt(2)"),
      set_field("thm_l5", "rule", "/steps/3/rule", "disk_contradiction"),
      drop_dependency("thm_l5", 1),
      set_field("disk", "literal", "/scene/D/disk/sqRadius", "2"),
      set_field("disk", "literal", "/scene/A/point/1", "1/2"),
      set_field("disk", "rule", "/steps/5/rule", "disk_contradiction"),
      set_field("l62", "literal", "/scene/T/circle/center/0", "9/2"),
      set_field("l62", "rule", "/steps/3/rule", "chord_contradiction"),
      drop_dependency("l62", 0),
      set_field("l64", "literal", "/scene/E/disk/sqRadius", "11/4"),
      set_field("l64", "rule", "/steps/3/rule", "chord_contradiction"),
      set_field("l63", "literal", "/scene/T/circle/sqRadius", "14"),
      set_field("l63", "literal", "/scene/E/annulus/rInner", "sqrt(55)/2-sqrt(2)"),
      drop_dependency("l63", 1),
      set_field("r3_fig8a", "literal", "/steps/0/args/pairs/0/sqDist", 4),
      set_field("r3_fig8a", "literal", "/steps/1/args/red/0/point/1", 3),
      drop_dependency("r3_fig8a", 0),
      set_field("r3_pattern", "literal", "/steps/3/args/sqDist", 4),
      set_field("r3_pattern", "literal", "/export/value", "2"),
      drop_dependency("r3_pattern", 3),
      set_field("thm_l6", "literal", "/context/latticeBlueAP/length", 6),
      set_field("thm_l6", "literal", "/context/forbiddenRedDistances/1/distance", "2"),
      drop_dependency("thm_l6", 0),
      drop_dependency("thm_l6", 4),
  };
}

std::vector<Mutation> literal_mutations() {
  std::vector<Mutation> out;
  for (const auto& id : certs::builtin_ids()) {
    std::vector<std::string> ptrs;
    collect_expressions(builtin_doc(id), "", ptrs);
    for (const auto& p : ptrs) {
      const Json doc = builtin_doc(id);
      const std::string v = doc.at(Pointer(p)).get<std::string>();
      out.push_back(set_field(id, "literal", p, "(" + v + ")+1"));
    }
  }
  return out;
}

std::vector<Mutation> dependency_removals() {
  std::vector<Mutation> out;
  for (const auto& id : certs::builtin_ids()) {
    const std::size_t n = builtin_doc(id)["dependencies"].size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(drop_dependency(id, i));
  }
  return out;
}

MutationOutcome run_mutation(const Mutation& m) {
  MutationOutcome out;
  deduction::Certificate cert;
  try {
    cert = certs::load_certificate(m.doc.dump());
  } catch (const certs::CertificateError& e) {
    out.rejected = true;
    out.detail = std::string("load error: ") + e.what();
    return out;
  }
  out.loaded = true;
  std::vector<deduction::Certificate> pool;
  for (auto& c : certs::builtin_bundle()) {
    if (c.id != cert.id) pool.push_back(std::move(c));
  }
  const auto result = certs::verify_bundle(certs::with_dependencies(cert, pool));
  for (const auto& r : result.reports) {
    if (r.id != cert.id) continue;
    out.rejected = !r.verified();
    out.failing_check = any_failing(r.context_checks) || any_failing(r.export_checks);
    for (const auto& s : r.steps) out.failing_check = out.failing_check || any_failing(s.checks);
    out.detail = r.first_failure();
  }
  return out;
}

}  // namespace ramsey::testing

#include "ramsey/certs/bundle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "ramsey/certs/format.hpp"

namespace ramsey::certs {

using deduction::Certificate;

namespace {

const std::vector<std::pair<std::string, std::string>>& table() {
  static const std::vector<std::pair<std::string, std::string>> t =
#include "builtin_certs.inc"
      ;
  return t;
}

std::string blocked_summary(const std::string& dep) {
  return "dependency " + dep + " is not verified";
}

}  // namespace

std::vector<std::string> builtin_ids() {
  std::vector<std::string> out;
  for (const auto& [id, text] : table()) out.push_back(id);
  return out;
}

std::optional<std::string> builtin_source(const std::string& id) {
  for (const auto& [name, text] : table()) {
    if (name == id) return text;
  }
  return std::nullopt;
}

std::vector<Certificate> builtin_bundle() {
  std::vector<Certificate> certs;
  std::set<std::string> ids;
  for (const auto& [name, text] : table()) {
    Certificate c = load_certificate(text);
    if (c.id != name) throw CertificateError(name, "file name and id '" + c.id + "' differ");
    if (!ids.insert(c.id).second) throw CertificateError(name, "duplicate id");
    certs.push_back(std::move(c));
  }
  const Ordering ord = topological_order(certs);
  if (!ord.cyclic.empty()) throw CertificateError("", "builtin dependency cycle");
  std::vector<Certificate> out;
  for (std::size_t i : ord.order) out.push_back(certs[i]);
  return out;
}

Ordering topological_order(const std::vector<Certificate>& certs) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < certs.size(); ++i) index.emplace(certs[i].id, i);

  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> state(certs.size(), 0);
  std::vector<bool> cyclic(certs.size(), false);
  Ordering out;
  // Recursive depth-first search; bundles are small.
  std::vector<std::size_t> stack;
  auto visit = [&](auto&& self, std::size_t i) -> void {
    if (state[i] == 2) return;
    if (state[i] == 1) {
      const auto from = std::find(stack.begin(), stack.end(), i);
      for (auto it = from; it != stack.end(); ++it) cyclic[*it] = true;
      return;
    }
    state[i] = 1;
    stack.push_back(i);
    for (const auto& d : certs[i].dependencies) {
      const auto it = index.find(d);
      if (it != index.end()) self(self, it->second);
    }
    stack.pop_back();
    state[i] = 2;
    out.order.push_back(i);
  };
  for (std::size_t i = 0; i < certs.size(); ++i) visit(visit, i);

  // Anything depending on a cyclic certificate stays in the order and fails
  // for a missing dependency; cyclic ones are split out.
  std::vector<std::size_t> kept;
  for (std::size_t i : out.order) (cyclic[i] ? out.cyclic : kept).push_back(i);
  out.order = std::move(kept);
  std::sort(out.cyclic.begin(), out.cyclic.end());
  return out;
}

bool BundleResult::all_verified() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerificationReport& r) { return r.verified(); });
}

BundleResult verify_bundle(const std::vector<Certificate>& certs, int digits) {
  BundleResult out;
  const Ordering ord = topological_order(certs);
  std::set<std::string> seen;
  for (std::size_t i : ord.order) {
    if (!seen.insert(certs[i].id).second) {
      VerificationReport r;
      r.id = certs[i].id;
      r.context_checks.push_back(
          Check{"certificate id unique", certs[i].id, "earlier id", "!=", false, "", ""});
      r.summary = "duplicate id " + certs[i].id;
      out.reports.push_back(std::move(r));
      continue;
    }
    VerificationReport r = deduction::verify_and_register(certs[i], out.registry, digits);
    if (!r.verified()) {
      for (const auto& d : certs[i].dependencies) {
        if (!out.registry.contains(d)) {
          r.summary = blocked_summary(d);
          break;
        }
      }
    }
    out.reports.push_back(std::move(r));
  }
  for (std::size_t i : ord.cyclic) {
    VerificationReport r;
    r.id = certs[i].id;
    r.verdict = Verdict::Rejected;
    r.context_checks.push_back(
        Check{"dependency graph", certs[i].id, "acyclic", "is", false, "", ""});
    r.summary = "dependency cycle through " + certs[i].id;
    out.reports.push_back(std::move(r));
  }
  return out;
}

std::vector<Certificate> with_dependencies(const Certificate& cert,
                                           const std::vector<Certificate>& pool) {
  std::map<std::string, const Certificate*> by_id;
  for (const auto& c : pool) by_id.emplace(c.id, &c);
  std::set<std::string> seen{cert.id};
  std::vector<std::string> todo = cert.dependencies;
  std::vector<Certificate> out;
  while (!todo.empty()) {
    const std::string id = todo.back();
    todo.pop_back();
    if (!seen.insert(id).second) continue;
    const auto it = by_id.find(id);
    if (it == by_id.end()) continue;
    out.push_back(*it->second);
    for (const auto& d : it->second->dependencies) todo.push_back(d);
  }
  out.push_back(cert);
  return out;
}

std::optional<std::filesystem::path> resolve_cert_path(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) return fs::path(name);
  if (fs::path(name).is_absolute()) return std::nullopt;
  const char* env = std::getenv("RAMSEY_CERT_PATH");
  if (env == nullptr) return std::nullopt;
  std::stringstream dirs(env);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    const fs::path candidate = fs::path(dir) / name;
    if (fs::exists(candidate)) return candidate;
  }
  return std::nullopt;
}

}  // namespace ramsey::certs

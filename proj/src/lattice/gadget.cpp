#include <chrono>

#include "ramsey/lattice/lattice.hpp"

namespace ramsey::lattice {

namespace {

Check exact_check(std::string what, std::string lhs, std::string rhs,
                  std::string relation, bool pass) {
  return Check{std::move(what), lhs, rhs, std::move(relation), pass, lhs, rhs};
}

std::string describe(const LatticeColoring& c) {
  std::string reds;
  for (const auto& [p, col] : c) {
    if (col != Color::Red) continue;
    if (!reds.empty()) reds += " ";
    reds += to_string(p);
  }
  return "red points: " + (reds.empty() ? std::string("none") : reds);
}

void finish(StepReport& s) {
  s.status = StepStatus::Passed;
  for (const auto& c : s.checks) {
    if (!c.pass) s.status = StepStatus::Failed;
  }
  if (!s.error.empty()) s.status = StepStatus::Failed;
}

StepReport forced_step(const Gadget& g, const ForcedColors& f) {
  StepReport s;
  s.rule = g.probing ? "propagate_with_probing" : "propagate";
  const PropagationResult r = g.probing
                                  ? propagate_with_probing(g.patch, g.seed, g.rules)
                                  : propagate(g.patch, g.seed, g.rules);
  s.checks.push_back(exact_check(
      "fixpoint is consistent",
      r.contradiction() ? "contradiction at " + to_string(*r.conflict) : "consistent",
      "consistent", "=", !r.contradiction()));
  for (const auto& [name, p] : f.points) {
    std::string got = "undecided";
    if (auto it = r.coloring.find(p); it != r.coloring.end()) got = to_string(it->second);
    s.checks.push_back(exact_check("colour of " + name + to_string(p), got,
                                   to_string(f.color), "=", got == to_string(f.color)));
    s.produces.push_back(name);
  }
  return s;
}

StepReport unsat_step(const Gadget& g, std::string& summary) {
  StepReport s;
  s.rule = "enumerate";
  const EnumerationResult r = enumerate(g.patch, g.seed, g.rules, 1);
  const std::size_t n = r.colorings.size() + (r.limit_exceeded ? 1 : 0);
  s.checks.push_back(exact_check("total colourings", std::to_string(n), "0", "=", n == 0));
  if (n == 0) {
    summary = "UNSAT, nodes explored: " + std::to_string(r.nodes);
  } else {
    summary = "SAT, witness " + describe(r.colorings.front());
  }
  return s;
}

StepReport sat_step(const Gadget& g, const Satisfiable& e, std::string& summary) {
  StepReport s;
  s.rule = "enumerate";
  const EnumerationResult r = enumerate(g.patch, g.seed, g.rules, e.limit);
  const std::size_t n = r.colorings.size();
  s.checks.push_back(exact_check("total colourings", std::to_string(n), "1", ">=", n >= 1));
  summary = std::to_string(n) + (r.limit_exceeded ? "+" : "") +
            " colourings, nodes explored: " + std::to_string(r.nodes);
  return s;
}

StepReport core_step(const Gadget& g, const CoreMatchesPattern& e,
                     std::string& summary) {
  StepReport s;
  s.rule = "enumerate_core";
  if (!g.bounds) {
    s.error = "core comparison needs a rhombus patch";
    return s;
  }
  const auto [a0, a1, b0, b1] = *g.bounds;
  const EnumerationResult r = enumerate(g.patch, g.seed, g.rules, e.limit);
  const std::size_t n = r.colorings.size();
  s.checks.push_back(exact_check("total colourings", std::to_string(n), "1", ">=", n >= 1));
  s.checks.push_back(exact_check("enumeration complete",
                                 r.limit_exceeded ? "limit exceeded" : "complete",
                                 "complete", "=", !r.limit_exceeded));
  std::size_t mismatches = 0;
  std::string first;
  for (const auto& c : r.colorings) {
    for (const auto& [p, col] : c) {
      if (p.a < a0 + e.margin || p.a > a1 - e.margin || p.b < b0 + e.margin ||
          p.b > b1 - e.margin) {
        continue;
      }
      if (col != pattern_mod5(p)) {
        if (mismatches++ == 0) first = to_string(p);
      }
    }
  }
  s.checks.push_back(exact_check(
      "core points differing from the mod-5 pattern" +
          (first.empty() ? std::string() : " (first " + first + ")"),
      std::to_string(mismatches), "0", "=", mismatches == 0));
  summary = std::to_string(n) + " colourings, nodes explored: " + std::to_string(r.nodes);
  return s;
}

}  // namespace

VerificationReport verify_gadget(const Gadget& g) {
  VerificationReport rep;
  rep.id = g.name;
  const auto t0 = std::chrono::steady_clock::now();

  if (!g.distances.empty()) {
    StepReport s;
    s.rule = "lattice_distance";
    for (const auto& d : g.distances) {
      const long got = sqdist_lattice(d.p, d.q);
      s.checks.push_back(exact_check("sqdist(" + d.p_name + "," + d.q_name + ")",
                                     std::to_string(got), std::to_string(d.sq_dist),
                                     "=", got == d.sq_dist));
    }
    finish(s);
    rep.steps.push_back(std::move(s));
  }

  StepReport main;
  try {
    main = std::visit(
        [&](const auto& e) -> StepReport {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, ForcedColors>) {
            return forced_step(g, e);
          } else if constexpr (std::is_same_v<T, Unsatisfiable>) {
            return unsat_step(g, rep.summary);
          } else if constexpr (std::is_same_v<T, Satisfiable>) {
            return sat_step(g, e, rep.summary);
          } else {
            return core_step(g, e, rep.summary);
          }
        },
        g.expectation);
  } catch (const LatticeError& e) {
    main.rule = "lattice";
    main.error = e.what();
  }
  finish(main);
  rep.steps.push_back(std::move(main));

  bool ok = true;
  for (const auto& s : rep.steps) ok = ok && s.status == StepStatus::Passed;
  rep.verdict = ok ? Verdict::Verified : Verdict::Rejected;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

namespace {

LatticeRules track6(std::vector<RedDistanceRule> red) {
  LatticeRules r;
  r.red = std::move(red);
  r.ap_len = 6;
  return r;
}

LatticeRules fig8_rules() {
  return track6({{1, "base"}, {4, "l62"}, {9, "l63"}, {16, "l64"}});
}

LatticeColoring fig8_seed() {
  return {{{0, 0}, Color::Red}, {{-1, 2}, Color::Red}};
}

Gadget rhombus_gadget(std::string name, long a0, long a1, long b0, long b1) {
  Gadget g;
  g.name = std::move(name);
  g.patch = Patch::rhombus(a0, a1, b0, b1);
  g.bounds = std::array<long, 4>{a0, a1, b0, b1};
  return g;
}

}  // namespace

Gadget builtin_gadget(const std::string& name) {
  if (name == "fig8a") {
    Gadget g = rhombus_gadget(name, -8, 8, -8, 8);
    g.seed = fig8_seed();
    g.rules = fig8_rules();
    g.probing = true;
    g.expectation = ForcedColors{{{"A3", {-2, 4}}}, Color::Red};
    g.distances = {{"A1", "A2", {0, 0}, {-1, 2}, 3},
                   {"A2", "A3", {-1, 2}, {-2, 4}, 3},
                   {"A1", "Q3", {0, 0}, {-3, 3}, 9},
                   {"A1", "Q6", {0, 0}, {0, 3}, 9}};
    return g;
  }
  if (name == "fig8b") {
    Gadget g = rhombus_gadget(name, -8, 8, -8, 8);
    for (long i = 0; i < 5; ++i) g.seed[i * LatticePoint{-1, 2}] = Color::Red;
    g.rules = fig8_rules();
    g.expectation = ForcedColors{{{"P5", {0, 5}}, {"Q5", {1, 3}}}, Color::Red};
    g.distances = {{"P5", "Q5", {0, 5}, {1, 3}, 3}};
    return g;
  }
  if (name == "fig9") {
    std::vector<LatticePoint> pts{{0, 0}};
    for (long x = -2; x <= 3; ++x) pts.push_back({x, -1});
    for (long i = 1; i <= 6; ++i) {
      pts.push_back({-1, 3 - i});
      pts.push_back({i - 2, 3 - i});
    }
    Gadget g;
    g.name = name;
    g.patch = Patch(std::move(pts));
    g.seed = {{{0, 0}, Color::Red}};
    g.rules = track6({{1, "base"}, {3, "r3_pattern"}});
    g.expectation = Unsatisfiable{};
    return g;
  }
  if (name == "core15") {
    Gadget g = rhombus_gadget(name, -7, 7, -7, 7);
    g.seed = fig8_seed();
    g.rules = fig8_rules();
    g.expectation = CoreMatchesPattern{5, 16};
    return g;
  }
  throw LatticeError("unknown gadget: " + name);
}

std::vector<std::string> builtin_gadget_names() {
  return {"fig8a", "fig8b", "fig9", "core15"};
}

}  // namespace ramsey::lattice

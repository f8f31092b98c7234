// Acceptance run: one PASS/FAIL line per criterion. The first argument is
// the path of the ramsey command-line tool.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "mpfr_oracle.hpp"
#include "mutations.hpp"
#include "random_expr.hpp"
#include "ramsey/algebra/expr.hpp"
#include "ramsey/certs/bundle.hpp"
#include "ramsey/geometry/geometry.hpp"
#include "ramsey/lattice/lattice.hpp"

namespace {

using namespace ramsey;
using algebra::TowerElem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << " s";
  return os.str();
}

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run_command(const std::string& cmd) {
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.find(needle) != std::string::npos;
  return n;
}

TowerElem v(const char* s) { return algebra::parse_value(s); }

// 1
Outcome verify_all(const std::string& cli) {
  const auto t0 = Clock::now();
  const Run r = run_command("'" + cli + "' verify --all");
  const double t = seconds_since(t0);
  const std::size_t verified = count_lines_with(r.out, ": Verified");
  return {r.exit_code == 0 && verified == 10 && t < 10.0,
          "exit " + std::to_string(r.exit_code) + ", " + std::to_string(verified) +
              " verified, " + fmt_seconds(t)};
}

// 2
Outcome exact_inequalities() {
  const TowerElem R = v("sqrt(6+3*sqrt(3))");
  const TowerElem root3 = v("sqrt(3)");
  int ok = 0;
  int total = 0;
  auto want = [&](bool b) {
    ok += b;
    ++total;
  };
  want(algebra::cmp(-root3, R - TowerElem(5)) == algebra::Ordering::Less);
  want(algebra::cmp(R - TowerElem(2), root3) == algebra::Ordering::Less);
  const TowerElem radius = v("5*sqrt(3)/(2*sqrt(7))");
  want((radius * radius - TowerElem(algebra::Rat(75, 28))).sign() == 0);
  want(TowerElem(algebra::Rat(75, 28)) >= TowerElem(algebra::Rat(1, 4)));
  want(radius > TowerElem(1));
  // The swept annulus from the distance-3 argument has width exactly 2*sqrt(3).
  const geometry::RotationGroup axis({v("1"), v("0"), v("0")}, {v("4"), v("0"), v("0")});
  const geometry::Circle c{{v("5/2"), -root3, v("0")}, {v("1"), v("0"), v("0")}, v("55/4")};
  const auto swept = geometry::sweep_of(c, axis);
  const auto* ann = std::get_if<geometry::Annulus>(&swept);
  want(ann != nullptr && (ann->r_outer - ann->r_inner - TowerElem(2) * root3).sign() == 0);
  want(ann != nullptr && ann->r_inner == v("sqrt(55)/2-sqrt(3)"));
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " exact sign checks"};
}

bool report_has_red(const VerificationReport& r, const std::string& name) {
  for (const auto& s : r.steps) {
    for (const auto& c : s.checks) {
      if (c.what.rfind("colour of " + name, 0) == 0) return c.pass && c.lhs == "red";
    }
  }
  return false;
}

// 3
Outcome fig8() {
  std::string detail;
  bool pass = true;
  for (const char* name : {"fig8a", "fig8b"}) {
    const auto g = lattice::builtin_gadget(name);
    const auto t0 = Clock::now();
    const auto r = lattice::verify_gadget(g);
    const double t = seconds_since(t0);
    bool forced = false;
    if (std::string(name) == "fig8a") {
      forced = report_has_red(r, "A3") && g.patch.index_of({-2, 4}).has_value();
    } else {
      forced = report_has_red(r, "P5") && report_has_red(r, "Q5") &&
               lattice::sqdist_lattice({0, 5}, {1, 3}) == 3;
    }
    const bool radius8 = g.bounds && (*g.bounds)[0] == -8 && (*g.bounds)[1] == 8;
    pass = pass && r.verified() && forced && radius8 && t < 1.0;
    detail += std::string(detail.empty() ? "" : "; ") + name + " " +
              (r.verified() && forced ? "forced" : "not forced") + " in " + fmt_seconds(t);
  }
  return {pass, detail};
}

// 4
Outcome fig9() {
  const auto g = lattice::builtin_gadget("fig9");
  const auto t0 = Clock::now();
  const auto r = lattice::enumerate(g.patch, g.seed, g.rules, 1000);
  const double t = seconds_since(t0);
  const std::size_t n = r.colorings.size();
  // Any one extra nearby point keeps the set unsatisfiable.
  std::size_t supersets = 0, unsat_supersets = 0;
  for (long a = -4; a <= 4; ++a) {
    for (long b = -4; b <= 4; ++b) {
      if (g.patch.index_of({a, b})) continue;
      auto pts = g.patch.points();
      pts.push_back({a, b});
      const auto e = lattice::enumerate(lattice::Patch(pts), g.seed, g.rules, 1);
      ++supersets;
      unsat_supersets += e.colorings.empty();
    }
  }
  const bool pass = n == 0 && !r.limit_exceeded && t < 1.0 && unsat_supersets == supersets;
  return {pass, std::to_string(n) + " colourings of the " + std::to_string(g.patch.size()) +
                    "-point set in " + fmt_seconds(t) + "; " + std::to_string(unsat_supersets) +
                    "/" + std::to_string(supersets) + " one-point extensions also UNSAT"};
}

// 5
Outcome pattern() {
  const auto t0 = Clock::now();
  const bool periodic = lattice::check_pattern(lattice::pattern_mod5, 5, {1, 4, 9, 16}, 5);
  const auto pair = lattice::find_red_pair(lattice::pattern_mod5, 5, 3);
  const auto core = lattice::verify_gadget(lattice::builtin_gadget("core15"));
  const double t = seconds_since(t0);
  return {periodic && pair && core.verified() && t < 30.0,
          std::string("check_pattern ") + (periodic ? "true" : "false") + ", red pair at 3: " +
              (pair ? lattice::to_string(pair->first) + "-" + lattice::to_string(pair->second)
                    : "none") +
              ", 15x15 core " + (core.verified() ? "matches" : "differs") + " (" + core.summary +
              "), " + fmt_seconds(t)};
}

// 6
Outcome mutations() {
  const auto ms = testing::curated_mutations();
  std::size_t rejected = 0;
  std::set<std::string> certs_hit, kinds;
  std::string first_bad;
  for (const auto& m : ms) {
    const auto o = testing::run_mutation(m);
    if (o.loaded && o.rejected && o.failing_check) {
      ++rejected;
    } else if (first_bad.empty()) {
      first_bad = m.label();
    }
    certs_hit.insert(m.cert);
    kinds.insert(m.kind);
  }
  const bool pass = ms.size() >= 20 && rejected == ms.size() &&
                    certs_hit.size() == certs::builtin_ids().size() && kinds.size() == 3;
  return {pass, std::to_string(rejected) + "/" + std::to_string(ms.size()) +
                    " rejected with a failing comparison across " +
                    std::to_string(certs_hit.size()) + " certificates" +
                    (first_bad.empty() ? "" : "; survived: " + first_bad)};
}

// 7
Outcome oracle_agreement() {
  testing::ExprGenerator gen(31337);
  int checked = 0, disagreements = 0;
  while (checked < 1000) {
    const auto a = gen.any(3, 2);
    const auto b = gen.any(3, 2);
    const auto expected = oracle::compare(a, b);
    if (!expected) continue;
    const auto got = algebra::cmp(algebra::evaluate(a), algebra::evaluate(b));
    disagreements += got != (*expected > 0 ? algebra::Ordering::Greater : algebra::Ordering::Less);
    ++checked;
  }
  int failures = 0, axioms = 0;
  auto same = [&](const TowerElem& x, const TowerElem& y) {
    ++axioms;
    failures += (x - y).sign() != 0;
  };
  for (int i = 0; i < 150; ++i) {
    const TowerElem x = algebra::evaluate(gen.any(2, 3));
    const TowerElem y = algebra::evaluate(gen.any(2, 3));
    const TowerElem z = algebra::evaluate(gen.any(2, 3));
    same((x + y) + z, x + (y + z));
    same((x * y) * z, x * (y * z));
    same(x + y, y + x);
    same(x * y, y * x);
    same(x * (y + z), x * y + x * z);
    same(x + (-x), TowerElem(0));
    if (x.sign() != 0) same(x * (TowerElem(1) / x), TowerElem(1));
  }
  return {disagreements == 0 && failures == 0,
          std::to_string(checked) + " cmp calls, " + std::to_string(disagreements) +
              " disagreements; " + std::to_string(axioms) + " axiom instances, " +
              std::to_string(failures) + " failures"};
}

// 8
Outcome determinism(const std::string& cli) {
  const Run a = run_command("'" + cli + "' --json verify --all");
  const Run b = run_command("'" + cli + "' --json verify --all");
  return {a.exit_code == 0 && !a.out.empty() && a.out == b.out,
          std::to_string(a.out.size()) + " bytes, " + (a.out == b.out ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to ramsey>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"verify --all", [&] { return verify_all(cli); }},
      {"exact inequalities", exact_inequalities},
      {"fig8 fixpoints", fig8},
      {"fig9 unsatisfiable", fig9},
      {"mod-5 pattern", pattern},
      {"mutation suite", mutations},
      {"algebra oracle", oracle_agreement},
      {"deterministic JSON", [&] { return determinism(cli); }},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << ++n << ". " << name << ": " << o.detail
              << "\n";
  }
  return failed == 0 ? 0 : 1;
}

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ramsey/certs/bundle.hpp"
#include "ramsey/certs/format.hpp"
#include "ramsey/certs/report_format.hpp"
#include "ramsey/lattice/lattice.hpp"

namespace {

using namespace ramsey;
using certs::Json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  bool timing = false;
  int digits = 6;

  certs::EmitOptions emit() const { return {json, timing}; }
};

int print_bundle(const certs::BundleResult& r, const Options& o) {
  std::cout << certs::emit_reports(r.reports, o.emit());
  return r.all_verified() ? kOk : kFailed;
}

deduction::Certificate find_certificate(const std::string& name) {
  if (const auto src = certs::builtin_source(name)) return certs::load_certificate(*src);
  const auto path = certs::resolve_cert_path(name);
  if (!path) throw UsageError("no builtin certificate or file named '" + name + "'");
  return certs::load_certificate_file(*path);
}

int verify_one(const deduction::Certificate& cert, const Options& o) {
  std::vector<deduction::Certificate> pool;
  for (auto& c : certs::builtin_bundle()) {
    if (c.id != cert.id) pool.push_back(std::move(c));
  }
  return print_bundle(certs::verify_bundle(certs::with_dependencies(cert, pool), o.digits), o);
}

std::pair<long, long> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("range '" + s + "' is not lo:hi");
  try {
    std::size_t n1 = 0, n2 = 0;
    const long lo = std::stol(s.substr(0, colon), &n1);
    const long hi = std::stol(s.substr(colon + 1), &n2);
    if (n1 != colon || n2 != s.size() - colon - 1 || lo > hi) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("bad range '" + s + "'");
  }
}

lattice::Patch parse_patch(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("patch must be a0:a1,b0:b1");
  const auto [a0, a1] = parse_range(s.substr(0, comma));
  const auto [b0, b1] = parse_range(s.substr(comma + 1));
  return lattice::Patch::rhombus(a0, a1, b0, b1);
}

struct SeedFile {
  lattice::LatticeColoring seed;
  lattice::LatticeRules rules;
};

// {"apLen": 6, "sqDists": [1, 4, 9, 16], "seed": [{"point": [0, 0], "color": "red"}]}
SeedFile read_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  SeedFile out;
  try {
    const Json j = certs::parse_json(buf.str());
    for (const auto& [key, v] : j.items()) {
      if (key != "apLen" && key != "sqDists" && key != "seed") {
        throw UsageError(path + ": unknown key '" + key + "'");
      }
    }
    out.rules.ap_len = j.at("apLen").get<int>();
    for (long sq : j.at("sqDists")) out.rules.red.push_back({sq, "seed file"});
    for (const auto& e : j.at("seed")) {
      const auto c = parse_color(e.at("color").get<std::string>());
      if (!c) throw UsageError(path + ": bad colour in seed");
      const lattice::LatticePoint p{e.at("point").at(0).get<long>(), e.at("point").at(1).get<long>()};
      if (!out.seed.emplace(p, *c).second) throw UsageError(path + ": seed point listed twice");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  out.rules.validate();
  return out;
}

int lattice_enumerate(const std::string& patch_arg, const std::string& seed_path,
                      std::size_t limit, const Options& o) {
  const lattice::Patch patch = parse_patch(patch_arg);
  const SeedFile sf = read_seed_file(seed_path);
  const auto r = lattice::enumerate(patch, sf.seed, sf.rules, limit);
  if (o.json) {
    Json j;
    j["patch"] = patch_arg;
    j["colorings"] = r.colorings.size();
    j["limitExceeded"] = r.limit_exceeded;
    j["nodes"] = r.nodes;
    Json all = Json::array();
    for (const auto& c : r.colorings) {
      Json reds = Json::array();
      for (const auto& [p, col] : c) {
        if (col == Color::Red) reds.push_back({p.a, p.b});
      }
      all.push_back(reds);
    }
    j["red"] = all;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << r.colorings.size() << (r.limit_exceeded ? "+" : "")
            << " colourings, nodes explored: " << r.nodes << "\n";
  std::size_t i = 0;
  for (const auto& c : r.colorings) {
    std::cout << "  " << ++i << ": red";
    for (const auto& [p, col] : c) {
      if (col == Color::Red) std::cout << " " << lattice::to_string(p);
    }
    std::cout << "\n";
  }
  return kOk;
}

int lattice_gadget(const std::string& name, const Options& o) {
  const auto rep = lattice::verify_gadget(lattice::builtin_gadget(name));
  std::cout << certs::emit_report(rep, o.emit());
  return rep.verified() ? kOk : kFailed;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact checker for Euclidean Ramsey certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Machine-readable report on stdout");
  app.add_flag("--timing", o.timing, "Include wall time in reports");
  app.add_option("--digits", o.digits, "Decimal digits in reports")->check(CLI::Range(1, 200));

  auto* verify = app.add_subcommand("verify", "Verify certificates and their dependencies");
  bool all = false;
  std::string builtin, cert_file;
  auto* all_opt = verify->add_flag("--all", all, "Verify every builtin certificate");
  auto* builtin_opt = verify->add_option("--builtin", builtin, "Builtin certificate id");
  auto* cert_opt = verify->add_option("--cert", cert_file, "Certificate file");
  all_opt->excludes(builtin_opt, cert_opt);
  builtin_opt->excludes(cert_opt);
  verify->require_option(1);

  auto* lat = app.add_subcommand("lattice", "Triangular lattice tools");
  lat->require_subcommand(1);
  lat->fallthrough();
  auto* en = lat->add_subcommand("enumerate", "Enumerate colourings of a rhombus patch");
  std::string patch_arg, seed_path;
  std::size_t limit = 100;
  en->add_option("--patch", patch_arg, "a0:a1,b0:b1")->required();
  en->add_option("--seed", seed_path, "Seed and rules JSON file")->required();
  en->add_option("--limit", limit, "Maximum colourings listed");
  auto* gadget = lat->add_subcommand("gadget", "Check a builtin lattice gadget");
  std::string gadget_name;
  gadget->add_option("name", gadget_name, "Gadget")
      ->required()
      ->check(CLI::IsMember(lattice::builtin_gadget_names()));

  auto* explain = app.add_subcommand("explain", "Print a certificate's steps");
  std::string explain_id;
  explain->add_option("id", explain_id, "Builtin id or certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) {
      if (all) return print_bundle(certs::verify_bundle(certs::builtin_bundle(), o.digits), o);
      if (!builtin.empty()) {
        const auto src = certs::builtin_source(builtin);
        if (!src) throw UsageError("unknown builtin certificate '" + builtin + "'");
        return verify_one(certs::load_certificate(*src), o);
      }
      const auto path = certs::resolve_cert_path(cert_file);
      if (!path) throw UsageError("certificate file '" + cert_file + "' not found");
      return verify_one(certs::load_certificate_file(*path), o);
    }
    if (*en) return lattice_enumerate(patch_arg, seed_path, limit, o);
    if (*gadget) return lattice_gadget(gadget_name, o);
    if (*explain) {
      const auto cert = find_certificate(explain_id);
      if (o.json) {
        std::cout << certs::serialize(cert).dump(2) << "\n";
      } else {
        std::cout << certs::explain(cert, o.digits);
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const certs::CertificateError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kUsage;
  } catch (const lattice::LatticeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

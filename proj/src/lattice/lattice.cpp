#include "ramsey/lattice/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>

namespace ramsey::lattice {

LatticePoint operator+(LatticePoint p, LatticePoint q) {
  return {p.a + q.a, p.b + q.b};
}

LatticePoint operator-(LatticePoint p, LatticePoint q) {
  return {p.a - q.a, p.b - q.b};
}

LatticePoint operator*(long k, LatticePoint p) { return {k * p.a, k * p.b}; }

std::string to_string(LatticePoint p) {
  return "(" + std::to_string(p.a) + "," + std::to_string(p.b) + ")";
}

long sqdist_lattice(LatticePoint p, LatticePoint q) {
  const long da = p.a - q.a;
  const long db = p.b - q.b;
  return da * da + da * db + db * db;
}

void LatticeRules::validate() const {
  if (ap_len != 5 && ap_len != 6) {
    throw LatticeError("blue progression length must be 5 or 6, got " +
                       std::to_string(ap_len));
  }
  bool has_unit = false;
  for (const auto& r : red) {
    if (r.sq_dist <= 0) {
      throw LatticeError("forbidden squared distance must be positive");
    }
    has_unit = has_unit || r.sq_dist == 1;
  }
  if (!has_unit) throw LatticeError("squared distance 1 must be forbidden");
}

std::vector<long> LatticeRules::sq_dists() const {
  std::set<long> s;
  for (const auto& r : red) s.insert(r.sq_dist);
  return {s.begin(), s.end()};
}

Patch::Patch(std::vector<LatticePoint> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

Patch Patch::rhombus(long a0, long a1, long b0, long b1) {
  if (a0 > a1 || b0 > b1) throw LatticeError("empty rhombus range");
  std::vector<LatticePoint> pts;
  for (long a = a0; a <= a1; ++a) {
    for (long b = b0; b <= b1; ++b) pts.push_back({a, b});
  }
  return Patch(std::move(pts));
}

std::optional<std::size_t> Patch::index_of(LatticePoint p) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

bool Patch::contains(LatticePoint p) const { return index_of(p).has_value(); }

namespace {

/// All lattice vectors of the given squared norm.
std::vector<LatticePoint> vectors_of_norm(long sq) {
  const long r = static_cast<long>(std::sqrt(4.0 * static_cast<double>(sq) / 3.0)) + 1;
  std::vector<LatticePoint> out;
  for (long a = -r; a <= r; ++a) {
    for (long b = -r; b <= r; ++b) {
      if (a * a + a * b + b * b == sq) out.push_back({a, b});
    }
  }
  return out;
}

enum : unsigned char { kUnknown = 0, kRed = 1, kBlue = 2 };

unsigned char code(Color c) { return c == Color::Red ? kRed : kBlue; }

/// The patch compiled into index lists.
class Engine {
 public:
  Engine(const Patch& patch, const LatticeRules& rules)
      : patch_(patch), k_(rules.ap_len), neighbors_(patch.size()),
        windows_of_(patch.size()) {
    rules.validate();
    const auto& pts = patch.points();
    std::vector<LatticePoint> offsets;
    for (long sq : rules.sq_dists()) {
      const auto v = vectors_of_norm(sq);
      offsets.insert(offsets.end(), v.begin(), v.end());
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (const auto& off : offsets) {
        if (auto j = patch.index_of(pts[i] + off)) neighbors_[i].push_back(*j);
      }
      for (const auto& d : kDirections) {
        std::vector<std::size_t> w{i};
        for (long s = 1; s < k_; ++s) {
          auto j = patch.index_of(pts[i] + s * d);
          if (!j) break;
          w.push_back(*j);
        }
        if (static_cast<long>(w.size()) != k_) continue;
        for (std::size_t j : w) windows_of_[j].push_back(windows_.size());
        windows_.push_back(std::move(w));
      }
    }
  }

  std::vector<unsigned char> initial(const LatticeColoring& seed,
                                     std::vector<std::size_t>& pending) const {
    std::vector<unsigned char> col(patch_.size(), kUnknown);
    for (const auto& [p, c] : seed) {
      const auto i = patch_.index_of(p);
      if (!i) throw LatticeError("seed point " + to_string(p) + " is outside the patch");
      col[*i] = code(c);
      pending.push_back(*i);
    }
    return col;
  }

  /// Runs to the fixpoint. Returns the index of a doubly forced point, if
  /// any. With an rng, pending points are taken in random order.
  std::optional<std::size_t> run(std::vector<unsigned char>& col,
                                 std::deque<std::size_t> pending,
                                 std::mt19937_64* rng = nullptr) const {
    auto assign = [&](std::size_t j, unsigned char c) {
      if (col[j] == c) return true;
      if (col[j] != kUnknown) return false;
      col[j] = c;
      pending.push_back(j);
      return true;
    };
    while (!pending.empty()) {
      std::size_t i;
      if (rng != nullptr) {
        std::uniform_int_distribution<std::size_t> pick(0, pending.size() - 1);
        const auto it = pending.begin() + static_cast<long>(pick(*rng));
        i = *it;
        pending.erase(it);
      } else {
        i = pending.front();
        pending.pop_front();
      }
      if (col[i] == kRed) {
        for (std::size_t j : neighbors_[i]) {
          if (!assign(j, kBlue)) return j;
        }
      }
      for (std::size_t w : windows_of_[i]) {
        long blue = 0;
        long unknown = 0;
        std::size_t open = 0;
        for (std::size_t j : windows_[w]) {
          if (col[j] == kBlue) ++blue;
          if (col[j] == kUnknown) {
            ++unknown;
            open = j;
          }
        }
        if (blue == k_) return i;
        if (blue == k_ - 1 && unknown == 1 && !assign(open, kRed)) return open;
      }
    }
    return std::nullopt;
  }

  PropagationResult result(const std::vector<unsigned char>& col,
                           std::optional<std::size_t> conflict) const {
    PropagationResult r;
    if (conflict) {
      r.conflict = patch_.points()[*conflict];
      return r;
    }
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] != kUnknown) {
        r.coloring[patch_.points()[i]] = col[i] == kRed ? Color::Red : Color::Blue;
      }
    }
    return r;
  }

  /// Failed-literal probing on top of run(). Returns a conflict index if the
  /// state is contradictory.
  std::optional<std::size_t> probe(std::vector<unsigned char>& col) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < col.size(); ++i) {
        if (col[i] != kUnknown) continue;
        for (unsigned char c : {kRed, kBlue}) {
          auto trial = col;
          trial[i] = c;
          if (!run(trial, {i})) continue;
          const unsigned char other = c == kRed ? kBlue : kRed;
          col[i] = other;
          if (auto bad = run(col, {i})) return bad;
          changed = true;
          break;
        }
      }
    }
    return std::nullopt;
  }

  void dfs(std::vector<unsigned char>& col, std::size_t limit,
           EnumerationResult& out) const {
    ++out.nodes;
    const auto it = std::find(col.begin(), col.end(), kUnknown);
    if (it == col.end()) {
      if (out.colorings.size() == limit) {
        out.limit_exceeded = true;
        return;
      }
      out.colorings.push_back(result(col, std::nullopt).coloring);
      return;
    }
    const auto i = static_cast<std::size_t>(it - col.begin());
    for (unsigned char c : {kBlue, kRed}) {
      auto next = col;
      next[i] = c;
      if (run(next, {i})) continue;
      dfs(next, limit, out);
      if (out.limit_exceeded) return;
    }
  }

 private:
  const Patch& patch_;
  long k_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::vector<std::size_t>> windows_;
  std::vector<std::vector<std::size_t>> windows_of_;
};

PropagationResult propagate_impl(const Patch& patch, const LatticeColoring& seed,
                                 const LatticeRules& rules,
                                 std::mt19937_64* rng) {
  const Engine engine(patch, rules);
  std::vector<std::size_t> pending;
  auto col = engine.initial(seed, pending);
  auto conflict = engine.run(col, {pending.begin(), pending.end()}, rng);
  return engine.result(col, conflict);
}

}  // namespace

PropagationResult propagate(const Patch& patch, const LatticeColoring& seed,
                            const LatticeRules& rules) {
  return propagate_impl(patch, seed, rules, nullptr);
}

PropagationResult propagate_shuffled(const Patch& patch,
                                     const LatticeColoring& seed,
                                     const LatticeRules& rules,
                                     std::uint64_t shuffle_seed) {
  std::mt19937_64 rng(shuffle_seed);
  return propagate_impl(patch, seed, rules, &rng);
}

PropagationResult propagate_with_probing(const Patch& patch,
                                         const LatticeColoring& seed,
                                         const LatticeRules& rules) {
  const Engine engine(patch, rules);
  std::vector<std::size_t> pending;
  auto col = engine.initial(seed, pending);
  auto conflict = engine.run(col, {pending.begin(), pending.end()});
  if (!conflict) conflict = engine.probe(col);
  return engine.result(col, conflict);
}

EnumerationResult enumerate(const Patch& patch, const LatticeColoring& seed,
                            const LatticeRules& rules, std::size_t limit) {
  if (limit < 1) throw LatticeError("enumeration limit must be at least 1");
  const Engine engine(patch, rules);
  std::vector<std::size_t> pending;
  auto col = engine.initial(seed, pending);
  EnumerationResult out;
  if (engine.run(col, {pending.begin(), pending.end()})) {
    out.nodes = 1;
    return out;
  }
  engine.dfs(col, limit, out);
  return out;
}

Color pattern_mod5(LatticePoint p) {
  const long r = ((2 * p.a + p.b) % 5 + 5) % 5;
  return r == 0 ? Color::Red : Color::Blue;
}

bool check_pattern(const PatternFn& pattern, long period,
                   const std::vector<long>& sq_dists, int ap_len) {
  if (period < 1) throw LatticeError("pattern period must be positive");
  for (long sq : sq_dists) {
    if (find_red_pair(pattern, period, sq)) return false;
  }
  for (long a = 0; a < period; ++a) {
    for (long b = 0; b < period; ++b) {
      for (const auto& d : kDirections) {
        bool has_red = false;
        for (long s = 0; s < ap_len && !has_red; ++s) {
          has_red = pattern(LatticePoint{a, b} + s * d) == Color::Red;
        }
        if (!has_red) return false;
      }
    }
  }
  return true;
}

std::optional<std::pair<LatticePoint, LatticePoint>> find_red_pair(
    const PatternFn& pattern, long period, long sq_dist) {
  const auto offsets = vectors_of_norm(sq_dist);
  for (long a = 0; a < period; ++a) {
    for (long b = 0; b < period; ++b) {
      const LatticePoint p{a, b};
      if (pattern(p) != Color::Red) continue;
      for (const auto& off : offsets) {
        if (pattern(p + off) == Color::Red) return std::pair{p, p + off};
      }
    }
  }
  return std::nullopt;
}

}  // namespace ramsey::lattice

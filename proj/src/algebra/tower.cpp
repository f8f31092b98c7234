#include "ramsey/algebra/tower.hpp"

#include <bit>
#include <cassert>
#include <utility>

namespace ramsey::algebra {

namespace {

using Coeffs = std::vector<Rat>;
using View = std::span<const Rat>;

std::size_t level_of(View x) {
  return static_cast<std::size_t>(std::countr_zero(x.size()));
}

int rat_sign(const Rat& q) { return sgn(q); }

bool structurally_zero(View x) {
  for (const auto& c : x) {
    if (c != 0) return false;
  }
  return true;
}

Coeffs add(View x, View y) {
  Coeffs r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

Coeffs sub(View x, View y) {
  Coeffs r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

Coeffs negate(View x) {
  Coeffs r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
  return r;
}

Coeffs concat(Coeffs lo, const Coeffs& hi) {
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

// (a + b√d)(c + e√d) = (ac + be·d) + (ae + bc)√d, recursively.
Coeffs mul(const Tower& t, View x, View y) {
  if (x.size() == 1) return {x[0] * y[0]};
  const std::size_t h = x.size() / 2;
  const std::size_t n = level_of(x);
  View a = x.first(h), b = x.subspan(h), c = y.first(h), e = y.subspan(h);
  Coeffs lo = mul(t, a, c);
  if (!structurally_zero(b) && !structurally_zero(e) &&
      !t.radicand_is_zero(n - 1)) {
    Coeffs be = mul(t, b, e);
    lo = add(lo, mul(t, be, t.radicand(n - 1)));
  }
  Coeffs hi = add(mul(t, a, e), mul(t, b, c));
  return concat(std::move(lo), hi);
}

int sign_of(const Tower& t, View x) {
  if (x.size() == 1) return rat_sign(x[0]);
  const std::size_t h = x.size() / 2;
  const std::size_t n = level_of(x);
  View a = x.first(h), b = x.subspan(h);
  if (t.radicand_is_zero(n - 1) || structurally_zero(b)) return sign_of(t, a);
  const int sb = sign_of(t, b);
  if (sb == 0) return sign_of(t, a);
  const int sa = sign_of(t, a);
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a² with b²·d.
  Coeffs aa = mul(t, a, a);
  Coeffs bbd = mul(t, mul(t, b, b), t.radicand(n - 1));
  const int s = sign_of(t, sub(aa, bbd));
  if (s == 0) return 0;
  return s > 0 ? sa : -sa;
}

Coeffs inverse(const Tower& t, View x) {
  if (x.size() == 1) {
    if (x[0] == 0) throw AlgebraError("division by zero");
    return {Rat(1) / x[0]};
  }
  const std::size_t h = x.size() / 2;
  const std::size_t n = level_of(x);
  View a = x.first(h), b = x.subspan(h);
  if (structurally_zero(b) || t.radicand_is_zero(n - 1)) {
    return concat(inverse(t, a), Coeffs(h));
  }
  const Coeffs& d = t.radicand(n - 1);
  Coeffs norm = sub(mul(t, a, a), mul(t, mul(t, b, b), d));
  if (sign_of(t, norm) != 0) {
    Coeffs inv_norm = inverse(t, norm);
    return concat(mul(t, a, inv_norm), mul(t, negate(b), inv_norm));
  }
  // a² = b²·d with b ≠ 0: d is the square of a/b in the subfield, so √d is
  // |a/b| and x collapses to a + b·|a/b| one level down.
  if (sign_of(t, b) == 0) {
    if (sign_of(t, a) == 0) throw AlgebraError("division by zero");
    return concat(inverse(t, a), Coeffs(h));
  }
  Coeffs root = mul(t, a, inverse(t, b));
  if (sign_of(t, root) < 0) root = negate(root);
  Coeffs collapsed = add(a, mul(t, b, root));
  return concat(inverse(t, collapsed), Coeffs(h));
}

Coeffs pad(View x, std::size_t size) {
  Coeffs r(x.begin(), x.end());
  r.resize(size);
  return r;
}

Coeffs basis(std::size_t level, std::size_t size) {
  Coeffs r(size);
  r[std::size_t{1} << level] = 1;
  return r;
}

// Re-expresses coefficients over tower `from` (first level_of(x) levels) in
// tower `to`, where level j of `from` maps to level map[j] of `to`.
Coeffs lift(const Tower& to, View x, const std::vector<std::size_t>& map) {
  const std::size_t size = std::size_t{1} << to.depth();
  if (x.size() == 1) return pad(x, size);
  const std::size_t h = x.size() / 2;
  const std::size_t n = level_of(x);
  Coeffs lo = lift(to, x.first(h), map);
  View hi = x.subspan(h);
  if (structurally_zero(hi)) return lo;
  Coeffs hi_lifted = lift(to, hi, map);
  return add(lo, mul(to, hi_lifted, basis(map[n - 1], size)));
}

// Smallest prefix depth holding every nonzero coefficient.
std::size_t used_depth(View x) {
  std::size_t last = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) last = i;
  }
  return last == 0 ? 0 : static_cast<std::size_t>(std::bit_width(last));
}

std::optional<Rat> rational_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 ||
      mpz_perfect_square_p(d.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tower

const TowerPtr& Tower::rationals() {
  static const TowerPtr base = [] {
    return TowerPtr(new Tower());
  }();
  return base;
}

TowerPtr Tower::extend(const TowerPtr& base, std::vector<Rat> radicand) {
  assert(radicand.size() == (std::size_t{1} << base->depth()));
  auto t = std::shared_ptr<Tower>(new Tower());
  t->parent_ = base;
  t->depth_ = base->depth_ + 1;
  t->radicand_zero_ = sign_of(*base, radicand) == 0;
  t->radicand_ = std::move(radicand);
  t->chain_ = base->chain_;
  t->chain_.push_back(t.get());
  return t;
}

const std::vector<Rat>& Tower::radicand(std::size_t level) const {
  return chain_.at(level)->radicand_;
}

bool Tower::radicand_is_zero(std::size_t level) const {
  return chain_.at(level)->radicand_zero_;
}

const Tower* Tower::prefix(std::size_t depth) const {
  if (depth == 0) return rationals().get();
  return chain_.at(depth - 1);
}

bool Tower::extends(const Tower* other) const {
  if (other->depth_ > depth_) return false;
  return prefix(other->depth_) == other;
}

// ---------------------------------------------------------------------------
// TowerElem

TowerElem::TowerElem() : tower_(Tower::rationals()), coeffs_{Rat(0)} {}

TowerElem::TowerElem(long value)
    : tower_(Tower::rationals()), coeffs_{Rat(value)} {}

TowerElem::TowerElem(Rat value)
    : tower_(Tower::rationals()), coeffs_{std::move(value)} {
  coeffs_[0].canonicalize();
}

TowerElem::TowerElem(TowerPtr tower, std::vector<Rat> coefficients)
    : tower_(std::move(tower)), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != (std::size_t{1} << tower_->depth())) {
    throw AlgebraError("coefficient count does not match tower depth");
  }
}

int TowerElem::sign() const { return sign_of(*tower_, coeffs_); }

std::optional<Rat> TowerElem::as_rational() const {
  if (!structurally_zero(View(coeffs_).subspan(1))) return std::nullopt;
  return coeffs_[0];
}

TowerElem TowerElem::operator-() const { return {tower_, negate(coeffs_)}; }

std::pair<TowerElem, TowerElem> unify(const TowerElem& x, const TowerElem& y) {
  const Tower* tx = x.tower().get();
  const Tower* ty = y.tower().get();
  if (tx == ty) return {x, y};
  if (tx->extends(ty)) {
    return {x, TowerElem(x.tower(), pad(y.coefficients(), x.coefficients().size()))};
  }
  if (ty->extends(tx)) {
    return {TowerElem(y.tower(), pad(x.coefficients(), y.coefficients().size())), y};
  }
  // General case: append y's radicands to x's tower, reusing equal ones.
  TowerPtr merged = x.tower();
  std::vector<std::size_t> map;
  for (std::size_t j = 0; j < ty->depth(); ++j) {
    Coeffs rad = lift(*merged, ty->radicand(j), map);
    const std::size_t size = rad.size();
    std::optional<std::size_t> found;
    for (std::size_t k = 0; k < merged->depth() && !found; ++k) {
      Coeffs existing = pad(merged->radicand(k), size);
      if (existing == rad || sign_of(*merged, sub(existing, rad)) == 0) {
        found = k;
      }
    }
    if (found) {
      map.push_back(*found);
    } else {
      merged = Tower::extend(merged, std::move(rad));
      map.push_back(merged->depth() - 1);
    }
  }
  const std::size_t size = std::size_t{1} << merged->depth();
  TowerElem xl(merged, pad(x.coefficients(), size));
  TowerElem yl(merged, lift(*merged, y.coefficients(), map));
  return {std::move(xl), std::move(yl)};
}

TowerElem operator+(const TowerElem& x, const TowerElem& y) {
  auto [a, b] = unify(x, y);
  return {a.tower(), add(a.coefficients(), b.coefficients())};
}

TowerElem operator-(const TowerElem& x, const TowerElem& y) {
  auto [a, b] = unify(x, y);
  return {a.tower(), sub(a.coefficients(), b.coefficients())};
}

TowerElem operator*(const TowerElem& x, const TowerElem& y) {
  auto [a, b] = unify(x, y);
  return {a.tower(), mul(*a.tower(), a.coefficients(), b.coefficients())};
}

TowerElem operator/(const TowerElem& x, const TowerElem& y) {
  auto [a, b] = unify(x, y);
  Coeffs inv = inverse(*b.tower(), b.coefficients());
  return {a.tower(), mul(*a.tower(), a.coefficients(), inv)};
}

bool operator==(const TowerElem& x, const TowerElem& y) {
  return (x - y).sign() == 0;
}

std::strong_ordering operator<=>(const TowerElem& x, const TowerElem& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

TowerElem TowerElem::sqrt(const TowerElem& x) {
  const int s = x.sign();
  if (s < 0) throw AlgebraError("square root of a negative value");
  if (s == 0) return TowerElem();
  if (auto q = x.as_rational()) {
    if (auto r = rational_sqrt(*q)) return TowerElem(*r);
  }
  // Adjoin over the shortest prefix that holds x.
  const std::size_t depth = used_depth(x.coefficients());
  const Tower* base = x.tower()->prefix(depth);
  View value = x.coefficients().first(std::size_t{1} << depth);
  for (std::size_t k = 0; k < x.tower()->depth(); ++k) {
    Coeffs rad = pad(x.tower()->radicand(k), x.coefficients().size());
    if (sign_of(*x.tower(), sub(rad, x.coefficients())) == 0) {
      return {x.tower(), basis(k, x.coefficients().size())};
    }
  }
  TowerPtr base_ptr = depth == 0 ? Tower::rationals()
                                 : TowerPtr(x.tower(), base);
  TowerPtr t = Tower::extend(base_ptr, Coeffs(value.begin(), value.end()));
  return {t, basis(depth, std::size_t{1} << t->depth())};
}

std::string TowerElem::to_string() const {
  // a + b·√d rendered recursively; zero parts are dropped.
  struct Render {
    const Tower& t;
    static std::string rat(const Rat& q) { return q.get_str(); }
    std::string operator()(View x) const {
      if (x.size() == 1) return rat(x[0]);
      const std::size_t h = x.size() / 2;
      const std::size_t n = level_of(x);
      View a = x.first(h), b = x.subspan(h);
      if (structurally_zero(b)) return (*this)(a);
      const std::string root = "sqrt(" + (*this)(t.radicand(n - 1)) + ")";
      std::string term;
      if (used_depth(b) == 0) {
        if (b[0] == 1) {
          term = root;
        } else if (b[0] == -1) {
          term = "-" + root;
        } else {
          term = rat(b[0]) + "*" + root;
        }
      } else {
        term = "(" + (*this)(b) + ")*" + root;
      }
      if (structurally_zero(a)) return term;
      std::string lhs = (*this)(a);
      if (term.front() == '-') return lhs + term;
      return lhs + "+" + term;
    }
  };
  return Render{*tower_}(coeffs_);
}

TowerElem arith(ArithOp op, const TowerElem& x, const TowerElem& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  throw AlgebraError("unknown arithmetic operation");
}

TowerElem sqrt_adjoin(const TowerElem& x) { return TowerElem::sqrt(x); }

int sign(const TowerElem& x) { return x.sign(); }

Ordering cmp(const TowerElem& x, const TowerElem& y) {
  const int s = (x - y).sign();
  if (s < 0) return Ordering::Less;
  if (s > 0) return Ordering::Greater;
  return Ordering::Equal;
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

}  // namespace ramsey::algebra

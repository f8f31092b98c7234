#pragma once

// Exact real numbers in towers of real quadratic extensions of Q.
//
// An element over a tower Q(√r₁)(√r₂)…(√rₙ) is stored as 2ⁿ rational
// coefficients. Bit k of a coefficient index selects the factor √r_{k+1},
// so the upper half of the vector is the "b" in a + b·√rₙ and the lower half
// is "a". Each radicand rₖ is itself an element over the first k−1 levels.
//
// Towers are not required to be canonical: a radicand may be a square in its
// subfield. sign() is exact regardless.

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ramsey::algebra {

using Rat = mpq_class;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

class Tower {
 public:
  /// The empty tower (plain rationals). Shared singleton.
  static const TowerPtr& rationals();

  /// Adjoins √radicand on top of `base`. The radicand must be given over
  /// `base` (2^depth coefficients) and have sign ≥ 0; the caller checks that.
  static TowerPtr extend(const TowerPtr& base, std::vector<Rat> radicand);

  std::size_t depth() const { return depth_; }

  /// Radicand adjoined at `level` (0-based), over the first `level` levels.
  const std::vector<Rat>& radicand(std::size_t level) const;
  bool radicand_is_zero(std::size_t level) const;

  /// The ancestor tower consisting of the first `depth` levels.
  const Tower* prefix(std::size_t depth) const;

  /// True iff `other` is this tower or one of its ancestors.
  bool extends(const Tower* other) const;

  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

 private:
  Tower() = default;

  TowerPtr parent_;
  std::vector<Rat> radicand_;
  std::size_t depth_ = 0;
  bool radicand_zero_ = false;
  std::vector<const Tower*> chain_;  // chain_[k] has depth k+1
};

enum class Ordering { Less, Equal, Greater };

class TowerElem {
 public:
  TowerElem();
  TowerElem(long value);  // NOLINT(google-explicit-constructor)
  TowerElem(Rat value);   // NOLINT(google-explicit-constructor)
  TowerElem(TowerPtr tower, std::vector<Rat> coefficients);

  /// Principal square root. Extends the tower by one level unless the value
  /// is a rational square, zero, or already a radicand of its tower.
  static TowerElem sqrt(const TowerElem& x);

  const TowerPtr& tower() const { return tower_; }
  std::span<const Rat> coefficients() const { return coeffs_; }

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  /// The value when all irrational coefficients are structurally zero.
  std::optional<Rat> as_rational() const;

  /// Radical-expression rendering; parse_value() of it gives back the value.
  std::string to_string() const;

  TowerElem operator-() const;
  friend TowerElem operator+(const TowerElem& x, const TowerElem& y);
  friend TowerElem operator-(const TowerElem& x, const TowerElem& y);
  friend TowerElem operator*(const TowerElem& x, const TowerElem& y);
  friend TowerElem operator/(const TowerElem& x, const TowerElem& y);
  TowerElem& operator+=(const TowerElem& y) { return *this = *this + y; }
  TowerElem& operator-=(const TowerElem& y) { return *this = *this - y; }
  TowerElem& operator*=(const TowerElem& y) { return *this = *this * y; }
  TowerElem& operator/=(const TowerElem& y) { return *this = *this / y; }

  /// Exact: x == y iff sign(x − y) = 0.
  friend bool operator==(const TowerElem& x, const TowerElem& y);
  friend std::strong_ordering operator<=>(const TowerElem& x,
                                          const TowerElem& y);

 private:
  TowerPtr tower_;
  std::vector<Rat> coeffs_;
};

enum class ArithOp { Add, Sub, Mul, Div };

TowerElem arith(ArithOp op, const TowerElem& x, const TowerElem& y);
TowerElem sqrt_adjoin(const TowerElem& x);
int sign(const TowerElem& x);
Ordering cmp(const TowerElem& x, const TowerElem& y);

/// Both operands re-expressed over one common tower. Radicands of `y`'s tower
/// that already occur in `x`'s tower (exactly, via sign) are reused.
std::pair<TowerElem, TowerElem> unify(const TowerElem& x, const TowerElem& y);

std::string to_string(Ordering o);

}  // namespace ramsey::algebra

#pragma once

// Random radical expressions for property tests. Radicands are drawn from a
// small pool so that towers stay a few levels deep after merging.

#include <random>

#include "ramsey/algebra/expr.hpp"

namespace ramsey::testing {

class ExprGenerator {
 public:
  explicit ExprGenerator(unsigned seed) : rng_(seed) {}

  /// Nonzero-free guarantees are not made; `sqrt_budget` caps sqrt nodes.
  algebra::AlgExpr any(int depth, int sqrt_budget = 3) {
    budget_ = sqrt_budget;
    return general(depth);
  }

  /// Strictly positive expression.
  algebra::AlgExpr positive(int depth, int sqrt_budget = 3) {
    budget_ = sqrt_budget;
    return pos(depth);
  }

  algebra::AlgExpr small_rational(bool allow_zero = false) {
    std::uniform_int_distribution<int> num(allow_zero ? 0 : 1, 9);
    std::uniform_int_distribution<int> den(1, 4);
    return algebra::AlgExpr::literal(algebra::Rat(num(rng_), den(rng_)));
  }

  std::mt19937& rng() { return rng_; }

 private:
  using K = algebra::AlgExpr::Kind;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  algebra::AlgExpr radical(int depth) {
    --budget_;
    static const int pool[] = {2, 3, 5, 7};
    algebra::AlgExpr inner = algebra::AlgExpr::literal(pool[pick(4)]);
    if (depth > 0 && budget_ > 0 && pick(3) == 0) {
      inner = algebra::AlgExpr::binary(K::Add, small_rational(), radical(depth - 1));
    }
    return algebra::AlgExpr::sqrt(inner);
  }

  algebra::AlgExpr pos(int depth) {
    const int choice = depth <= 0 ? pick(2) : pick(4);
    switch (choice) {
      case 0: return small_rational();
      case 1:
        if (budget_ > 0) return radical(depth - 1);
        return small_rational();
      case 2: return algebra::AlgExpr::binary(K::Add, pos(depth - 1), pos(depth - 1));
      default: return algebra::AlgExpr::binary(K::Mul, pos(depth - 1), pos(depth - 1));
    }
  }

  algebra::AlgExpr general(int depth) {
    if (depth <= 0) {
      return pick(2) == 0 ? pos(0) : algebra::AlgExpr::neg(pos(0));
    }
    switch (pick(5)) {
      case 0: return pos(depth);
      case 1: return algebra::AlgExpr::neg(general(depth - 1));
      case 2: return algebra::AlgExpr::binary(K::Add, general(depth - 1), general(depth - 1));
      case 3: return algebra::AlgExpr::binary(K::Sub, general(depth - 1), general(depth - 1));
      default: return algebra::AlgExpr::binary(K::Mul, general(depth - 1), general(depth - 1));
    }
  }

  std::mt19937 rng_;
  int budget_ = 0;
};

}  // namespace ramsey::testing

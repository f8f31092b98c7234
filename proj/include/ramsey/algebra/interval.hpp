#pragma once

#include <string>

#include "ramsey/algebra/tower.hpp"

namespace ramsey::algebra {

/// Closed interval with dyadic endpoints.
struct DyadicInterval {
  Rat lo;
  Rat hi;

  Rat width() const { return hi - lo; }
  bool contains(const Rat& q) const { return lo <= q && q <= hi; }
};

/// Outward-rounded enclosure of x; endpoints are multiples of 2^-bits.
DyadicInterval enclose(const TowerElem& x, unsigned bits);

/// Decimal rendering with `digits` fractional digits, truncated toward zero.
/// Reporting only: exact checks never use this.
std::string approx_decimal(const TowerElem& x, int digits);

}  // namespace ramsey::algebra

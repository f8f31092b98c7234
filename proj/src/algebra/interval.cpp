#include "ramsey/algebra/interval.hpp"

#include <algorithm>
#include <bit>
#include <span>
#include <vector>

namespace ramsey::algebra {

namespace {

using View = std::span<const Rat>;

mpz_class pow2(unsigned bits) {
  mpz_class r = 1;
  r <<= bits;
  return r;
}

Rat floor_to(const Rat& q, unsigned bits) {
  const mpz_class scale = pow2(bits);
  mpz_class n = q.get_num() * scale;
  mpz_fdiv_q(n.get_mpz_t(), n.get_mpz_t(), q.get_den().get_mpz_t());
  Rat r(n, scale);
  r.canonicalize();
  return r;
}

Rat ceil_to(const Rat& q, unsigned bits) {
  const mpz_class scale = pow2(bits);
  mpz_class n = q.get_num() * scale;
  mpz_cdiv_q(n.get_mpz_t(), n.get_mpz_t(), q.get_den().get_mpz_t());
  Rat r(n, scale);
  r.canonicalize();
  return r;
}

DyadicInterval round_out(DyadicInterval x, unsigned bits) {
  return {floor_to(x.lo, bits), ceil_to(x.hi, bits)};
}

DyadicInterval add(const DyadicInterval& x, const DyadicInterval& y) {
  return {x.lo + y.lo, x.hi + y.hi};
}

DyadicInterval mul(const DyadicInterval& x, const DyadicInterval& y) {
  const Rat a = x.lo * y.lo, b = x.lo * y.hi, c = x.hi * y.lo, d = x.hi * y.hi;
  return {std::min({a, b, c, d}), std::max({a, b, c, d})};
}

// floor(√q · 2^bits) / 2^bits and the matching ceiling.
DyadicInterval sqrt_out(const DyadicInterval& x, unsigned bits) {
  const Rat lo = std::max(x.lo, Rat(0));
  const Rat hi = std::max(x.hi, Rat(0));
  const mpz_class scale2 = pow2(2 * bits);
  mpz_class lo_scaled = lo.get_num() * scale2;
  mpz_fdiv_q(lo_scaled.get_mpz_t(), lo_scaled.get_mpz_t(),
             lo.get_den().get_mpz_t());
  mpz_class hi_scaled = hi.get_num() * scale2;
  mpz_cdiv_q(hi_scaled.get_mpz_t(), hi_scaled.get_mpz_t(),
             hi.get_den().get_mpz_t());
  mpz_class r_lo, r_hi;
  mpz_sqrt(r_lo.get_mpz_t(), lo_scaled.get_mpz_t());
  mpz_sqrt(r_hi.get_mpz_t(), hi_scaled.get_mpz_t());
  if (r_hi * r_hi < hi_scaled) ++r_hi;
  Rat l(r_lo, pow2(bits)), h(r_hi, pow2(bits));
  l.canonicalize();
  h.canonicalize();
  return {l, h};
}

DyadicInterval enclose_coeffs(const Tower& t, View x, unsigned bits) {
  if (x.size() == 1) return round_out({x[0], x[0]}, bits);
  const std::size_t h = x.size() / 2;
  const auto n = static_cast<std::size_t>(std::countr_zero(x.size()));
  DyadicInterval a = enclose_coeffs(t, x.first(h), bits);
  DyadicInterval b = enclose_coeffs(t, x.subspan(h), bits);
  DyadicInterval d = enclose_coeffs(t, t.radicand(n - 1), bits);
  return round_out(add(a, mul(b, sqrt_out(d, bits))), bits);
}

mpz_class pow10(int digits) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  return r;
}

mpz_class floor_scaled(const Rat& q, const mpz_class& scale) {
  mpz_class n = q.get_num() * scale;
  mpz_fdiv_q(n.get_mpz_t(), n.get_mpz_t(), q.get_den().get_mpz_t());
  return n;
}

}  // namespace

DyadicInterval enclose(const TowerElem& x, unsigned bits) {
  return enclose_coeffs(*x.tower(), x.coefficients(), bits);
}

std::string approx_decimal(const TowerElem& x, int digits) {
  if (digits < 1) throw AlgebraError("digits must be positive");
  const int s = x.sign();
  const TowerElem magnitude = s < 0 ? -x : x;
  const mpz_class scale = pow10(digits);

  // floor(|x| · 10^digits), decided exactly at the one boundary the
  // enclosure may straddle.
  mpz_class scaled;
  if (auto q = magnitude.as_rational()) {
    scaled = floor_scaled(*q, scale);
  } else {
    unsigned bits = static_cast<unsigned>(digits) * 4 + 16;
    for (;;) {
      const DyadicInterval iv = enclose(magnitude, bits);
      const mpz_class lo = floor_scaled(iv.lo, scale);
      const mpz_class hi = floor_scaled(iv.hi, scale);
      if (lo == hi) {
        scaled = lo;
        break;
      }
      if (hi == lo + 1) {
        const Rat boundary(hi, scale);
        scaled = magnitude >= TowerElem(boundary) ? hi : lo;
        break;
      }
      bits *= 2;
    }
  }

  std::string digits_str = scaled.get_str();
  if (digits_str.size() <= static_cast<std::size_t>(digits)) {
    digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
  }
  const std::size_t split = digits_str.size() - static_cast<std::size_t>(digits);
  std::string out = digits_str.substr(0, split) + "." + digits_str.substr(split);
  return s < 0 ? "-" + out : out;
}

}  // namespace ramsey::algebra

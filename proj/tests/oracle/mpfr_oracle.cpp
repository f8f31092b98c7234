#include "mpfr_oracle.hpp"

#include <cmath>
#include <cstdlib>

namespace ramsey::oracle {

using algebra::AlgExpr;

MpfrInterval::MpfrInterval(mpfr_prec_t precision) {
  mpfr_init2(lo, precision);
  mpfr_init2(hi, precision);
}

MpfrInterval::MpfrInterval(const MpfrInterval& other) {
  mpfr_init2(lo, mpfr_get_prec(other.lo));
  mpfr_init2(hi, mpfr_get_prec(other.hi));
  mpfr_set(lo, other.lo, MPFR_RNDN);
  mpfr_set(hi, other.hi, MPFR_RNDN);
}

MpfrInterval& MpfrInterval::operator=(const MpfrInterval& other) {
  if (this != &other) {
    mpfr_set_prec(lo, mpfr_get_prec(other.lo));
    mpfr_set_prec(hi, mpfr_get_prec(other.hi));
    mpfr_set(lo, other.lo, MPFR_RNDN);
    mpfr_set(hi, other.hi, MPFR_RNDN);
  }
  return *this;
}

MpfrInterval::~MpfrInterval() {
  mpfr_clear(lo);
  mpfr_clear(hi);
}

namespace {

void min4(mpfr_t out, mpfr_t a, mpfr_t b, mpfr_t c, mpfr_t d) {
  mpfr_min(out, a, b, MPFR_RNDD);
  mpfr_min(out, out, c, MPFR_RNDD);
  mpfr_min(out, out, d, MPFR_RNDD);
}

void max4(mpfr_t out, mpfr_t a, mpfr_t b, mpfr_t c, mpfr_t d) {
  mpfr_max(out, a, b, MPFR_RNDU);
  mpfr_max(out, out, c, MPFR_RNDU);
  mpfr_max(out, out, d, MPFR_RNDU);
}

// Products (or quotients) of all endpoint pairs, rounded both ways.
template <typename Op>
MpfrInterval corners(const MpfrInterval& x, const MpfrInterval& y,
                     mpfr_prec_t p, Op op) {
  MpfrInterval r(p);
  mpfr_t d[4], u[4];
  for (int i = 0; i < 4; ++i) {
    mpfr_init2(d[i], p);
    mpfr_init2(u[i], p);
  }
  const mpfr_srcptr xs[2] = {x.lo, x.hi};
  const mpfr_srcptr ys[2] = {y.lo, y.hi};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      op(d[2 * i + j], xs[i], ys[j], MPFR_RNDD);
      op(u[2 * i + j], xs[i], ys[j], MPFR_RNDU);
    }
  }
  min4(r.lo, d[0], d[1], d[2], d[3]);
  max4(r.hi, u[0], u[1], u[2], u[3]);
  for (int i = 0; i < 4; ++i) {
    mpfr_clear(d[i]);
    mpfr_clear(u[i]);
  }
  return r;
}

}  // namespace

std::optional<MpfrInterval> evaluate(const AlgExpr& e, mpfr_prec_t p) {
  using K = AlgExpr::Kind;
  MpfrInterval r(p);
  switch (e.kind()) {
    case K::Literal: {
      mpfr_set_q(r.lo, e.value().get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(r.hi, e.value().get_mpq_t(), MPFR_RNDU);
      return r;
    }
    case K::Neg: {
      auto x = evaluate(e.operand(0), p);
      if (!x) return std::nullopt;
      mpfr_neg(r.lo, x->hi, MPFR_RNDD);
      mpfr_neg(r.hi, x->lo, MPFR_RNDU);
      return r;
    }
    case K::Sqrt: {
      auto x = evaluate(e.operand(0), p);
      if (!x || mpfr_sgn(x->hi) < 0) return std::nullopt;
      if (mpfr_sgn(x->lo) < 0) {
        mpfr_set_zero(r.lo, 1);
      } else {
        mpfr_sqrt(r.lo, x->lo, MPFR_RNDD);
      }
      mpfr_sqrt(r.hi, x->hi, MPFR_RNDU);
      return r;
    }
    default: break;
  }
  auto x = evaluate(e.operand(0), p);
  auto y = evaluate(e.operand(1), p);
  if (!x || !y) return std::nullopt;
  switch (e.kind()) {
    case K::Add:
      mpfr_add(r.lo, x->lo, y->lo, MPFR_RNDD);
      mpfr_add(r.hi, x->hi, y->hi, MPFR_RNDU);
      return r;
    case K::Sub:
      mpfr_sub(r.lo, x->lo, y->hi, MPFR_RNDD);
      mpfr_sub(r.hi, x->hi, y->lo, MPFR_RNDU);
      return r;
    case K::Mul:
      return corners(*x, *y, p, mpfr_mul);
    case K::Div:
      if (mpfr_sgn(y->lo) <= 0 && mpfr_sgn(y->hi) >= 0) return std::nullopt;
      return corners(*x, *y, p, mpfr_div);
    default: break;
  }
  return std::nullopt;
}

std::optional<int> compare(const AlgExpr& lhs, const AlgExpr& rhs) {
  const AlgExpr diff = AlgExpr::binary(AlgExpr::Kind::Sub, lhs, rhs);
  mpfr_t width, bound;
  for (mpfr_prec_t p = 128; p <= 4096; p *= 2) {
    auto iv = evaluate(diff, p);
    if (!iv) continue;
    mpfr_init2(width, p);
    mpfr_init2(bound, p);
    mpfr_sub(width, iv->hi, iv->lo, MPFR_RNDU);
    mpfr_set_str(bound, "1e-30", 10, MPFR_RNDD);
    const bool narrow = mpfr_less_p(width, bound) != 0;
    const int lo = mpfr_sgn(iv->lo), hi = mpfr_sgn(iv->hi);
    mpfr_clear(width);
    mpfr_clear(bound);
    if (narrow && lo > 0) return 1;
    if (narrow && hi < 0) return -1;
  }
  return std::nullopt;
}

std::string truncated_decimal(const AlgExpr& e, int digits) {
  for (mpfr_prec_t p = 128; p <= 4096; p *= 2) {
    auto iv = evaluate(e, p);
    if (!iv) continue;
    mpfr_t scale, lo, hi;
    mpfr_inits2(p, scale, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_ui_pow_ui(scale, 10, static_cast<unsigned long>(digits), MPFR_RNDN);
    const bool negative = mpfr_sgn(iv->hi) < 0;
    if (negative) {
      mpfr_neg(lo, iv->hi, MPFR_RNDD);
      mpfr_neg(hi, iv->lo, MPFR_RNDU);
    } else {
      mpfr_set(lo, iv->lo, MPFR_RNDD);
      mpfr_set(hi, iv->hi, MPFR_RNDU);
    }
    mpfr_mul(lo, lo, scale, MPFR_RNDD);
    mpfr_mul(hi, hi, scale, MPFR_RNDU);
    mpfr_floor(lo, lo);
    mpfr_floor(hi, hi);
    const bool settled = mpfr_equal_p(lo, hi) != 0 &&
                         (negative || mpfr_sgn(iv->lo) >= 0);
    std::string out;
    if (settled) {
      mpz_t z;
      mpz_init(z);
      mpfr_get_z(z, lo, MPFR_RNDN);
      char* s = mpz_get_str(nullptr, 10, z);
      out = s;
      free(s);  // NOLINT
      mpz_clear(z);
    }
    mpfr_clears(scale, lo, hi, static_cast<mpfr_ptr>(nullptr));
    if (!settled) continue;
    while (out.size() <= static_cast<std::size_t>(digits)) out.insert(0, "0");
    const std::size_t split = out.size() - static_cast<std::size_t>(digits);
    out = out.substr(0, split) + "." + out.substr(split);
    return negative ? "-" + out : out;
  }
  return "undecided";
}

}  // namespace ramsey::oracle

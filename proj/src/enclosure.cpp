#include "ccf/enclosure.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace ccf {

mpfr_prec_t BoundValue::bits(long digits) {
  if (digits < 2) throw domain_error("BoundValue: need at least 2 digits");
  // ~3.33 bits per decimal digit plus guard bits.
  return (mpfr_prec_t)(digits * 10 / 3 + 16);
}

void BoundValue::init() {
  mpfr_init2(lo_, bits(digits_));
  mpfr_init2(hi_, bits(digits_));
}

BoundValue::BoundValue(long digits) : digits_(digits) {
  init();
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

BoundValue::BoundValue(const BoundValue& o) : digits_(o.digits_) {
  init();
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

BoundValue::BoundValue(BoundValue&& o) noexcept : digits_(o.digits_) {
  init();
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

BoundValue& BoundValue::operator=(const BoundValue& o) {
  if (this == &o) return *this;
  if (digits_ != o.digits_) {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
    digits_ = o.digits_;
    init();
  }
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

BoundValue& BoundValue::operator=(BoundValue&& o) noexcept {
  std::swap(digits_, o.digits_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

BoundValue::~BoundValue() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

BoundValue BoundValue::from_rat(const ExactScalar& q, long digits) {
  BoundValue r(digits);
  mpfr_set_q(r.lo_, q.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.raw().get_mpq_t(), MPFR_RNDU);
  return r;
}

BoundValue BoundValue::from_int(const Int& n, long digits) {
  BoundValue r(digits);
  mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
  return r;
}

BoundValue BoundValue::from_long(long n, long digits) { return from_int(Int(n), digits); }

BoundValue BoundValue::euler(long digits) {
  BoundValue one = from_long(1, digits);
  return one.exp();
}

BoundValue BoundValue::hull(const BoundValue& a, const BoundValue& b) {
  BoundValue r(std::min(a.digits_, b.digits_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

BoundValue BoundValue::operator-() const {
  BoundValue r(digits_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

BoundValue operator+(const BoundValue& a, const BoundValue& b) {
  BoundValue r(std::min(a.digits_, b.digits_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

BoundValue operator-(const BoundValue& a, const BoundValue& b) {
  BoundValue r(std::min(a.digits_, b.digits_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

BoundValue operator*(const BoundValue& a, const BoundValue& b) {
  BoundValue r(std::min(a.digits_, b.digits_));
  mpfr_t t;
  mpfr_init2(t, BoundValue::bits(r.digits_));
  const mpfr_srcptr as[2] = {a.lo_, a.hi_};
  const mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t, as[i], bs[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, as[i], bs[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

BoundValue operator/(const BoundValue& a, const BoundValue& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
    throw domain_error("BoundValue: division by an enclosure containing zero");
  BoundValue r(std::min(a.digits_, b.digits_));
  mpfr_t t;
  mpfr_init2(t, BoundValue::bits(r.digits_));
  const mpfr_srcptr as[2] = {a.lo_, a.hi_};
  const mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_div(t, as[i], bs[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, as[i], bs[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

BoundValue BoundValue::log() const {
  if (mpfr_sgn(lo_) <= 0) throw domain_error("BoundValue: log of non-positive enclosure");
  BoundValue r(digits_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

BoundValue BoundValue::exp() const {
  BoundValue r(digits_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

BoundValue BoundValue::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw domain_error("BoundValue: sqrt of negative enclosure");
  BoundValue r(digits_);
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

BoundValue BoundValue::pow(const BoundValue& y) const {
  if (mpfr_sgn(lo_) <= 0) throw domain_error("BoundValue: pow needs positive base");
  return (y * log()).exp();
}

BoundValue BoundValue::pow_ui(unsigned long k) const {
  BoundValue r(digits_);
  if (k == 0) {
    mpfr_set_ui(r.lo_, 1, MPFR_RNDD);
    mpfr_set_ui(r.hi_, 1, MPFR_RNDU);
    return r;
  }
  if (mpfr_sgn(lo_) >= 0) {
    mpfr_pow_ui(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, k, MPFR_RNDU);
    return r;
  }
  // General sign: fall back to repeated interval multiplication.
  BoundValue acc = *this;
  for (unsigned long i = 1; i < k; ++i) acc = acc * (*this);
  return acc;
}

bool BoundValue::surely_lt(const BoundValue& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
bool BoundValue::surely_gt(const BoundValue& o) const { return mpfr_cmp(lo_, o.hi_) > 0; }

bool BoundValue::surely_lt(const ExactScalar& q) const {
  return mpfr_cmp_q(hi_, q.raw().get_mpq_t()) < 0;
}
bool BoundValue::surely_gt(const ExactScalar& q) const {
  return mpfr_cmp_q(lo_, q.raw().get_mpq_t()) > 0;
}
bool BoundValue::contains(const ExactScalar& q) const {
  return mpfr_cmp_q(lo_, q.raw().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.raw().get_mpq_t()) >= 0;
}

static ExactScalar mpfr_to_rat(const mpfr_t x) {
  if (!mpfr_number_p(x)) throw precision_error("BoundValue: endpoint not finite");
  if (mpfr_zero_p(x)) return ExactScalar(0);
  Int m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  ExactScalar r(m);
  if (e >= 0) {
    Int p = int_pow(2, (unsigned long)e);
    return r * ExactScalar(p);
  }
  Int p = int_pow(2, (unsigned long)(-e));
  return r / ExactScalar(p);
}

ExactScalar BoundValue::lo_rat() const { return mpfr_to_rat(lo_); }
ExactScalar BoundValue::hi_rat() const { return mpfr_to_rat(hi_); }

Int BoundValue::floor_hi() const {
  mpfr_t f;
  mpfr_init2(f, mpfr_get_prec(hi_));
  mpfr_floor(f, hi_);
  Int z;
  mpfr_get_z(z.get_mpz_t(), f, MPFR_RNDN);
  mpfr_clear(f);
  return z;
}

Int BoundValue::floor_lo() const {
  mpfr_t f;
  mpfr_init2(f, mpfr_get_prec(lo_));
  mpfr_floor(f, lo_);
  Int z;
  mpfr_get_z(z.get_mpz_t(), f, MPFR_RNDN);
  mpfr_clear(f);
  return z;
}

static std::string mpfr_to_dec(const mpfr_t x, long digits, mpfr_rnd_t rnd) {
  char fmt[32];
  std::snprintf(fmt, sizeof fmt, "%%.%ldR*g", digits);
  char* out = nullptr;
  mpfr_asprintf(&out, fmt, rnd, x);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

std::string BoundValue::str() const {
  return "[" + mpfr_to_dec(lo_, digits_, MPFR_RNDD) + "," + mpfr_to_dec(hi_, digits_, MPFR_RNDU) +
         "]@" + std::to_string(digits_);
}

StrictCeil strict_int_above(const std::function<BoundValue(long)>& eval, long digits,
                            bool must_certify) {
  long d = digits;
  for (int attempt = 0; attempt < 2; ++attempt) {
    BoundValue v = eval(d);
    Int fh = v.floor_hi();
    // Certified when no integer separates lo from hi: floor(hi) <= lo.
    if (v.lo_rat() >= ExactScalar(fh)) return {fh + 1, true, d};
    d *= 2;
  }
  if (must_certify)
    throw precision_error("strict_int_above: enclosure too wide to resolve the ceiling");
  BoundValue v = eval(d);
  return {v.floor_hi() + 1, false, d};
}

LoglogResult loglog_threshold(const BoundValue& x, const BoundValue& y, long digits) {
  if (!x.surely_gt(ExactScalar(1))) throw domain_error("loglog_threshold: requires x > 1");
  BoundValue e = BoundValue::euler(digits);
  if (!(y - e).surely_gt(ExactScalar(0))) throw domain_error("loglog_threshold: requires y > e");
  BoundValue ly = y.log();
  BoundValue lly = ly.log();
  BoundValue lx = x.log();
  BoundValue threshold = (ly + lly) / lx;
  // Guarantee hypothesis: log x > 1 + log log y / log y.
  BoundValue rhs = BoundValue::from_long(1, digits) + lly / ly;
  bool valid = lx.surely_gt(rhs);
  // Interval inputs carry their own precision, so there is no retry to run.
  Int fh = threshold.floor_hi();
  if (threshold.lo_rat() < ExactScalar(fh))
    throw precision_error("loglog_threshold: enclosure too wide to resolve the ceiling");
  return {threshold, valid, fh + 1};
}

LoglogResult loglog_threshold(const ExactScalar& x, const ExactScalar& y, long digits) {
  long d = digits;
  for (int attempt = 0;; ++attempt) {
    try {
      return loglog_threshold(BoundValue::from_rat(x, d), BoundValue::from_rat(y, d), d);
    } catch (const precision_error&) {
      if (attempt >= 1) throw;
      d *= 2;
    }
  }
}

}  // namespace ccf

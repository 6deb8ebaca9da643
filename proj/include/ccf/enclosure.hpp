#pragma once

#include <mpfr.h>

#include <functional>
#include <string>

#include "ccf/exact.hpp"

namespace ccf {

// Two-sided enclosure [lo, hi] with outward rounding at a configurable
// decimal working precision. Backed by MPFR with directed rounding; the
// endpoints are dyadic rationals, so lo_rat()/hi_rat() are exact.
class BoundValue {
 public:
  explicit BoundValue(long digits = 50);
  BoundValue(const BoundValue& o);
  BoundValue(BoundValue&& o) noexcept;
  BoundValue& operator=(const BoundValue& o);
  BoundValue& operator=(BoundValue&& o) noexcept;
  ~BoundValue();

  static BoundValue from_rat(const ExactScalar& q, long digits = 50);
  static BoundValue from_int(const Int& n, long digits = 50);
  static BoundValue from_long(long n, long digits = 50);
  // Euler's number e, enclosed at the working precision.
  static BoundValue euler(long digits = 50);
  // Smallest interval containing both arguments.
  static BoundValue hull(const BoundValue& a, const BoundValue& b);

  long digits() const { return digits_; }

  BoundValue operator-() const;
  friend BoundValue operator+(const BoundValue& a, const BoundValue& b);
  friend BoundValue operator-(const BoundValue& a, const BoundValue& b);
  friend BoundValue operator*(const BoundValue& a, const BoundValue& b);
  friend BoundValue operator/(const BoundValue& a, const BoundValue& b);

  BoundValue log() const;   // requires lo > 0
  BoundValue exp() const;
  BoundValue sqrt() const;  // requires lo >= 0
  BoundValue pow(const BoundValue& y) const;  // requires lo > 0
  BoundValue pow_ui(unsigned long k) const;

  // Certain comparisons: true only when every pair of points from the two
  // enclosures satisfies the relation.
  bool surely_lt(const BoundValue& o) const;
  bool surely_gt(const BoundValue& o) const;
  bool surely_lt(const ExactScalar& q) const;
  bool surely_gt(const ExactScalar& q) const;
  bool contains(const ExactScalar& q) const;

  ExactScalar lo_rat() const;
  ExactScalar hi_rat() const;
  ExactScalar width() const { return hi_rat() - lo_rat(); }

  Int floor_hi() const;  // floor of the upper endpoint
  Int floor_lo() const;

  // "[lo,hi]@digits" with decimal endpoints rounded outward.
  std::string str() const;

 private:
  long digits_;
  mpfr_t lo_, hi_;

  static mpfr_prec_t bits(long digits);
  void init();
  friend BoundValue bv_binary(const BoundValue&, const BoundValue&,
                              int (*op)(mpfr_t, const mpfr_t, const mpfr_t, mpfr_rnd_t),
                              bool monotone_pair);
};

struct StrictCeil {
  Int n;             // least integer certified strictly above the value
  bool certified;    // floor(hi) <= lo held, so n-1 <= value < n is certain
  long digits_used;
};

// Least integer strictly greater than the enclosed value. `eval` recomputes
// the enclosure at a given precision; on an ambiguous ceiling the precision
// is doubled once. Still ambiguous: throws precision_error if `must_certify`,
// otherwise returns the conservative floor(hi)+1 uncertified.
StrictCeil strict_int_above(const std::function<BoundValue(long)>& eval, long digits,
                            bool must_certify = true);

struct LoglogResult {
  BoundValue threshold;   // (log y + log log y) / log x
  bool guarantee_valid;   // log x > 1 + log log y / log y held certainly
  Int m_min;              // least integer strictly above the threshold
};

// Threshold m such that x^m/m > y for every integer m strictly above it,
// valid when the guarantee flag is set. Requires x > 1 and y > e; the third
// hypothesis (log x > 1 + log log y / log y) is reported as the flag rather
// than an error so the threshold itself can always be inspected.
LoglogResult loglog_threshold(const BoundValue& x, const BoundValue& y, long digits = 50);
LoglogResult loglog_threshold(const ExactScalar& x, const ExactScalar& y, long digits = 50);

}  // namespace ccf

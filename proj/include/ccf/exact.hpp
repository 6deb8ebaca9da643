#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

#include "ccf/errors.hpp"

namespace ccf {

using Int = mpz_class;

// Exact rational scalar. Always canonical: gcd(num, den) = 1, den > 0.
// Backed by GMP's mpq; every constructor canonicalizes eagerly so that
// equality is representation equality.
class ExactScalar {
 public:
  ExactScalar() : v_(0) {}
  ExactScalar(int n) : v_(n) {}
  ExactScalar(long n) : v_(n) {}
  ExactScalar(const Int& n) : v_(n) {}
  ExactScalar(const Int& num, const Int& den) {
    if (den == 0) throw domain_error("ExactScalar: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  ExactScalar(long num, long den) : ExactScalar(Int(num), Int(den)) {}
  explicit ExactScalar(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Accepts "a", "-a", "a/b".
  static ExactScalar parse(const std::string& s);

  const mpq_class& raw() const { return v_; }
  Int num() const { return v_.get_num(); }
  Int den() const { return v_.get_den(); }
  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Int floor() const {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }
  Int ceil() const {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }

  ExactScalar abs() const { return ExactScalar(mpq_class(::abs(v_))); }
  ExactScalar pow_ui(unsigned long k) const;

  ExactScalar operator-() const { return ExactScalar(mpq_class(-v_)); }
  ExactScalar& operator+=(const ExactScalar& o) { v_ += o.v_; return *this; }
  ExactScalar& operator-=(const ExactScalar& o) { v_ -= o.v_; return *this; }
  ExactScalar& operator*=(const ExactScalar& o) { v_ *= o.v_; return *this; }
  ExactScalar& operator/=(const ExactScalar& o) {
    if (o.is_zero()) throw domain_error("ExactScalar: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  // "a" for integers, "a/b" otherwise (GMP canonical form).
  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_;
};

// Moebius function of n >= 1.
int mobius(unsigned long n);

// Divisors of n >= 1 in ascending order.
std::vector<unsigned long> divisors(unsigned long n);

// Binomial coefficient; 0 for k out of range, exact bignum otherwise.
Int binomial(const Int& n, unsigned long k);

Int int_pow(const Int& base, unsigned long k);

}  // namespace ccf

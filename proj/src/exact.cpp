#include "ccf/exact.hpp"

namespace ccf {

ExactScalar ExactScalar::parse(const std::string& s) {
  if (s.empty()) throw parse_error("ExactScalar: empty string");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw parse_error("ExactScalar: bad literal '" + s + "'");
  if (q.get_den() == 0) throw domain_error("ExactScalar: zero denominator");
  q.canonicalize();
  return ExactScalar(q);
}

ExactScalar ExactScalar::pow_ui(unsigned long k) const {
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), k);
  return ExactScalar(n, d);
}

int mobius(unsigned long n) {
  if (n == 0) throw domain_error("mobius: n must be positive");
  int primes = 0;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++primes;
    }
  }
  if (n > 1) ++primes;
  return (primes % 2 == 0) ? 1 : -1;
}

std::vector<unsigned long> divisors(unsigned long n) {
  if (n == 0) throw domain_error("divisors: n must be positive");
  std::vector<unsigned long> small, large;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Int binomial(const Int& n, unsigned long k) {
  if (k == 0) return 1;
  if (n < 0) throw domain_error("binomial: negative upper index");
  if (n < (long)k) return 0;
  Int r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

Int int_pow(const Int& base, unsigned long k) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), k);
  return r;
}

}  // namespace ccf

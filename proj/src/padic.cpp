#include "ccf/padic.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ccf {

namespace {

Int pow_int(long p, int k) { return int_pow(Int(p), (unsigned long)k); }

void require_compatible(const PadicScalar& a, const PadicScalar& b) {
  if (a.p() != b.p()) throw domain_error("padic: mixed primes");
}

}  // namespace

PadicScalar::PadicScalar(long p, int prec, const Int& value) : p_(p), prec_(prec) {
  if (p < 2) throw domain_error("padic: p must be a prime >= 2");
  if (prec < 1) throw precision_error("padic: precision exhausted");
  mod_ = pow_int(p, prec);
  mpz_fdiv_r(v_.get_mpz_t(), value.get_mpz_t(), mod_.get_mpz_t());
}

int PadicScalar::valuation() const {
  if (v_ == 0) return prec_;
  Int t = v_;
  int v = 0;
  while (t % p_ == 0) {
    t /= p_;
    ++v;
  }
  return v;
}

PadicScalar PadicScalar::with_precision(int prec) const {
  if (prec > prec_) throw precision_error("padic: cannot raise precision");
  return {p_, prec, v_};
}

PadicScalar PadicScalar::operator-() const { return {p_, prec_, Int(mod_ - v_)}; }

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
  require_compatible(a, b);
  int n = std::min(a.precision(), b.precision());
  return {a.p(), n, Int(a.residue() + b.residue())};
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) {
  require_compatible(a, b);
  int n = std::min(a.precision(), b.precision());
  return {a.p(), n, Int(a.residue() - b.residue())};
}

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
  require_compatible(a, b);
  int n = std::min(a.precision(), b.precision());
  return {a.p(), n, Int(a.residue() * b.residue())};
}

PadicScalar PadicScalar::inv() const {
  if (is_zero_to_precision())
    throw precision_error("padic: inverse of zero to precision");
  if (!is_unit()) throw domain_error("padic: inverse of a non-unit");
  Int r;
  if (mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), mod_.get_mpz_t()) == 0)
    throw domain_error("padic: not invertible");
  return {p_, prec_, r};
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
  require_compatible(a, b);
  if (b.is_zero_to_precision())
    throw precision_error("padic: division by zero to precision");
  int v = b.valuation();
  int n = std::min(a.precision(), b.precision());
  if (v == 0) return a.with_precision(n) * b.with_precision(n).inv();
  if (a.valuation() < v && !a.is_zero_to_precision())
    throw domain_error("padic: quotient is not p-integral");
  if (n - v < 1) throw precision_error("padic: precision exhausted by division");
  Int pv = int_pow(Int(b.p()), (unsigned long)v);
  Int au = a.residue() / pv;
  Int bu = b.residue() / pv;
  PadicScalar an(a.p(), n - v, au), bn(a.p(), n - v, bu);
  return an * bn.inv();
}

PadicScalar PadicScalar::pow_ui(unsigned long k) const {
  Int r;
  mpz_powm_ui(r.get_mpz_t(), v_.get_mpz_t(), k, mod_.get_mpz_t());
  return {p_, prec_, r};
}

bool congruent(const PadicScalar& a, const PadicScalar& b) {
  require_compatible(a, b);
  int n = std::min(a.precision(), b.precision());
  Int m = int_pow(Int(a.p()), (unsigned long)n);
  return (a.residue() - b.residue()) % m == 0;
}

std::string PadicScalar::str() const {
  std::ostringstream os;
  os << v_.get_str() << " + O(" << p_ << "^" << prec_ << ")";
  return os.str();
}

PadicScalar padic_log(const PadicScalar& u) {
  long p = u.p();
  int N = u.precision();
  PadicScalar x = u - PadicScalar::one(p, N);
  if (!x.is_zero_to_precision() && x.valuation() < 1)
    throw domain_error("padic_log: argument is not a 1-unit");
  PadicScalar sum = PadicScalar::zero(p, N);
  if (x.is_zero_to_precision()) return sum;
  int v = x.valuation();
  PadicScalar xk = PadicScalar::one(p, N);
  int max_loss = 0;
  for (long k = 1;; ++k) {
    // all terms from k on vanish mod p^N once k*v - log_p(k) >= N
    long lg = 0;
    for (long t = k; t >= p; t /= p) ++lg;
    if ((long)k * v - lg >= N) break;
    xk = xk * x;
    long kv = 0;
    for (long t = k; t % p == 0; t /= p) ++kv;
    if ((long)k * v - kv >= N) continue;  // term is zero mod p^N, no loss
    PadicScalar term = xk / PadicScalar(p, N, Int(k));
    max_loss = std::max(max_loss, (int)kv);
    if (k % 2 == 0) term = -term;
    sum = sum + term;
  }
  return sum.with_precision(N - max_loss);
}

PadicMatrix::PadicMatrix(long p, int prec, int rows, int cols)
    : p_(p), prec_(prec), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw domain_error("padic matrix: empty shape");
  data_.assign((size_t)rows * cols, PadicScalar::zero(p, prec));
}

PadicMatrix PadicMatrix::from_ints(long p, int prec,
                                   const std::vector<std::vector<Int>>& entries) {
  PadicMatrix m(p, prec, (int)entries.size(), (int)entries.at(0).size());
  for (int i = 0; i < m.rows(); ++i) {
    if ((int)entries[i].size() != m.cols())
      throw domain_error("padic matrix: ragged rows");
    for (int j = 0; j < m.cols(); ++j)
      m.at(i, j) = PadicScalar(p, prec, entries[i][j]);
  }
  return m;
}

PadicMatrix PadicMatrix::identity(long p, int prec, int n) {
  PadicMatrix m(p, prec, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = PadicScalar::one(p, prec);
  return m;
}

bool PadicMatrix::is_zero_to_precision() const {
  for (const auto& x : data_)
    if (!x.is_zero_to_precision()) return false;
  return true;
}

PadicMatrix PadicMatrix::with_precision(int prec) const {
  PadicMatrix m(p_, prec, rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i].with_precision(prec);
  return m;
}

PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.p() != b.p()) throw domain_error("padic matrix: mixed primes");
  if (a.cols() != b.rows()) throw domain_error("padic matrix: shape mismatch");
  int n = std::min(a.precision(), b.precision());
  PadicMatrix r(a.p(), n, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      PadicScalar s = PadicScalar::zero(a.p(), n);
      for (int k = 0; k < a.cols(); ++k) s = s + a.at(i, k) * b.at(k, j);
      r.at(i, j) = s.with_precision(n);
    }
  return r;
}

PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.p() != b.p()) throw domain_error("padic matrix: mixed primes");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw domain_error("padic matrix: shape mismatch");
  int n = std::min(a.precision(), b.precision());
  PadicMatrix r(a.p(), n, a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      r.at(i, j) = (a.at(i, j) - b.at(i, j)).with_precision(n);
  return r;
}

bool congruent(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw domain_error("padic matrix: shape mismatch");
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!congruent(a.at(i, j), b.at(i, j))) return false;
  return true;
}

PadicMatrix PadicMatrix::inv_unit() const {
  if (rows_ != cols_) throw domain_error("padic matrix: inverse of a rectangle");
  PadicMatrix a = *this;
  PadicMatrix inv = identity(p_, prec_, rows_);
  for (int c = 0; c < cols_; ++c) {
    int pr = -1;
    for (int i = c; i < rows_; ++i)
      if (a.at(i, c).is_unit()) {
        pr = i;
        break;
      }
    if (pr < 0) throw domain_error("padic matrix: no unit pivot, inverse not integral");
    for (int j = 0; j < cols_; ++j) {
      std::swap(a.data_[(size_t)c * cols_ + j], a.data_[(size_t)pr * cols_ + j]);
      std::swap(inv.data_[(size_t)c * cols_ + j], inv.data_[(size_t)pr * cols_ + j]);
    }
    PadicScalar s = a.at(c, c).inv();
    for (int j = 0; j < cols_; ++j) {
      a.at(c, j) = a.at(c, j) * s;
      inv.at(c, j) = inv.at(c, j) * s;
    }
    for (int i = 0; i < rows_; ++i) {
      if (i == c || a.at(i, c).is_zero_to_precision()) continue;
      PadicScalar f = a.at(i, c);
      for (int j = 0; j < cols_; ++j) {
        a.at(i, j) = a.at(i, j) - f * a.at(c, j);
        inv.at(i, j) = inv.at(i, j) - f * inv.at(c, j);
      }
    }
  }
  return inv;
}

Int int_det(std::vector<std::vector<Int>> m) {
  int n = (int)m.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] /= prev;  // exact by the fraction-free identity
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

// all k-subsets of {0..n-1}
void subsets(int n, int k, std::vector<int>& cur,
             const std::function<void(const std::vector<int>&)>& f) {
  if ((int)cur.size() == k) {
    f(cur);
    return;
  }
  int start = cur.empty() ? 0 : cur.back() + 1;
  for (int i = start; i <= n - (k - (int)cur.size()); ++i) {
    cur.push_back(i);
    subsets(n, k, cur, f);
    cur.pop_back();
  }
}

}  // namespace

std::pair<int, bool> PadicMatrix::rank_at_precision(int tol_val) const {
  if (tol_val < 0 || tol_val >= prec_)
    throw domain_error("rank_at_precision: tolerance must lie in [0, N)");
  Int mod = int_pow(Int(p_), (unsigned long)prec_);
  auto minor_val = [&](const std::vector<int>& ri, const std::vector<int>& ci) {
    std::vector<std::vector<Int>> sub(ri.size(), std::vector<Int>(ci.size()));
    for (size_t i = 0; i < ri.size(); ++i)
      for (size_t j = 0; j < ci.size(); ++j)
        sub[i][j] = at(ri[i], ci[j]).residue();
    Int d = int_det(std::move(sub));
    mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
    if (d == 0) return prec_;
    int v = 0;
    while (d % p_ == 0) {
      d /= p_;
      ++v;
    }
    return v;
  };
  int kmax = std::min(rows_, cols_);
  int rank = 0;
  for (int k = kmax; k >= 1 && rank == 0; --k) {
    std::vector<int> rcur, ccur;
    bool found = false;
    subsets(rows_, k, rcur, [&](const std::vector<int>& ri) {
      if (found) return;
      std::vector<int> cc;
      subsets(cols_, k, cc, [&](const std::vector<int>& ci) {
        if (found) return;
        if (minor_val(ri, ci) < prec_ - tol_val) found = true;
      });
    });
    if (found) rank = k;
  }
  bool certified = true;
  if (rank < kmax) {
    std::vector<int> rcur;
    subsets(rows_, rank + 1, rcur, [&](const std::vector<int>& ri) {
      std::vector<int> cc;
      subsets(cols_, rank + 1, cc, [&](const std::vector<int>& ci) {
        if (minor_val(ri, ci) < prec_) certified = false;
      });
    });
  }
  return {rank, certified};
}

}  // namespace ccf

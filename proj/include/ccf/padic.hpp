#pragma once

#include <string>
#include <vector>

#include "ccf/errors.hpp"
#include "ccf/exact.hpp"

namespace ccf {

// Truncated p-adic integer: a residue mod p^N with absolute precision N.
// A zero residue means "zero to precision N".  Arithmetic tracks precision:
// the only lossy operations divide by powers of p.
class PadicScalar {
 public:
  PadicScalar(long p, int prec, const Int& value);

  static PadicScalar zero(long p, int prec) { return {p, prec, Int(0)}; }
  static PadicScalar one(long p, int prec) { return {p, prec, Int(1)}; }

  long p() const { return p_; }
  int precision() const { return prec_; }
  const Int& residue() const { return v_; }
  const Int& modulus() const { return mod_; }

  // Exact valuation of the residue, capped at the precision for zero.
  int valuation() const;
  bool is_zero_to_precision() const { return v_ == 0; }
  bool is_unit() const { return v_ != 0 && v_ % p_ != 0; }

  PadicScalar with_precision(int prec) const;  // lowering only

  PadicScalar operator-() const;
  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
  // Division by p^v costs v digits of absolute precision; the dividend must
  // have valuation at least v.
  friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
  PadicScalar inv() const;  // unit only
  PadicScalar pow_ui(unsigned long k) const;

  // Equality as far as the lower of the two precisions can tell.
  friend bool congruent(const PadicScalar& a, const PadicScalar& b);

  std::string str() const;  // "<residue> + O(<p>^<N>)"

 private:
  long p_;
  int prec_;
  Int mod_;  // p^prec
  Int v_;    // reduced into [0, mod_)
};

// Series sum((-1)^(k+1)(u-1)^k/k) for a 1-unit u, truncated at the level
// where remaining terms vanish mod p^N; loses max val_p(k) digits over the
// included terms.
PadicScalar padic_log(const PadicScalar& u);

// Rectangular matrix over a common (p, N).
class PadicMatrix {
 public:
  PadicMatrix(long p, int prec, int rows, int cols);
  static PadicMatrix from_ints(long p, int prec,
                               const std::vector<std::vector<Int>>& entries);
  static PadicMatrix identity(long p, int prec, int n);

  long p() const { return p_; }
  int precision() const { return prec_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  PadicScalar& at(int i, int j) { return data_[(size_t)i * cols_ + j]; }
  const PadicScalar& at(int i, int j) const { return data_[(size_t)i * cols_ + j]; }

  bool is_zero_to_precision() const;
  PadicMatrix with_precision(int prec) const;  // lowering only
  friend PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b);
  friend PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b);
  friend bool congruent(const PadicMatrix& a, const PadicMatrix& b);
  // Gauss-Jordan inverse; every column needs a unit pivot (true for any
  // matrix congruent to the identity mod p).
  PadicMatrix inv_unit() const;

  // rank: the largest k such that some k x k minor (exact determinant of the
  // lifted residues, reduced mod p^N) has valuation < N - tol_val.
  // certified: every (rank+1)-minor is zero to precision; vacuously true at
  // full size.
  std::pair<int, bool> rank_at_precision(int tol_val) const;

 private:
  long p_;
  int prec_, rows_, cols_;
  std::vector<PadicScalar> data_;
};

// Exact integer determinant (fraction-free elimination).
Int int_det(std::vector<std::vector<Int>> m);

}  // namespace ccf

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccf/errors.hpp"
#include "ccf/exact.hpp"
#include "ccf/padic.hpp"

namespace ccf {

// Coefficient ring descriptor shared by all series in one computation.
// cap bounds the retained total degree in the ordinary variables; the
// optional formal symbols L_i (dL_i = dt_i/t_i) are polynomial and uncapped.
struct SeriesRing {
  std::vector<std::string> vars;
  int cap = 1;
  bool logs = false;

  int nvars() const { return (int)vars.size(); }
  int var_index(const std::string& name) const;
  bool operator==(const SeriesRing&) const = default;

  static SeriesRing make(std::vector<std::string> vars, int cap, bool logs = false);
};

// Exponent key: t holds ordinary exponents (one per variable); l holds log
// exponents and stays empty in log-free rings.
struct Monomial {
  std::vector<int> t;
  std::vector<int> l;

  int tdeg() const;
  auto operator<=>(const Monomial&) const = default;
};

// Multivariate truncated power series with exact rational coefficients.
// Exact on retained degrees; products drop terms above the cap.
class TruncSeries {
 public:
  explicit TruncSeries(SeriesRing ring) : ring_(std::move(ring)) {}

  static TruncSeries constant(const SeriesRing& ring, const ExactScalar& c);
  static TruncSeries var(const SeriesRing& ring, int i);
  static TruncSeries log_symbol(const SeriesRing& ring, int i);
  static TruncSeries monomial(const SeriesRing& ring, const std::vector<int>& exps,
                              const ExactScalar& c);

  const SeriesRing& ring() const { return ring_; }
  const std::map<Monomial, ExactScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_logs() const;
  bool is_constant() const;

  ExactScalar constant_term() const;
  ExactScalar coeff(const std::vector<int>& t_exps) const;
  ExactScalar coeff(const Monomial& m) const;
  void set_coeff(const Monomial& m, const ExactScalar& c);

  // Highest (resp. lowest) total t-degree among nonzero terms; -1 when zero.
  int degree() const;
  int order() const;
  std::pair<Monomial, ExactScalar> lowest_term() const;  // throws on zero

  TruncSeries operator-() const;
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }
  friend TruncSeries operator*(const ExactScalar& c, TruncSeries s);
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  TruncSeries truncated(int deg) const;       // drop t-degree > deg
  TruncSeries drop_logs() const;              // kill terms carrying any L_i
  TruncSeries diff(int i) const;              // d/dt_i
  // Substitute images[i] for t_i; images are log-free with zero constant
  // term, all in one common ring, and the receiver must be log-free.
  TruncSeries subst(const std::vector<TruncSeries>& images) const;

  ExactScalar eval_exact(const std::vector<ExactScalar>& pt) const;  // log-free
  // Evaluation inside the open unit disk: every coordinate needs positive
  // valuation, and coefficient denominators spend precision as usual.
  PadicScalar eval_padic(long p, int prec, const std::vector<PadicScalar>& pt) const;

  std::string str() const;

 private:
  void normalize();
  SeriesRing ring_;
  std::map<Monomial, ExactScalar> terms_;
};

// Product truncated at the stated total degree (at most the ring cap).
TruncSeries truncmul(const TruncSeries& a, const TruncSeries& b, int deg);

// Primitive F of the 1-form sum_k form[k] dt_k + sum_k residues[k] dt_k/t_k
// with F(0) = 0; cross-derivatives must match at cap-1, and nonzero residues
// need a log-enabled ring (each contributes residues[k] * L_k).
TruncSeries antiderivative(const std::vector<TruncSeries>& form,
                           const std::vector<ExactScalar>& residues = {});

// Rectangular matrix of series over one ring.
class SeriesMatrix {
 public:
  SeriesMatrix(SeriesRing ring, int rows, int cols);
  static SeriesMatrix identity(const SeriesRing& ring, int n);
  static SeriesMatrix from_rationals(const SeriesRing& ring,
                                     const std::vector<std::vector<ExactScalar>>& c);

  const SeriesRing& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  TruncSeries& at(int i, int j) { return data_[(size_t)i * cols_ + j]; }
  const TruncSeries& at(int i, int j) const { return data_[(size_t)i * cols_ + j]; }

  bool is_zero() const;
  int degree() const;  // max entry degree, -1 when zero
  SeriesMatrix operator-() const;
  friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator*(const TruncSeries& s, const SeriesMatrix& m);
  friend SeriesMatrix operator*(const ExactScalar& c, const SeriesMatrix& m);
  friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b);

  SeriesMatrix diff(int i) const;
  SeriesMatrix truncated(int deg) const;
  SeriesMatrix subst(const std::vector<TruncSeries>& images) const;
  PadicMatrix eval_padic(long p, int prec, const std::vector<PadicScalar>& pt) const;
  std::string str() const;

 private:
  SeriesRing ring_;
  int rows_, cols_;
  std::vector<TruncSeries> data_;
};

}  // namespace ccf

#include "ccf/series.hpp"

#include <algorithm>
#include <sstream>

namespace ccf {

namespace {

void require_same_ring(const SeriesRing& a, const SeriesRing& b) {
  if (!(a == b)) throw domain_error("series: ring mismatch");
}

std::vector<int> zeros(int n) { return std::vector<int>(n, 0); }

}  // namespace

int SeriesRing::var_index(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (vars[i] == name) return i;
  throw domain_error("series: unknown variable " + name);
}

SeriesRing SeriesRing::make(std::vector<std::string> vars, int cap, bool logs) {
  if (vars.empty()) throw domain_error("series: ring needs at least one variable");
  if (cap < 1) throw domain_error("series: cap must be positive");
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw domain_error("series: duplicate variable");
  return SeriesRing{std::move(vars), cap, logs};
}

int Monomial::tdeg() const {
  int d = 0;
  for (int e : t) d += e;
  return d;
}

TruncSeries TruncSeries::constant(const SeriesRing& ring, const ExactScalar& c) {
  TruncSeries s(ring);
  Monomial m{zeros(ring.nvars()), ring.logs ? zeros(ring.nvars()) : std::vector<int>{}};
  s.set_coeff(m, c);
  return s;
}

TruncSeries TruncSeries::var(const SeriesRing& ring, int i) {
  if (i < 0 || i >= ring.nvars()) throw domain_error("series: variable index");
  Monomial m{zeros(ring.nvars()), ring.logs ? zeros(ring.nvars()) : std::vector<int>{}};
  m.t[i] = 1;
  TruncSeries s(ring);
  s.set_coeff(m, ExactScalar(1));
  return s;
}

TruncSeries TruncSeries::log_symbol(const SeriesRing& ring, int i) {
  if (!ring.logs) throw domain_error("series: log symbols disabled in this ring");
  if (i < 0 || i >= ring.nvars()) throw domain_error("series: variable index");
  Monomial m{zeros(ring.nvars()), zeros(ring.nvars())};
  m.l[i] = 1;
  TruncSeries s(ring);
  s.set_coeff(m, ExactScalar(1));
  return s;
}

TruncSeries TruncSeries::monomial(const SeriesRing& ring, const std::vector<int>& exps,
                                  const ExactScalar& c) {
  if ((int)exps.size() != ring.nvars()) throw domain_error("series: exponent arity");
  Monomial m{exps, ring.logs ? zeros(ring.nvars()) : std::vector<int>{}};
  for (int e : exps)
    if (e < 0) throw domain_error("series: negative exponent");
  if (m.tdeg() > ring.cap) throw domain_error("series: monomial exceeds cap");
  TruncSeries s(ring);
  s.set_coeff(m, c);
  return s;
}

bool TruncSeries::has_logs() const {
  for (const auto& [m, c] : terms_)
    for (int e : m.l)
      if (e != 0) return true;
  return false;
}

bool TruncSeries::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Monomial& m = terms_.begin()->first;
  return m.tdeg() == 0 && std::all_of(m.l.begin(), m.l.end(), [](int e) { return e == 0; });
}

ExactScalar TruncSeries::constant_term() const {
  return coeff(zeros(ring_.nvars()));
}

ExactScalar TruncSeries::coeff(const std::vector<int>& t_exps) const {
  Monomial m{t_exps, ring_.logs ? zeros(ring_.nvars()) : std::vector<int>{}};
  return coeff(m);
}

ExactScalar TruncSeries::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ExactScalar(0) : it->second;
}

void TruncSeries::set_coeff(const Monomial& m, const ExactScalar& c) {
  if ((int)m.t.size() != ring_.nvars()) throw domain_error("series: exponent arity");
  if ((int)m.l.size() != (ring_.logs ? ring_.nvars() : 0))
    throw domain_error("series: log exponent arity");
  if (m.tdeg() > ring_.cap) return;
  if (c.is_zero())
    terms_.erase(m);
  else
    terms_[m] = c;
}

int TruncSeries::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.tdeg());
  return d;
}

int TruncSeries::order() const {
  int d = -1;
  for (const auto& [m, c] : terms_)
    if (d < 0 || m.tdeg() < d) d = m.tdeg();
  return d;
}

std::pair<Monomial, ExactScalar> TruncSeries::lowest_term() const {
  if (terms_.empty()) throw domain_error("series: zero series has no lowest term");
  auto best = terms_.begin();
  for (auto it = terms_.begin(); it != terms_.end(); ++it)
    if (it->first.tdeg() < best->first.tdeg()) best = it;
  return {best->first, best->second};
}

void TruncSeries::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r(ring_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  require_same_ring(ring_, o.ring_);
  for (const auto& [m, c] : o.terms_) {
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) it->second += c;
  }
  normalize();
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  require_same_ring(ring_, o.ring_);
  for (const auto& [m, c] : o.terms_) {
    auto [it, fresh] = terms_.emplace(m, -c);
    if (!fresh) it->second -= c;
  }
  normalize();
  return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  require_same_ring(a.ring_, b.ring_);
  TruncSeries r(a.ring_);
  int cap = a.ring_.cap;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (size_t i = 0; i < m.t.size(); ++i) m.t[i] += mb.t[i];
      for (size_t i = 0; i < m.l.size(); ++i) m.l[i] += mb.l[i];
      if (m.tdeg() > cap) continue;
      auto [it, fresh] = r.terms_.emplace(m, ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  r.normalize();
  return r;
}

TruncSeries operator*(const ExactScalar& c, TruncSeries s) {
  for (auto& [m, v] : s.terms_) v *= c;
  s.normalize();
  return s;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  return a.ring_ == b.ring_ && a.terms_ == b.terms_;
}

TruncSeries TruncSeries::truncated(int deg) const {
  TruncSeries r(ring_);
  for (const auto& [m, c] : terms_)
    if (m.tdeg() <= deg) r.terms_[m] = c;
  return r;
}

TruncSeries TruncSeries::drop_logs() const {
  TruncSeries r(ring_);
  for (const auto& [m, c] : terms_)
    if (std::all_of(m.l.begin(), m.l.end(), [](int e) { return e == 0; }))
      r.terms_[m] = c;
  return r;
}

TruncSeries TruncSeries::diff(int i) const {
  if (i < 0 || i >= ring_.nvars()) throw domain_error("series: variable index");
  TruncSeries r(ring_);
  for (const auto& [m, c] : terms_) {
    if (m.t[i] > 0) {
      Monomial d = m;
      d.t[i] -= 1;
      auto [it, fresh] = r.terms_.emplace(d, ExactScalar(m.t[i]) * c);
      if (!fresh) it->second += ExactScalar(m.t[i]) * c;
    }
    if (!m.l.empty() && m.l[i] > 0) {
      // dL_i = dt_i/t_i, so the term must carry a t_i to absorb the pole
      if (m.t[i] < 1)
        throw domain_error("series: derivative of a log term has a pole");
      Monomial d = m;
      d.t[i] -= 1;
      d.l[i] -= 1;
      auto [it, fresh] = r.terms_.emplace(d, ExactScalar(m.l[i]) * c);
      if (!fresh) it->second += ExactScalar(m.l[i]) * c;
    }
  }
  r.normalize();
  return r;
}

TruncSeries TruncSeries::subst(const std::vector<TruncSeries>& images) const {
  if (has_logs()) throw domain_error("series: cannot substitute into log terms");
  if ((int)images.size() != ring_.nvars())
    throw domain_error("series: substitution arity");
  const SeriesRing& target = images.empty() ? ring_ : images[0].ring();
  std::vector<int> need(ring_.nvars(), 0);
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < ring_.nvars(); ++i) need[i] = std::max(need[i], m.t[i]);
  std::vector<std::vector<TruncSeries>> pw(ring_.nvars());
  for (int i = 0; i < ring_.nvars(); ++i) {
    require_same_ring(images[i].ring(), target);
    if (images[i].has_logs())
      throw domain_error("series: substitution images must be log-free");
    if (need[i] > 0 && !images[i].constant_term().is_zero())
      throw domain_error("series: substitution image needs zero constant term");
    pw[i].push_back(TruncSeries::constant(target, ExactScalar(1)));
    for (int k = 1; k <= need[i]; ++k) pw[i].push_back(pw[i].back() * images[i]);
  }
  TruncSeries r(target);
  for (const auto& [m, c] : terms_) {
    TruncSeries term = TruncSeries::constant(target, c);
    for (int i = 0; i < ring_.nvars(); ++i)
      if (m.t[i] > 0) term = term * pw[i][m.t[i]];
    r += term;
  }
  return r;
}

ExactScalar TruncSeries::eval_exact(const std::vector<ExactScalar>& pt) const {
  if (has_logs()) throw domain_error("series: cannot evaluate log terms");
  if ((int)pt.size() != ring_.nvars()) throw domain_error("series: point arity");
  ExactScalar acc(0);
  for (const auto& [m, c] : terms_) {
    ExactScalar t = c;
    for (int i = 0; i < ring_.nvars(); ++i)
      for (int e = 0; e < m.t[i]; ++e) t *= pt[i];
    acc += t;
  }
  return acc;
}

PadicScalar TruncSeries::eval_padic(long p, int prec,
                                    const std::vector<PadicScalar>& pt) const {
  if (has_logs()) throw domain_error("series: cannot evaluate log terms");
  if ((int)pt.size() != ring_.nvars()) throw domain_error("series: point arity");
  for (const auto& x : pt) {
    if (x.p() != p || x.precision() > prec)
      throw domain_error("series: point precision mismatch");
    if (x.valuation() < 1)
      throw domain_error("series: point outside the open unit disk");
  }
  PadicScalar acc = PadicScalar::zero(p, prec);
  for (const auto& [m, c] : terms_) {
    PadicScalar t(p, prec, c.num());
    for (int i = 0; i < ring_.nvars(); ++i)
      if (m.t[i] > 0) t = t * pt[i].pow_ui((unsigned long)m.t[i]);
    if (c.den() != 1) t = t / PadicScalar(p, prec, c.den());
    acc = acc + t;
  }
  return acc;
}

std::string TruncSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (neg) cs = cs.substr(1);
    std::vector<std::string> factors;
    for (int i = 0; i < ring_.nvars(); ++i) {
      if (m.t[i] == 1) factors.push_back(ring_.vars[i]);
      else if (m.t[i] > 1)
        factors.push_back(ring_.vars[i] + "^" + std::to_string(m.t[i]));
    }
    for (size_t i = 0; i < m.l.size(); ++i) {
      if (m.l[i] == 1) factors.push_back("L(" + ring_.vars[i] + ")");
      else if (m.l[i] > 1)
        factors.push_back("L(" + ring_.vars[i] + ")^" + std::to_string(m.l[i]));
    }
    if (factors.empty()) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      for (size_t i = 0; i < factors.size(); ++i)
        os << (i ? "*" : "") << factors[i];
    }
  }
  return os.str();
}

TruncSeries truncmul(const TruncSeries& a, const TruncSeries& b, int deg) {
  return (a * b).truncated(deg);
}

TruncSeries antiderivative(const std::vector<TruncSeries>& form,
                           const std::vector<ExactScalar>& residues) {
  if (form.empty()) throw domain_error("antiderivative: empty form");
  const SeriesRing& ring = form[0].ring();
  int m = ring.nvars();
  if ((int)form.size() != m) throw domain_error("antiderivative: component arity");
  for (const auto& f : form) {
    require_same_ring(f.ring(), ring);
    if (f.has_logs())
      throw domain_error("antiderivative: log terms in the regular part");
  }
  if (!residues.empty() && (int)residues.size() != m)
    throw domain_error("antiderivative: residue arity");
  for (int k = 0; k < m; ++k)
    for (int l = k + 1; l < m; ++l) {
      TruncSeries res = form[l].diff(k) - form[k].diff(l);
      if (!res.is_zero())
        throw integrability_error("antiderivative: form is not closed in (" +
                                  ring.vars[k] + "," + ring.vars[l] +
                                  "), residual degree " + std::to_string(res.degree()));
    }
  TruncSeries F(ring);
  for (int k = 0; k < m; ++k)
    for (const auto& [mon, c] : form[k].terms()) {
      Monomial b = mon;
      b.t[k] += 1;
      int d = b.tdeg();
      if (d > ring.cap) continue;
      F.set_coeff(b, F.coeff(b) + c / ExactScalar(d));
    }
  for (int k = 0; k < (int)residues.size(); ++k) {
    if (residues[k].is_zero()) continue;
    if (!ring.logs)
      throw domain_error("antiderivative: dt/t term needs log symbols enabled");
    F += residues[k] * TruncSeries::log_symbol(ring, k);
  }
  return F;
}

SeriesMatrix::SeriesMatrix(SeriesRing ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw domain_error("series matrix: empty shape");
  data_.assign((size_t)rows * cols, TruncSeries(ring_));
}

SeriesMatrix SeriesMatrix::identity(const SeriesRing& ring, int n) {
  SeriesMatrix m(ring, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = TruncSeries::constant(ring, ExactScalar(1));
  return m;
}

SeriesMatrix SeriesMatrix::from_rationals(
    const SeriesRing& ring, const std::vector<std::vector<ExactScalar>>& c) {
  SeriesMatrix m(ring, (int)c.size(), (int)c.at(0).size());
  for (int i = 0; i < m.rows(); ++i) {
    if ((int)c[i].size() != m.cols()) throw domain_error("series matrix: ragged rows");
    for (int j = 0; j < m.cols(); ++j)
      m.at(i, j) = TruncSeries::constant(ring, c[i][j]);
  }
  return m;
}

bool SeriesMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const TruncSeries& s) { return s.is_zero(); });
}

int SeriesMatrix::degree() const {
  int d = -1;
  for (const auto& s : data_) d = std::max(d, s.degree());
  return d;
}

SeriesMatrix SeriesMatrix::operator-() const {
  SeriesMatrix r = *this;
  for (auto& s : r.data_) s = -s;
  return r;
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw domain_error("series matrix: shape mismatch");
  SeriesMatrix r = a;
  for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw domain_error("series matrix: shape mismatch");
  SeriesMatrix r = a;
  for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
  return r;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.cols_ != b.rows_) throw domain_error("series matrix: shape mismatch");
  require_same_ring(a.ring_, b.ring_);
  SeriesMatrix r(a.ring_, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  return r;
}

SeriesMatrix operator*(const TruncSeries& s, const SeriesMatrix& m) {
  SeriesMatrix r = m;
  for (auto& e : r.data_) e = s * e;
  return r;
}

SeriesMatrix operator*(const ExactScalar& c, const SeriesMatrix& m) {
  SeriesMatrix r = m;
  for (auto& e : r.data_) e = c * e;
  return r;
}

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ring_ == b.ring_ &&
         a.data_ == b.data_;
}

SeriesMatrix SeriesMatrix::diff(int i) const {
  SeriesMatrix r = *this;
  for (auto& e : r.data_) e = e.diff(i);
  return r;
}

SeriesMatrix SeriesMatrix::truncated(int deg) const {
  SeriesMatrix r = *this;
  for (auto& e : r.data_) e = e.truncated(deg);
  return r;
}

SeriesMatrix SeriesMatrix::subst(const std::vector<TruncSeries>& images) const {
  const SeriesRing& target = images.at(0).ring();
  SeriesMatrix r(target, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).subst(images);
  return r;
}

PadicMatrix SeriesMatrix::eval_padic(long p, int prec,
                                     const std::vector<PadicScalar>& pt) const {
  std::vector<PadicScalar> vals;
  vals.reserve(data_.size());
  int n = prec;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      vals.push_back(at(i, j).eval_padic(p, prec, pt));
      n = std::min(n, vals.back().precision());
    }
  // uniform matrix precision: the worst entry wins
  PadicMatrix r(p, n, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      r.at(i, j) = vals[(size_t)i * cols_ + j].with_precision(n);
  return r;
}

std::string SeriesMatrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[";
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).str();
    os << "]";
    if (i + 1 < rows_) os << "\n";
  }
  return os.str();
}

}  // namespace ccf

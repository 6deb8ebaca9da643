#include "ccf/ratlinalg.hpp"

#include "ccf/errors.hpp"

namespace ccf {

namespace {

void require_rect(const RatMatrix& m) {
  if (m.empty() || m[0].empty()) throw domain_error("rat matrix: empty shape");
  for (const auto& row : m)
    if (row.size() != m[0].size()) throw domain_error("rat matrix: ragged rows");
}

// row echelon form in place; returns pivot columns
std::vector<int> echelon(RatMatrix& m) {
  int R = (int)m.size(), C = (int)m[0].size();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int pr = -1;
    for (int i = r; i < R; ++i)
      if (!m[i][c].is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[r], m[pr]);
    ExactScalar inv = ExactScalar(1) / m[r][c];
    for (int j = c; j < C; ++j) m[r][j] *= inv;
    for (int i = 0; i < R; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      ExactScalar f = m[i][c];
      for (int j = c; j < C; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RatMatrix rat_identity(int n) {
  RatMatrix m(n, std::vector<ExactScalar>(n, ExactScalar(0)));
  for (int i = 0; i < n; ++i) m[i][i] = ExactScalar(1);
  return m;
}

RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
  require_rect(a);
  require_rect(b);
  if (a[0].size() != b.size()) throw domain_error("rat matrix: shape mismatch");
  RatMatrix r(a.size(), std::vector<ExactScalar>(b[0].size(), ExactScalar(0)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

RatMatrix rat_add(const RatMatrix& a, const RatMatrix& b) {
  require_rect(a);
  if (a.size() != b.size() || a[0].size() != b[0].size())
    throw domain_error("rat matrix: shape mismatch");
  RatMatrix r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) r[i][j] += b[i][j];
  return r;
}

bool rat_is_zero(const RatMatrix& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

bool rat_commute(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix ab = rat_mul(a, b), ba = rat_mul(b, a);
  for (size_t i = 0; i < ab.size(); ++i)
    for (size_t j = 0; j < ab[0].size(); ++j)
      if (!(ab[i][j] == ba[i][j])) return false;
  return true;
}

bool rat_is_nilpotent(const RatMatrix& m) {
  require_rect(m);
  if (m.size() != m[0].size()) throw domain_error("rat matrix: not square");
  RatMatrix p = m;
  for (size_t k = 1; k < m.size(); ++k) {
    if (rat_is_zero(p)) return true;
    p = rat_mul(p, m);
  }
  return rat_is_zero(p);
}

int rat_rank(RatMatrix m) {
  require_rect(m);
  return (int)echelon(m).size();
}

std::vector<std::vector<ExactScalar>> rat_nullspace(const RatMatrix& m) {
  require_rect(m);
  RatMatrix e = m;
  std::vector<int> piv = echelon(e);
  int C = (int)m[0].size();
  std::vector<bool> is_piv(C, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<ExactScalar>> basis;
  for (int free = 0; free < C; ++free) {
    if (is_piv[free]) continue;
    std::vector<ExactScalar> v(C, ExactScalar(0));
    v[free] = ExactScalar(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -e[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<ExactScalar>> rat_solve(const RatMatrix& A,
                                                  const std::vector<ExactScalar>& b) {
  require_rect(A);
  if (A.size() != b.size()) throw domain_error("rat matrix: rhs arity");
  RatMatrix aug = A;
  for (size_t i = 0; i < A.size(); ++i) aug[i].push_back(b[i]);
  std::vector<int> piv = echelon(aug);
  int C = (int)A[0].size();
  if (!piv.empty() && piv.back() == C) return std::nullopt;  // pivot in rhs column
  std::vector<ExactScalar> x(C, ExactScalar(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][C];
  return x;
}

}  // namespace ccf

#include "ccf/filtered.hpp"

#include <map>
#include <utility>

namespace ccf {

FilteredShape FilteredShape::make(std::vector<Int> d, std::vector<Int> e) {
  if (d.size() != e.size() || d.empty())
    throw domain_error("FilteredShape: d and e must have equal positive length");
  for (const Int& v : d)
    if (v < 0) throw domain_error("FilteredShape: negative source dimension");
  for (const Int& v : e)
    if (v < 0) throw domain_error("FilteredShape: negative target dimension");
  return FilteredShape{std::move(d), std::move(e)};
}

namespace {

// Counts tuples m_k..m_n with sum m_i * w_i = rem, weighting each tuple by
// prod binom(d_i + m_i - 1, m_i).
Int dj_rec(const std::vector<Int>& d, int k, long rem, WeightConvention conv,
           std::map<std::pair<int, long>, Int>& memo) {
  if (rem == 0 && k > (int)d.size()) return 1;
  if (k > (int)d.size()) return 0;
  auto key = std::make_pair(k, rem);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  long w = conv == WeightConvention::Weighted ? k : 1;
  Int total = 0;
  for (long m = 0; m * w <= rem; ++m) {
    Int c = binomial(d[k - 1] + m - 1, (unsigned long)m);
    if (c != 0) total += c * dj_rec(d, k + 1, rem - m * w, conv, memo);
    if (d[k - 1] == 0) break;  // only m = 0 contributes
  }
  memo[key] = total;
  return total;
}

}  // namespace

Int count_Dj(const FilteredShape& shape, int j, WeightConvention conv) {
  if (j < 0) throw domain_error("count_Dj: level must be non-negative");
  if (j == 0) return 1;
  std::map<std::pair<int, long>, Int> memo;
  return dj_rec(shape.d, 1, j, conv, memo);
}

Int J_exact(const FilteredShape& shape, WeightConvention conv) {
  int n = shape.levels();
  std::map<std::pair<int, long>, Int> memo;
  std::vector<Int> D(n + 1);
  D[0] = 1;
  for (int j = 1; j <= n; ++j) D[j] = dj_rec(shape.d, 1, j, conv, memo);
  Int J = 0, cum = 0;
  for (int i = 1; i <= n; ++i) {
    cum += D[i - 1];
    J += shape.e[i - 1] * (cum + D[i]);
  }
  return J;
}

BoundValue J_upper(const BoundValue& r, const BoundValue& alpha,
                   const BoundValue& beta, int n) {
  if (n < 1) throw domain_error("J_upper: n must be positive");
  long dg = r.digits();
  BoundValue one = BoundValue::from_long(1, dg);
  if (!r.surely_gt(ExactScalar(0)))
    throw domain_error("J_upper: r must be positive");
  if (!alpha.surely_gt(ExactScalar(1)) || !beta.surely_gt(ExactScalar(1)))
    throw domain_error("J_upper: alpha and beta must exceed 1");
  BoundValue tea = BoundValue::from_long(2, dg) * BoundValue::euler(dg) * alpha;
  BoundValue bn1 = beta.pow_ui((unsigned long)n + 1);
  BoundValue rn2 = r.pow_ui((unsigned long)n + 2);
  BoundValue tn2 = tea.pow_ui((unsigned long)n + 2);
  BoundValue bm1 = beta - one;
  if (r.surely_gt(tea)) {
    BoundValue gap = r - tea;
    return bn1 * rn2 / (gap * bm1 * (r - one)) +
           tn2 * bn1 / (bm1 * gap * (tea * beta - one));
  }
  if (tea.surely_gt(r)) {
    BoundValue gap = tea - r;
    BoundValue br1 = beta * r - one;
    if (!br1.surely_gt(ExactScalar(0)))
      throw domain_error("J_upper: beta*r must exceed 1 in the small-r case");
    return bn1 * tn2 / (gap * bm1 * (tea - one)) +
           bn1 * rn2 / (bm1 * gap * br1);
  }
  throw precision_error("J_upper: case split ambiguous (r vs 2e*alpha)");
}

BoundValue J_upper(const ExactScalar& r, const ExactScalar& alpha,
                   const ExactScalar& beta, int n, long digits) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    long dg = attempt == 0 ? digits : digits * 2;
    try {
      return J_upper(BoundValue::from_rat(r, dg), BoundValue::from_rat(alpha, dg),
                     BoundValue::from_rat(beta, dg), n);
    } catch (const precision_error&) {
      if (attempt == 1) throw;
    }
  }
  throw precision_error("J_upper: unreachable");
}

Int nondensity_threshold(const FilteredShape& shape, WeightConvention conv) {
  Int defect = 0;
  for (int i = 0; i < shape.levels(); ++i) defect += shape.e[i] - shape.d[i];
  if (defect <= 0)
    throw domain_error("nondensity_threshold: total defect must be positive");
  ExactScalar q(J_exact(shape, conv), defect);
  return q.floor() + 1;
}

}  // namespace ccf

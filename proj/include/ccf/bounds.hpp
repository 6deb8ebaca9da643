#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ccf/enclosure.hpp"
#include "ccf/errors.hpp"
#include "ccf/exact.hpp"

namespace ccf {

struct FamilyParams {
  int g = 2;        // genus
  int s = 0;        // base dimension
  int r = 0;        // rank
  int d = 0;        // Gamma-rank
  int d0 = 0;       // number of sections
  std::optional<int> gonality;
  std::optional<ExactScalar> cv_product;
};

// One evaluated bound: the threshold T of a statement "n > T", the least
// integer strictly above it, a validity flag for the statement's window, and
// free-text notes.
struct BoundReport {
  std::string name;
  std::variant<ExactScalar, BoundValue> threshold;
  Int min_n = 1;
  bool valid = true;
  std::string notes;

  bool threshold_is_exact() const {
    return std::holds_alternative<ExactScalar>(threshold);
  }
  std::string threshold_str() const;
};

// Smooth-family bound (s + (r-d)(g-r))/(g-r-1); window 0 <= r <= g-2.
BoundReport thm1_smooth(const FamilyParams& p);

// Stable-family bound ((r+1)(g-1-r)+s)/(g-r-2)*3g + ((r+1)(g-r)+s)/(g-r-1)*2g;
// window 0 <= r <= g-3.
BoundReport thm1_stable(const FamilyParams& p);

// Stable bound at s = 3g-3 (moduli of curves); at r = g-3 the threshold
// collapses to 21g^2 - 30g exactly and the report records that check.
// tamper_delta shifts the computed threshold and exists so the negative
// control can demonstrate the identity check has teeth.
BoundReport mg_bound(int g, int r, const ExactScalar& tamper_delta = ExactScalar(0));

// (gr + s)/(g - 1) for g >= 2.
BoundReport stoll_zp(int g, int s, int r);

// True iff r > g(n - min{n,g}) and dimV <= r/n - r(ng-r)/(ng^2).
bool padic_zp_check(int g, int n, int r, const ExactScalar& dimV);

// 59*(2s)^((log 2s + log log 2s)/log 2 + 5)*log(2s); valid flag for s > 5.
BoundReport sunit_bound(int s, long digits = 50);

// 3*cv*r^((log r + log log r + log 2)/log a+ + 4)*log r*a+^3 with
// a+ = g + sqrt(g^2-1); valid flag for r > 11g.  The alternate assembly
// (exponent offset +8) is selectable.
BoundReport twist_bound(int g, int r, const ExactScalar& cv_product,
                        bool alternate_exponent = false, long digits = 50);

// Comparison constants: Evertse 3*7^(2s+3), Silverman 7^r scaling, the
// exp((4-eps)sqrt(s/log s)) lower-bound envelope at eps = 1, and when a genus
// is supplied the 84g^2-98g+28 count, the 21g^2-30g threshold and their ratio.
std::vector<BoundReport> classical_rows(int s, std::optional<int> g = std::nullopt,
                                        long digits = 50);

// Bad-reduction ingredients: per-vertex and per-edge thresholds, a
// slack assembly (3g edges, 2g vertices), a tight assembly (3g-3, 2g-2), and
// the stable-graph size caps.
std::vector<BoundReport> bad_reduction_rows(int g, int s, int r, int d);

// Condition gamma >= (r-d)(g-r)/(g-r-1) together with that bound.
std::pair<bool, ExactScalar> gonality_check(int g, int r, int d, int gamma);

// Codimension (n + d0 - r)(g - r) of the rank-degenerate locus.
Int degeneracy_codim(int g, int n, int d0, int r);

}  // namespace ccf

#pragma once

#include <vector>

#include "ccf/enclosure.hpp"
#include "ccf/errors.hpp"
#include "ccf/exact.hpp"

namespace ccf {

// Tuple sets behind the level-j count: Weighted takes sum m_k * k = j,
// Unweighted takes sum m_k = j.
enum class WeightConvention { Weighted, Unweighted };

// Level data (d_1..d_n, e_1..e_n) of a filtered affine space: d_k source
// dimensions, e_k target dimensions.
struct FilteredShape {
  std::vector<Int> d;
  std::vector<Int> e;

  int levels() const { return (int)d.size(); }
  static FilteredShape make(std::vector<Int> d, std::vector<Int> e);
};

// D_j = sum over tuples (m_k) in S_j of prod binom(d_k + m_k - 1, m_k);
// D_0 = 1.
Int count_Dj(const FilteredShape& shape, int j,
             WeightConvention conv = WeightConvention::Weighted);

// J = sum_i e_i * sum_{0<=j<=i} D_j, the dimension of the space of framed
// filtered maps with the given level data.
Int J_exact(const FilteredShape& shape,
            WeightConvention conv = WeightConvention::Weighted);

// Closed-form upper bound for J over all shapes with d_1 = r, d_i <= alpha^i
// (i > 1), e_i <= beta^i / i.  Case split on r vs 2e*alpha; an enclosure too
// wide to decide the case raises a precision error.
BoundValue J_upper(const BoundValue& r, const BoundValue& alpha,
                   const BoundValue& beta, int n);
BoundValue J_upper(const ExactScalar& r, const ExactScalar& alpha,
                   const ExactScalar& beta, int n, long digits = 30);

// Least integer strictly greater than J / sum(e_i - d_i); requires a positive
// total defect.
Int nondensity_threshold(const FilteredShape& shape,
                         WeightConvention conv = WeightConvention::Weighted);

}  // namespace ccf

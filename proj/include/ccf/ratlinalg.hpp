#pragma once

#include <optional>
#include <vector>

#include "ccf/exact.hpp"

namespace ccf {

using RatMatrix = std::vector<std::vector<ExactScalar>>;

RatMatrix rat_identity(int n);
RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b);
RatMatrix rat_add(const RatMatrix& a, const RatMatrix& b);
bool rat_is_zero(const RatMatrix& m);
bool rat_commute(const RatMatrix& a, const RatMatrix& b);
bool rat_is_nilpotent(const RatMatrix& m);  // square input

int rat_rank(RatMatrix m);

// Basis of the right null space {x : m x = 0}; empty when injective.
std::vector<std::vector<ExactScalar>> rat_nullspace(const RatMatrix& m);

// Any particular solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<ExactScalar>> rat_solve(const RatMatrix& A,
                                                  const std::vector<ExactScalar>& b);

}  // namespace ccf

#pragma once

#include <string>
#include <vector>

#include "ccf/ratlinalg.hpp"
#include "ccf/series.hpp"

namespace ccf {

// dt_i/t_i pole at one variable with its constant nilpotent residue matrix.
struct SingularPart {
  int var;
  RatMatrix residue;
};

// Matrix-valued 1-form sum_k A_k dt_k + sum_i N_i dt_i/t_i over a truncated
// series ring, one regular component per variable.
class ConnectionForm {
 public:
  static ConnectionForm make(std::vector<SeriesMatrix> components,
                             std::vector<SingularPart> singular = {});

  int dim() const { return dim_; }
  const SeriesRing& ring() const { return components_[0].ring(); }
  int nvars() const { return (int)components_.size(); }
  const SeriesMatrix& component(int k) const { return components_.at(k); }
  const std::vector<SingularPart>& singular() const { return singular_; }
  bool has_singular() const { return !singular_.empty(); }

 private:
  ConnectionForm(std::vector<SeriesMatrix> c, std::vector<SingularPart> s)
      : components_(std::move(c)), singular_(std::move(s)), dim_(components_[0].rows()) {}
  std::vector<SeriesMatrix> components_;
  std::vector<SingularPart> singular_;
  int dim_;
};

struct FlatnessReport {
  bool flat;
  int max_residual_degree;  // -1 when flat
  std::string note;
};

// dA_k/dt_l - dA_l/dt_k = [A_l, A_k] for all pairs, at truncation order.
FlatnessReport flatness_check(const ConnectionForm& form);

// Horizontal frame H with dH = Lambda H and H(0) = identity.
struct TransportResult {
  SeriesMatrix H;
  int order;
};

// Degree-by-degree Picard solve; requires a flat, pole-free connection and
// order at most the component cap.
TransportResult parallel_transport(const ConnectionForm& form, int order);

// H(x2) H(x1)^{-1}: the fibre-to-fibre transport between two disk points.
PadicMatrix transport_evaluate(const TransportResult& res, long p, int prec,
                               const std::vector<PadicScalar>& x1,
                               const std::vector<PadicScalar>& x2);

// Integrals of one-variable forms between two points of one residue disk,
// computed by nilpotent 2x2 transport and re-checked against the direct
// antiderivative difference.
std::vector<PadicScalar> coleman_disk_integral(const std::vector<TruncSeries>& forms,
                                               long p, int prec,
                                               const PadicScalar& x1,
                                               const PadicScalar& x2);

struct BettiSquareReport {
  bool ok;
  int residual_degree;  // -1 when the square commutes
  std::string note;
};

// For a flat two-step family over (fibre var 0, base vars rest) with block
// shape [[0,0],[B,0]]: the bottom-left block of the horizontal frame must
// equal the fibrewise antiderivative of B_0 at every base parameter.
BettiSquareReport betti_square_check(const ConnectionForm& family, int order);

// Lift into the same ring with log symbols enabled.
SeriesMatrix with_log_ring(const SeriesMatrix& m);

// exp(sum_i N_i L_i) . G for commuting nilpotent residues, exact by nilpotency.
SeriesMatrix log_singular_transport(const std::vector<RatMatrix>& residues,
                                    const TransportResult& G);

// Bottom-left block of the distinguished residue matrix in the pole-only
// normal form d - sum N_i dt_i/t_i; rank/cokernel give the quotient structure.
struct ResidueFunctional {
  RatMatrix block;
  int split;        // rows above the block
  int rank;
  int coker_dim;
};

ResidueFunctional residue_functional(const ConnectionForm& form);

}  // namespace ccf

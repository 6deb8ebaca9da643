#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccf/ratlinalg.hpp"
#include "ccf/series.hpp"

namespace ccf {

// Local chart of a parametrized subvariety: ambient coordinates as truncated
// series in the chart parameters.  The basepoint is the tuple of constant
// terms; parameters are centred at the chart origin.
struct SubvarietyChart {
  SeriesRing ring;                // parameter ring, log-free
  std::vector<TruncSeries> maps;  // one series per ambient coordinate

  static SubvarietyChart make(const SeriesRing& ring, std::vector<TruncSeries> maps);
  int nparams() const { return ring.nvars(); }
  std::vector<ExactScalar> basepoint() const;
};

// A Lie-algebra-valued 1-form written out on a chart: row a, column b holds
// the coefficient of dparam_b in the a-th coordinate of the form.
struct PulledBackForm {
  SeriesRing ring;
  std::vector<std::vector<TruncSeries>> M;

  static PulledBackForm make(const SeriesRing& ring,
                             std::vector<std::vector<TruncSeries>> M);
  int gdim() const { return (int)M.size(); }
  int nparams() const { return ring.nvars(); }
};

// Restriction of a form along the chart: omega has one row per Lie-algebra
// coordinate and one column per ambient variable, over the ambient ring.
// M[a][b] = sum_i (omega[a][i] at maps) * d maps_i / d param_b.
PulledBackForm pull_back(const SeriesMatrix& omega, const SubvarietyChart& chart);

// Precomposition with an origin-fixing parameter map; images[b] is the old
// parameter b as a series in the new ring.
PulledBackForm reparametrize(const PulledBackForm& form, const SeriesRing& new_ring,
                             const std::vector<TruncSeries>& images);

struct GenericRank {
  int rank;
  std::vector<int> rows, cols;  // witness minor, empty at rank 0
  std::string certificate;      // lowest nonzero term of the witness minor
};

// Largest r such that some r x r minor is a nonzero series at the cap.
GenericRank generic_rank(const PulledBackForm& form);

enum class VerdictKind { SubalgebraDescent, FirstIntegral };

// Left-kernel description of the form: covectors v*_e + sum_j f_ej v*_{s(j)}
// annihilating every column, with the dichotomy on the coefficients f:
// all constant to the cap -> the image stays inside a proper subalgebra;
// otherwise the first non-constant coefficient is a rational first integral.
struct KernelAnalysis {
  int rank = 0;
  std::vector<std::vector<TruncSeries>> kernel_basis;  // gdim coords each
  VerdictKind kind = VerdictKind::SubalgebraDescent;
  RatMatrix subalgebra;  // rows span h when kind is SubalgebraDescent
  std::optional<TruncSeries> f;             // normalized, vanishes at origin
  std::optional<TruncSeries> vanishing_fn;  // equals f - f(basepoint)
  std::string note;                         // truncation-order certificate
};

KernelAnalysis kernel_analysis(const PulledBackForm& form);

// Iterated procedure: FirstIntegral verdicts record a vanishing function and
// cut the chart down by the constraint; SubalgebraDescent verdicts re-express
// the form in subalgebra coordinates; stops when the kernel is trivial, the
// chart is exhausted, or the iteration budget runs out.
struct LocusResult {
  std::vector<TruncSeries> vanishing;  // each in the chart ring of its round
  bool complete = true;
  std::string report;
  std::vector<KernelAnalysis> steps;
};

LocusResult effective_locus(const SeriesMatrix& omega, const SubvarietyChart& chart,
                            int max_iter);

}  // namespace ccf

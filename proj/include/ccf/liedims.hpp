#pragma once

#include <optional>
#include <vector>

#include "ccf/enclosure.hpp"
#include "ccf/exact.hpp"

namespace ccf {

// The two curve classes with closed trace sequences: the thrice-punctured
// line (traces 2^m) and a smooth projective curve of genus g >= 2 (traces
// a_m = alpha_+^m + alpha_-^m via the integer recurrence a_m = 2g a_{m-1} - a_{m-2}).
struct CurveType {
  enum Kind { PuncturedLine, ProjectiveGenus } kind;
  int genus = 0;  // only for ProjectiveGenus, >= 2

  static CurveType p1() { return {PuncturedLine, 0}; }
  static CurveType projective(int g) {
    if (g < 2) throw domain_error("CurveType: genus must be >= 2");
    return {ProjectiveGenus, g};
  }
};

// alpha_+ = g + sqrt(g^2-1) enclosed at the working precision.
BoundValue alpha_plus(int g, long digits = 50);

// Trace sequence a_0..a_N (a_0 = 2). Integer recurrences only, never
// floating powers.
std::vector<Int> trace_seq(const CurveType& curve, int N);

// Graded dimensions e_1..e_N of the associated graded Lie algebra, via
// Moebius inversion of sum_{d|n} d*e_d = a_n.
std::vector<Int> graded_dims(const CurveType& curve, int N);

struct DimEnvelope {
  int n;
  BoundValue lower, upper;
  bool lower_valid;  // analytic lower bound is only asserted for n >= 2
};

// Analytic envelope around e_n: upper 2^n/n resp. alpha_+^n/n (n >= 2 for the
// genus case; n = 1 reports the exact value), lower bound of Witt type.
std::vector<DimEnvelope> dim_envelope(const CurveType& curve, int N, long digits = 50);

struct CharacterRow {
  int n;
  ExactScalar chi;       // chi_n(c), c = complex conjugation
  ExactScalar dim_fixed; // dim V_n^c = (e_n + chi_n(c)) / 2
  bool integral;         // dim_fixed is a non-negative integer <= e_n
};

struct CharacterTable {
  std::vector<CharacterRow> rows;  // n = 1..N
  bool all_integral;
};

// Character of complex conjugation on gr_n, via the trace recursion
// sum_{k|n} (1/k) chi^{(k)}_{n/k}(c) = RHS_n with chi^{(k)}_m(c) = chi_m(c)
// for odd k and e_m for even k. Default RHS for even n is the closed form
// 2*(-1)^(n/2)/n; `published_zero_rhs` selects the flat 0 variant instead,
// whose non-integrality is then reported rather than patched.
CharacterTable filip_character(int g, int N, bool published_zero_rhs = false);

struct DefectRow {
  int n;
  Int e;
  // PuncturedLine: exact local defect e_n - d_n. ProjectiveGenus: a certified
  // lower bound for it (refined route: dim V_n^c; n = 1: e_1 - r).
  ExactScalar level;
  // ProjectiveGenus only: the analytic lower bound for e_n - d_n.
  std::optional<BoundValue> analytic;
  ExactScalar cumulative;  // running sum of `level`
};

struct DefectProfile {
  CurveType curve;
  int r;
  std::vector<DefectRow> rows;
};

// Bloch-Kato defect profile up to level N for Mordell-Weil/S-unit rank r.
// PuncturedLine (r = 2s): d_1 = r, d_i = e_i for odd i > 1, 0 for even i,
// all exact. ProjectiveGenus: certified per-level lower bounds.
DefectProfile defect_profile(const CurveType& curve, int N, int r, long digits = 50);

struct DepthResult {
  int exact_min;   // least n with positive cumulative defect (resp. the
                   // integer criterion a_n >= 2rn+1 in the genus case)
  int sufficient_bound; // closed-form sufficient depth; exact_min <= sufficient_bound
};

// Minimal depth making the cumulative defect positive, next to the
// closed-form sufficient bound it must dominate.
DepthResult min_depth(const CurveType& curve, int r, long digits = 50);

}  // namespace ccf

#include "ccf/bounds.hpp"

#include "ccf/liedims.hpp"

namespace ccf {

namespace {

Int strict_above(const ExactScalar& t) {
  Int n = t.floor() + 1;
  return n < 1 ? Int(1) : n;
}

Int strict_above(const BoundValue& t) {
  Int n = t.floor_hi() + 1;
  return n < 1 ? Int(1) : n;
}

BoundReport invalid_report(std::string name, std::string notes) {
  return BoundReport{std::move(name), ExactScalar(0), 1, false, std::move(notes)};
}

BoundReport exact_report(std::string name, ExactScalar t, std::string notes = "") {
  Int n = strict_above(t);
  return BoundReport{std::move(name), std::move(t), n, true, std::move(notes)};
}

}  // namespace

std::string BoundReport::threshold_str() const {
  if (auto* q = std::get_if<ExactScalar>(&threshold)) return q->str();
  return std::get<BoundValue>(threshold).str();
}

BoundReport thm1_smooth(const FamilyParams& p) {
  if (p.g < 2 || p.r < 0 || p.d < 0 || p.s < 0)
    return invalid_report("smooth-family", "requires g >= 2 and non-negative s, r, d");
  if (p.r > p.g - 2)
    return invalid_report("smooth-family", "window 0 <= r <= g-2 violated");
  ExactScalar t(Int((long)p.s + (long)(p.r - p.d) * (p.g - p.r)),
                Int((long)p.g - p.r - 1));
  return exact_report("smooth-family", t);
}

BoundReport thm1_stable(const FamilyParams& p) {
  if (p.g < 3 || p.r < 0 || p.s < 0)
    return invalid_report("stable-family", "requires g >= 3 and non-negative s, r");
  if (p.r > p.g - 3)
    return invalid_report("stable-family", "window 0 <= r <= g-3 violated");
  long g = p.g, s = p.s, r = p.r;
  ExactScalar edge(Int((r + 1) * (g - 1 - r) + s), Int(g - r - 2));
  ExactScalar vert(Int((r + 1) * (g - r) + s), Int(g - r - 1));
  ExactScalar t = edge * ExactScalar(3 * g) + vert * ExactScalar(2 * g);
  return exact_report("stable-family", t);
}

BoundReport mg_bound(int g, int r, const ExactScalar& tamper_delta) {
  FamilyParams p;
  p.g = g;
  p.s = 3 * g - 3;
  p.r = r;
  BoundReport rep = thm1_stable(p);
  rep.name = "mg";
  if (!rep.valid) return rep;
  ExactScalar t = std::get<ExactScalar>(rep.threshold) + tamper_delta;
  rep.threshold = t;
  rep.min_n = strict_above(t);
  if (r == g - 3) {
    ExactScalar identity(Int(21L * g * g - 30L * g));
    if (t == identity) {
      rep.notes = "collapses to 21g^2-30g";
    } else {
      rep.valid = false;
      rep.notes = "identity 21g^2-30g violated: expected " + identity.str() +
                  ", got " + t.str();
    }
  }
  return rep;
}

BoundReport stoll_zp(int g, int s, int r) {
  if (g < 2) return invalid_report("stoll-zp", "requires g >= 2");
  if (s < 0 || r < 0)
    return invalid_report("stoll-zp", "requires non-negative s, r");
  ExactScalar t(Int((long)g * r + s), Int((long)g - 1));
  return exact_report("stoll-zp", t);
}

bool padic_zp_check(int g, int n, int r, const ExactScalar& dimV) {
  if (n <= 0) throw domain_error("padic_zp_check: n must be positive");
  if (g < 1 || r < 0) throw domain_error("padic_zp_check: need g >= 1, r >= 0");
  long excess = (long)n - std::min(n, g);
  if (!(Int(r) > Int((long)g * excess))) return false;
  ExactScalar rr((long)r);
  ExactScalar bound = rr / ExactScalar((long)n) -
                      rr * ExactScalar(Int((long)n * g - r), Int((long)n * g * g));
  return dimV <= bound;
}

BoundReport sunit_bound(int s, long digits) {
  if (s < 1) return invalid_report("sunit", "requires s >= 1");
  BoundValue y = BoundValue::from_long(2L * s, digits);
  BoundValue ly = y.log();
  BoundValue expo = (ly + ly.log()) / BoundValue::from_long(2, digits).log() +
                    BoundValue::from_long(5, digits);
  BoundValue t = BoundValue::from_long(59, digits) * y.pow(expo) * ly;
  BoundReport rep{"sunit", t, strict_above(t), s > 5, ""};
  if (s <= 5) rep.notes = "stated for s > 5";
  return rep;
}

BoundReport twist_bound(int g, int r, const ExactScalar& cv_product,
                        bool alternate_exponent, long digits) {
  if (g < 2 || r < 1 || cv_product <= ExactScalar(0))
    return invalid_report("twist", "requires g >= 2, r >= 1, cv > 0");
  BoundValue rr = BoundValue::from_long(r, digits);
  BoundValue lr = rr.log();
  BoundValue ap = alpha_plus(g, digits);
  BoundValue expo =
      (lr + lr.log() + BoundValue::from_long(2, digits).log()) / ap.log() +
      BoundValue::from_long(alternate_exponent ? 8 : 4, digits);
  BoundValue t = BoundValue::from_long(3, digits) *
                 BoundValue::from_rat(cv_product, digits) * rr.pow(expo) * lr *
                 ap.pow_ui(3);
  BoundReport rep{"twist", t, strict_above(t), r > 11 * g, ""};
  if (r <= 11 * g) rep.notes = "stated for r > 11g";
  if (alternate_exponent) rep.name = "twist-alt";
  return rep;
}

std::vector<BoundReport> classical_rows(int s, std::optional<int> g, long digits) {
  std::vector<BoundReport> rows;
  if (s >= 0) {
    Int ev = 3 * int_pow(Int(7), (unsigned long)(2 * s + 3));
    rows.push_back(exact_report("evertse", ExactScalar(ev), "count bound"));
    rows.push_back(exact_report("silverman", ExactScalar(int_pow(Int(7), (unsigned long)s)),
                                "scaling factor; leading constant unspecified"));
    if (s >= 2) {
      BoundValue sv = BoundValue::from_long(s, digits);
      BoundValue t = (BoundValue::from_long(3, digits) * (sv / sv.log()).sqrt()).exp();
      rows.push_back(BoundReport{"est-lower", t, strict_above(t), true,
                                 "lower-bound envelope, constant unnormalized (eps=1, c=1)"});
    } else {
      rows.push_back(invalid_report("est-lower", "requires s >= 2 (log s > 0)"));
    }
  }
  if (g && *g >= 2) {
    long gv = *g;
    ExactScalar krzb(Int(84 * gv * gv - 98 * gv + 28));
    rows.push_back(exact_report("krzb", krzb, "count bound"));
    ExactScalar mg(Int(21 * gv * gv - 30 * gv));
    rows.push_back(exact_report("mg-threshold", mg));
    rows.push_back(exact_report("krzb-mg-ratio", krzb / mg, "count/threshold comparison"));
  }
  return rows;
}

std::vector<BoundReport> bad_reduction_rows(int g, int s, int r, int d) {
  std::vector<BoundReport> rows;
  if (g < 2 || s < 0 || r < 0 || d < 0) {
    rows.push_back(invalid_report("bad-reduction", "requires g >= 2, non-negative s, r, d"));
    return rows;
  }
  long gl = g, sl = s, rl = r, dl = d;
  bool vert_ok = gl - rl - 1 > 0;
  bool edge_ok = gl - rl - 2 > 0;
  ExactScalar vert(0), edge(0);
  if (vert_ok) {
    vert = ExactScalar(Int((rl - dl + 1) * (gl - rl) + sl), Int(gl - rl - 1));
    rows.push_back(exact_report("vertex", vert));
  } else {
    rows.push_back(invalid_report("vertex", "needs g-r-1 > 0"));
  }
  if (edge_ok) {
    edge = ExactScalar(Int((rl - dl + 1) * (gl - 1 - rl) + sl), Int(gl - rl - 2));
    rows.push_back(exact_report("edge", edge));
  } else {
    rows.push_back(invalid_report("edge", "needs g-r-2 > 0"));
  }
  if (vert_ok && edge_ok) {
    ExactScalar loose = edge * ExactScalar(3 * gl) + vert * ExactScalar(2 * gl);
    ExactScalar tight = edge * ExactScalar(3 * gl - 3) + vert * ExactScalar(2 * gl - 2);
    rows.push_back(exact_report("assembly-slack", loose, "3g edges, 2g vertices"));
    rows.push_back(exact_report("assembly-tight", tight, "3g-3 edges, 2g-2 vertices"));
  }
  rows.push_back(exact_report("graph-vertex-cap", ExactScalar(Int(2 * gl - 2)),
                              "stable dual graph has at most 2g-2 vertices"));
  rows.push_back(exact_report("graph-edge-cap", ExactScalar(Int(3 * gl - 3)),
                              "stable dual graph has at most 3g-3 edges"));
  return rows;
}

std::pair<bool, ExactScalar> gonality_check(int g, int r, int d, int gamma) {
  if (g - r - 1 <= 0) throw domain_error("gonality_check: needs g-r-1 > 0");
  if (r < d) throw domain_error("gonality_check: needs r >= d");
  if (gamma < 1) throw domain_error("gonality_check: gonality is positive");
  ExactScalar bound(Int((long)(r - d) * (g - r)), Int((long)g - r - 1));
  return {ExactScalar((long)gamma) >= bound, bound};
}

Int degeneracy_codim(int g, int n, int d0, int r) {
  if (n < 0 || d0 < 0 || r < 0) throw domain_error("degeneracy_codim: negative input");
  if (r > std::min((long)n + d0, (long)g))
    throw domain_error("degeneracy_codim: requires r <= min(n+d0, g)");
  return Int((long)n + d0 - r) * Int((long)g - r);
}

}  // namespace ccf

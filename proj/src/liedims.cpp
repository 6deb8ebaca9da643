#include "ccf/liedims.hpp"

namespace ccf {

BoundValue alpha_plus(int g, long digits) {
  if (g < 2) throw domain_error("alpha_plus: genus must be >= 2");
  BoundValue gg = BoundValue::from_long(g, digits);
  BoundValue one = BoundValue::from_long(1, digits);
  return gg + (gg * gg - one).sqrt();
}

std::vector<Int> trace_seq(const CurveType& curve, int N) {
  if (N < 0) throw domain_error("trace_seq: N must be >= 0");
  std::vector<Int> a(N + 1);
  a[0] = 2;
  if (curve.kind == CurveType::PuncturedLine) {
    for (int m = 1; m <= N; ++m) a[m] = int_pow(2, m);
    return a;
  }
  if (N >= 1) a[1] = 2 * curve.genus;
  for (int m = 2; m <= N; ++m) a[m] = 2 * curve.genus * a[m - 1] - a[m - 2];
  return a;
}

std::vector<Int> graded_dims(const CurveType& curve, int N) {
  if (N < 1) throw domain_error("graded_dims: N must be >= 1");
  std::vector<Int> a = trace_seq(curve, N);
  std::vector<Int> e(N + 1);
  for (int n = 1; n <= N; ++n) {
    Int s = 0;
    for (unsigned long d : divisors((unsigned long)n)) s += mobius(d) * a[n / (int)d];
    Int q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), s.get_mpz_t(), Int(n).get_mpz_t());
    if (rem != 0) throw std::logic_error("graded_dims: Moebius sum not divisible by n");
    e[n] = q;
  }
  return std::vector<Int>(e.begin() + 1, e.end());
}

std::vector<DimEnvelope> dim_envelope(const CurveType& curve, int N, long digits) {
  std::vector<Int> a = trace_seq(curve, N);
  std::vector<DimEnvelope> out;
  out.reserve(N);
  for (int n = 1; n <= N; ++n) {
    BoundValue bn = BoundValue::from_long(n, digits);
    if (curve.kind == CurveType::PuncturedLine) {
      // upper 2^n/n, lower 2^n/n - 2^(n/2+1)/sqrt(n)
      BoundValue up = BoundValue::from_rat(ExactScalar(int_pow(2, n), Int(n)), digits);
      BoundValue half_pow = BoundValue::from_int(int_pow(2, n + 2), digits).sqrt();
      BoundValue low = up - half_pow / bn.sqrt();
      out.push_back({n, low, up, n >= 2});
    } else {
      if (n == 1) {
        BoundValue ex = BoundValue::from_long(2 * curve.genus, digits);
        out.push_back({1, ex, ex, true});
        continue;
      }
      // alpha_+^n is bracketed by [a_n - 1, a_n] since 0 < alpha_-^n < 1,
      // and alpha_+^(n/2) + alpha_-^(n/2) = sqrt(a_n + 2) exactly
      // (alpha_+ alpha_- = 1).
      BoundValue upper = BoundValue::hull(
          BoundValue::from_rat(ExactScalar(a[n] - 1, Int(n)), digits),
          BoundValue::from_rat(ExactScalar(a[n], Int(n)), digits));
      BoundValue anb = BoundValue::from_rat(ExactScalar(a[n], Int(n)), digits);
      BoundValue s2 = BoundValue::from_int(a[n] + 2, digits).sqrt();
      BoundValue low = anb - BoundValue::from_long(2, digits) * s2 / bn.sqrt();
      out.push_back({n, low, upper, true});
    }
  }
  return out;
}

CharacterTable filip_character(int g, int N, bool published_zero_rhs) {
  if (N < 1) throw domain_error("filip_character: N must be >= 1");
  CurveType curve = CurveType::projective(g);
  std::vector<Int> e = graded_dims(curve, N);
  CharacterTable table;
  table.all_integral = true;
  std::vector<ExactScalar> chi(N + 1);
  for (int n = 1; n <= N; ++n) {
    ExactScalar rhs(0);
    if (n % 2 == 0 && !published_zero_rhs) {
      int sgn = (n / 2) % 2 == 0 ? 1 : -1;
      rhs = ExactScalar(2 * sgn, (long)n);
    }
    ExactScalar acc(0);
    for (unsigned long k : divisors((unsigned long)n)) {
      if (k == 1) continue;
      int m = n / (int)k;
      ExactScalar inner = (k % 2 == 1) ? chi[m] : ExactScalar(e[m - 1]);
      acc += inner / ExactScalar((long)k);
    }
    chi[n] = rhs - acc;
    ExactScalar dim = (ExactScalar(e[n - 1]) + chi[n]) / ExactScalar(2);
    bool ok = dim.is_integer() && dim >= ExactScalar(0) && dim <= ExactScalar(e[n - 1]);
    if (!ok) table.all_integral = false;
    table.rows.push_back({n, chi[n], dim, ok});
  }
  return table;
}

DefectProfile defect_profile(const CurveType& curve, int N, int r, long digits) {
  if (N < 1) throw domain_error("defect_profile: N must be >= 1");
  if (r < 0) throw domain_error("defect_profile: rank must be >= 0");
  DefectProfile prof{curve, r, {}};
  std::vector<Int> e = graded_dims(curve, N);
  if (curve.kind == CurveType::PuncturedLine) {
    ExactScalar cum(0);
    for (int n = 1; n <= N; ++n) {
      ExactScalar level = n == 1            ? ExactScalar(Int(e[0] - r))
                          : (n % 2 == 0)    ? ExactScalar(e[n - 1])
                                            : ExactScalar(0);
      cum += level;
      prof.rows.push_back({n, e[n - 1], level, std::nullopt, cum});
    }
    return prof;
  }
  std::vector<Int> a = trace_seq(curve, N + 2);
  CharacterTable chars = filip_character(curve.genus, N);
  ExactScalar cum(0);
  for (int n = 1; n <= N; ++n) {
    ExactScalar level = n == 1 ? ExactScalar(Int(e[0] - r)) : chars.rows[n - 1].dim_fixed;
    cum += level;
    std::optional<BoundValue> analytic;
    if (n >= 2) {
      BoundValue bn = BoundValue::from_long(n, digits);
      BoundValue t1 = BoundValue::from_rat(ExactScalar(a[n], 2 * Int(n)), digits);
      BoundValue t2 = BoundValue::from_int(a[n + 2] + 2, digits).sqrt() /
                      BoundValue::from_long(2, digits);
      BoundValue t3 = BoundValue::from_int(a[n] + 2, digits).sqrt() / bn.sqrt();
      analytic = t1 - t2 - t3;
    }
    prof.rows.push_back({n, e[n - 1], level, analytic, cum});
  }
  return prof;
}

DepthResult min_depth(const CurveType& curve, int r, long digits) {
  DepthResult res{0, 0};
  if (curve.kind == CurveType::PuncturedLine) {
    if (r < 2 || r % 2 != 0) throw domain_error("min_depth: punctured-line rank must be even, >= 2");
    // cumulative defect 2 - r + sum of even-level dims
    ExactScalar cum(2 - (long)r);
    std::vector<Int> e;
    int n = 0;
    while (true) {
      ++n;
      if (n > 4096) throw std::logic_error("min_depth: defect failed to turn positive");
      if ((int)e.size() < n) e = graded_dims(curve, std::max(n, (int)e.size() * 2 + 16));
      if (n % 2 == 0) cum += ExactScalar(e[n - 1]);
      if (cum > ExactScalar(0)) break;
    }
    res.exact_min = n;
    ExactScalar rr((long)r);
    StrictCeil c = strict_int_above(
        [&](long d) {
          BoundValue br = BoundValue::from_rat(rr, d);
          BoundValue l2 = BoundValue::from_long(2, d).log();
          BoundValue one = BoundValue::from_long(1, d);
          return one + (br.log() + (br.log() + l2).log()) / l2;
        },
        digits);
    res.sufficient_bound = (int)c.n.get_si();
    // The closed form certifies 2^n/n > r, which forces a positive defect
    // only at even n; the guaranteed depth is never below the exact crossing.
    if (res.sufficient_bound < res.exact_min) res.sufficient_bound = res.exact_min;
  } else {
    if (r < 1) throw domain_error("min_depth: rank must be >= 1");
    // Integer criterion: alpha_+^n/n > 2r  <=>  a_n >= 2rn + 1.
    int n = 0;
    Int am1 = 2, am = 2 * curve.genus;  // a_0, a_1
    while (true) {
      ++n;
      if (n > 4096) throw std::logic_error("min_depth: criterion failed to trigger");
      if (n >= 2) {
        Int next = 2 * curve.genus * am - am1;
        am1 = am;
        am = next;
      }
      if (am >= 2 * Int(r) * n + 1) break;
    }
    res.exact_min = n;
    ExactScalar rr((long)r);
    StrictCeil c = strict_int_above(
        [&](long d) {
          BoundValue br = BoundValue::from_rat(rr, d);
          BoundValue l2 = BoundValue::from_long(2, d).log();
          return (br.log() + l2 + (br.log() + l2).log()) / alpha_plus(curve.genus, d).log();
        },
        digits);
    long pb = c.n.get_si();
    res.sufficient_bound = (int)(pb < 1 ? 1 : pb);
  }
  if (res.exact_min < 1) res.exact_min = 1;
  return res;
}

}  // namespace ccf

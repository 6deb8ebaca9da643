#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mpfr.h>

#include "ccf/bounds.hpp"

using namespace ccf;

namespace {

ExactScalar exact_of(const BoundReport& r) {
  return std::get<ExactScalar>(r.threshold);
}

void check_ceiling(const BoundReport& r) {
  if (!r.valid) return;
  ExactScalar n(r.min_n);
  if (r.threshold_is_exact()) {
    ExactScalar t = exact_of(r);
    CHECK(t < n);
    CHECK(n - ExactScalar(1) <= t);
  } else {
    const BoundValue& t = std::get<BoundValue>(r.threshold);
    CHECK(t.surely_lt(n));
    CHECK_FALSE(t.surely_lt(n - ExactScalar(1)));
  }
}

}  // namespace

TEST_CASE("smooth-family thresholds") {
  BoundReport a = thm1_smooth({.g = 2, .s = 1, .r = 0, .d = 0});
  CHECK(a.valid);
  CHECK(exact_of(a) == ExactScalar(1));
  CHECK(a.min_n == 2);
  BoundReport b = thm1_smooth({.g = 3, .s = 0, .r = 0, .d = 0});
  CHECK(exact_of(b) == ExactScalar(0));
  CHECK(b.min_n == 1);
  BoundReport c = thm1_smooth({.g = 5, .s = 2, .r = 3, .d = 1});
  CHECK(exact_of(c) == ExactScalar(6));
  CHECK(c.min_n == 7);
  BoundReport bad = thm1_smooth({.g = 3, .s = 0, .r = 2, .d = 0});
  CHECK_FALSE(bad.valid);
  for (const auto& rep : {a, b, c}) check_ceiling(rep);
}

TEST_CASE("stable-family thresholds") {
  BoundReport a = thm1_stable({.g = 4, .s = 1, .r = 0});
  CHECK(exact_of(a) == ExactScalar(112, 3));  // 37 1/3
  CHECK(a.min_n == 38);
  BoundReport b = thm1_stable({.g = 3, .s = 0, .r = 0});
  CHECK(exact_of(b) == ExactScalar(27));
  CHECK(b.min_n == 28);
  CHECK_FALSE(thm1_stable({.g = 4, .s = 0, .r = 2}).valid);
  check_ceiling(a);
  check_ceiling(b);
}

TEST_CASE("moduli bound collapses to 21g^2-30g at r = g-3") {
  for (int g = 4; g <= 50; ++g) {
    BoundReport rep = mg_bound(g, g - 3);
    CHECK(rep.valid);
    CHECK(exact_of(rep) == ExactScalar(Int(21L * g * g - 30L * g)));
  }
  BoundReport four = mg_bound(4, 1);
  CHECK(exact_of(four) == ExactScalar(216));
  CHECK(four.min_n == 217);
  BoundReport ten = mg_bound(10, 7);
  CHECK(exact_of(ten) == ExactScalar(1800));
  // r below g-3 evaluates the general formula without the identity note
  BoundReport gen = mg_bound(4, 0);
  CHECK(gen.valid);
  CHECK(gen.notes.empty());
  CHECK(exact_of(gen) == ExactScalar(320, 3));
}

TEST_CASE("tampered moduli bound trips the identity check") {
  BoundReport rep = mg_bound(4, 1, ExactScalar(1));
  CHECK_FALSE(rep.valid);
  CHECK(rep.notes.find("violated") != std::string::npos);
  // tampering off the identity row leaves validity alone
  CHECK(mg_bound(4, 0, ExactScalar(1)).valid);
}

TEST_CASE("projection threshold") {
  BoundReport a = stoll_zp(2, 1, 1);
  CHECK(exact_of(a) == ExactScalar(3));
  CHECK(a.min_n == 4);
  BoundReport b = stoll_zp(2, 0, 0);
  CHECK(exact_of(b) == ExactScalar(0));
  CHECK(b.min_n == 1);
  CHECK_FALSE(stoll_zp(1, 0, 0).valid);
  BoundReport c = stoll_zp(5, 2, 3);
  CHECK(exact_of(c) == ExactScalar(17, 4));
  check_ceiling(c);
}

TEST_CASE("rank-versus-fixed-space check") {
  CHECK(padic_zp_check(2, 2, 3, ExactScalar(1)));
  CHECK_FALSE(padic_zp_check(2, 2, 3, ExactScalar(2)));
  CHECK_FALSE(padic_zp_check(2, 1, 0, ExactScalar(0)));
  CHECK_THROWS_AS(padic_zp_check(2, 0, 3, ExactScalar(1)), domain_error);
  // the bound itself: r/n - r(ng-r)/(ng^2) = 3/2 - 3/8 = 9/8
  CHECK(padic_zp_check(2, 2, 3, ExactScalar(9, 8)));
}

TEST_CASE("unit-equation count bound") {
  BoundReport six = sunit_bound(6);
  CHECK(six.valid);
  const BoundValue& t = std::get<BoundValue>(six.threshold);
  CHECK(t.surely_gt(ExactScalar(Int("7000000000000"))));
  CHECK(t.surely_lt(ExactScalar(Int("7200000000000"))));
  check_ceiling(six);
  CHECK_FALSE(sunit_bound(5).valid);
  CHECK(sunit_bound(5).notes.find("s > 5") != std::string::npos);
  // independent fixed-precision evaluation, plain nearest rounding
  mpfr_t v, l, e, tmp;
  mpfr_inits2(256, v, l, e, tmp, (mpfr_ptr) nullptr);
  mpfr_set_ui(v, 12, MPFR_RNDN);
  mpfr_log(l, v, MPFR_RNDN);            // log 12
  mpfr_log(e, l, MPFR_RNDN);            // log log 12
  mpfr_add(e, e, l, MPFR_RNDN);
  mpfr_set_ui(tmp, 2, MPFR_RNDN);
  mpfr_log(tmp, tmp, MPFR_RNDN);
  mpfr_div(e, e, tmp, MPFR_RNDN);
  mpfr_add_ui(e, e, 5, MPFR_RNDN);      // exponent
  mpfr_pow(v, v, e, MPFR_RNDN);         // 12^expo
  mpfr_mul_ui(v, v, 59, MPFR_RNDN);
  mpfr_mul(v, v, l, MPFR_RNDN);
  mpfr_exp_t ex;
  char* digs = mpfr_get_str(nullptr, &ex, 10, 45, v, MPFR_RNDN);
  ExactScalar oracle = ExactScalar::parse(std::string(digs)) /
                       ExactScalar(int_pow(Int(10), 45), Int(1)) *
                       ExactScalar(int_pow(Int(10), (unsigned long)ex), Int(1));
  mpfr_free_str(digs);
  mpfr_clears(v, l, e, tmp, (mpfr_ptr) nullptr);
  ExactScalar lo = t.lo_rat(), hi = t.hi_rat();
  ExactScalar tol(Int(1), int_pow(Int(10), 30));
  CHECK((lo - oracle).abs() / oracle < tol);
  CHECK((hi - oracle).abs() / oracle < tol);
  CHECK((hi - lo) / oracle < tol);
  // monotone in s
  CHECK(std::get<BoundValue>(sunit_bound(7).threshold)
            .surely_gt(std::get<BoundValue>(six.threshold)));
}

TEST_CASE("twist count bound") {
  BoundReport a = twist_bound(2, 23, ExactScalar(1));
  CHECK(a.valid);
  CHECK(std::get<BoundValue>(a.threshold).surely_gt(ExactScalar(0)));
  check_ceiling(a);
  BoundReport b = twist_bound(2, 22, ExactScalar(1));
  CHECK_FALSE(b.valid);
  // the alternate assembly exceeds the theorem-statement form
  BoundReport c = twist_bound(2, 30, ExactScalar(1));
  BoundReport d = twist_bound(2, 30, ExactScalar(1), true);
  CHECK(std::get<BoundValue>(d.threshold)
            .surely_gt(std::get<BoundValue>(c.threshold)));
  CHECK(d.name == "twist-alt");
}

TEST_CASE("comparison constants") {
  auto rows = classical_rows(1, 4);
  bool saw_evertse = false, saw_krzb = false, saw_mg = false, saw_ratio = false;
  for (const auto& r : rows) {
    if (r.name == "evertse") {
      saw_evertse = true;
      CHECK(exact_of(r) == ExactScalar(50421));
    }
    if (r.name == "krzb") {
      saw_krzb = true;
      CHECK(exact_of(r) == ExactScalar(980));
    }
    if (r.name == "mg-threshold") {
      saw_mg = true;
      CHECK(exact_of(r) == ExactScalar(216));
    }
    if (r.name == "krzb-mg-ratio") {
      saw_ratio = true;
      CHECK(exact_of(r) == ExactScalar(980) / ExactScalar(216));
    }
    check_ceiling(r);
  }
  CHECK(saw_evertse);
  CHECK(saw_krzb);
  CHECK(saw_mg);
  CHECK(saw_ratio);
  // envelope row needs log s > 0
  auto low = classical_rows(1);
  for (const auto& r : low)
    if (r.name == "est-lower") CHECK_FALSE(r.valid);
  auto highs = classical_rows(9);
  for (const auto& r : highs)
    if (r.name == "est-lower") {
      CHECK(r.valid);
      // exp(3 sqrt(9/log 9)) ~ exp(6.075) ~ 434.9
      CHECK(std::get<BoundValue>(r.threshold).surely_gt(ExactScalar(430)));
      CHECK(std::get<BoundValue>(r.threshold).surely_lt(ExactScalar(440)));
    }
}

TEST_CASE("bad-reduction rows") {
  auto rows = bad_reduction_rows(4, 1, 0, 0);
  ExactScalar vert(0), edge(0), slack(0), tight(0);
  for (const auto& r : rows) {
    if (r.name == "vertex") vert = exact_of(r);
    if (r.name == "edge") edge = exact_of(r);
    if (r.name == "assembly-slack") slack = exact_of(r);
    if (r.name == "assembly-tight") tight = exact_of(r);
    check_ceiling(r);
  }
  CHECK(vert == ExactScalar(5, 3));
  CHECK(edge == ExactScalar(2));
  CHECK(slack == ExactScalar(112, 3));
  // d = 0 assembly matches the stable-family bound
  CHECK(slack == exact_of(thm1_stable({.g = 4, .s = 1, .r = 0})));
  CHECK(tight < slack);
  // stable graph caps at g = 2
  auto caps = bad_reduction_rows(2, 0, 0, 0);
  for (const auto& r : caps) {
    if (r.name == "graph-vertex-cap") CHECK(exact_of(r) == ExactScalar(2));
    if (r.name == "graph-edge-cap") CHECK(exact_of(r) == ExactScalar(3));
  }
}

TEST_CASE("gonality condition") {
  auto [met, bound] = gonality_check(4, 2, 0, 4);
  CHECK(met);
  CHECK(bound == ExactScalar(4));
  auto [met2, bound2] = gonality_check(4, 2, 0, 3);
  CHECK_FALSE(met2);
  CHECK(bound2 == ExactScalar(4));
  auto [met3, bound3] = gonality_check(5, 1, 1, 1);
  CHECK(met3);
  CHECK(bound3 == ExactScalar(0));
  CHECK_THROWS_AS(gonality_check(3, 2, 0, 1), domain_error);
}

TEST_CASE("degenerate-locus codimension") {
  CHECK(degeneracy_codim(2, 3, 0, 1) == 2);
  CHECK(degeneracy_codim(5, 2, 1, 3) == 0);
  CHECK(degeneracy_codim(7, 3, 4, 7) == 0);
  CHECK(degeneracy_codim(3, 2, 1, 0) == 9);
  CHECK_THROWS_AS(degeneracy_codim(2, 1, 0, 2), domain_error);
}

TEST_CASE("threshold monotonicity in s and r") {
  for (int g : {4, 6, 9}) {
    ExactScalar prev(-1);
    for (int s = 0; s <= 12; ++s) {
      ExactScalar t = exact_of(thm1_smooth({.g = g, .s = s, .r = 1, .d = 0}));
      CHECK(t >= prev);
      prev = t;
    }
    prev = ExactScalar(-1);
    for (int r = 0; r <= g - 2; ++r) {
      ExactScalar t = exact_of(thm1_smooth({.g = g, .s = 2, .r = r, .d = 0}));
      CHECK(t >= prev);
      prev = t;
    }
    prev = ExactScalar(-1);
    for (int r = 0; r <= g - 3; ++r) {
      ExactScalar t = exact_of(thm1_stable({.g = g, .s = 2, .r = r}));
      CHECK(t >= prev);
      prev = t;
    }
  }
  ExactScalar prev(-1);
  for (int s = 6; s <= 40; ++s) {
    ExactScalar hi = std::get<BoundValue>(sunit_bound(s).threshold).hi_rat();
    CHECK(hi > prev);
    prev = hi;
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "ccf/axschanuel.hpp"
#include "ccf/errors.hpp"

using namespace ccf;

namespace {

using Grid = std::vector<std::vector<TruncSeries>>;

TruncSeries cst(const SeriesRing& r, long n, long d = 1) {
  return TruncSeries::constant(r, ExactScalar(n, d));
}

// standard corpus: constant form on the parabola chart
PulledBackForm parabola_form(int cap) {
  SeriesRing r = SeriesRing::make({"t1"}, cap);
  return PulledBackForm::make(
      r, {{cst(r, 1)}, {ExactScalar(2) * TruncSeries::var(r, 0)}});
}

PulledBackForm disk_form(int cap) {
  SeriesRing r = SeriesRing::make({"t1", "t2"}, cap);
  TruncSeries z(r);
  return PulledBackForm::make(r, {{cst(r, 1), z}, {TruncSeries::var(r, 0), z}});
}

PulledBackForm constant_kernel_form(int cap) {
  SeriesRing r = SeriesRing::make({"t1", "t2"}, cap);
  TruncSeries z(r);
  return PulledBackForm::make(r, {{cst(r, 1), z}, {cst(r, 3, 2), z}});
}

PulledBackForm row_mixed(const PulledBackForm& F, const RatMatrix& C) {
  int g = F.gdim(), w = F.nparams();
  Grid M(g, std::vector<TruncSeries>(w, TruncSeries(F.ring)));
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < w; ++b)
      for (int k = 0; k < g; ++k) M[a][b] += C[a][k] * F.M[k][b];
  return PulledBackForm::make(F.ring, M);
}

TruncSeries random_quad(const SeriesRing& r, std::mt19937& rng) {
  TruncSeries q(r);
  for (int t = 0; t < 3; ++t) {
    std::vector<int> e(r.nvars(), 0);
    e[rng() % r.nvars()] += 1;
    e[rng() % r.nvars()] += 1;
    long num = (long)(rng() % 7) - 3;
    if (num != 0) q += TruncSeries::monomial(r, e, ExactScalar(num));
  }
  return q;
}

}  // namespace

TEST_CASE("pull back on the standard examples") {
  // identity chart: the form is copied verbatim
  SeriesRing a2 = SeriesRing::make({"t1", "t2"}, 12);
  SeriesMatrix omega(a2, 2, 2);
  omega.at(0, 0) = cst(a2, 1);
  omega.at(1, 0) = TruncSeries::var(a2, 0);
  SubvarietyChart idchart = SubvarietyChart::make(
      a2, {TruncSeries::var(a2, 0), TruncSeries::var(a2, 1)});
  PulledBackForm M = pull_back(omega, idchart);
  CHECK(M.M[0][0] == cst(a2, 1));
  CHECK(M.M[0][1].is_zero());
  CHECK(M.M[1][0] == TruncSeries::var(a2, 0));
  CHECK(M.M[1][1].is_zero());

  // constant form on the parabola chart picks up the chain rule
  SeriesRing z2 = SeriesRing::make({"z1", "z2"}, 12);
  SeriesMatrix eye(z2, 2, 2);
  eye.at(0, 0) = cst(z2, 1);
  eye.at(1, 1) = cst(z2, 1);
  SeriesRing p1 = SeriesRing::make({"t1"}, 12);
  TruncSeries t = TruncSeries::var(p1, 0);
  SubvarietyChart parabola = SubvarietyChart::make(p1, {t, t * t});
  PulledBackForm P = pull_back(eye, parabola);
  CHECK(P.gdim() == 2);
  CHECK(P.nparams() == 1);
  CHECK(P.M[0][0] == cst(p1, 1));
  CHECK(P.M[1][0] == ExactScalar(2) * t);

  // constant chart maps kill every column
  SubvarietyChart point = SubvarietyChart::make(p1, {cst(p1, 1, 2), cst(p1, 3)});
  PulledBackForm Z = pull_back(eye, point);
  CHECK(Z.M[0][0].is_zero());
  CHECK(Z.M[1][0].is_zero());
  CHECK(point.basepoint()[0] == ExactScalar(1, 2));
}

TEST_CASE("pull back recentres at a non-central basepoint") {
  SeriesRing z1 = SeriesRing::make({"z"}, 8);
  SeriesMatrix omega(z1, 1, 1);
  omega.at(0, 0) = TruncSeries::var(z1, 0) * TruncSeries::var(z1, 0);
  SeriesRing p = SeriesRing::make({"t"}, 8);
  TruncSeries t = TruncSeries::var(p, 0);
  SubvarietyChart chart = SubvarietyChart::make(p, {cst(p, 1) + t});
  PulledBackForm M = pull_back(omega, chart);
  // z^2 dz along z = 1 + t gives (1 + t)^2
  CHECK(M.M[0][0] == cst(p, 1) + ExactScalar(2) * t + t * t);
}

TEST_CASE("pull back validation") {
  SeriesRing z2 = SeriesRing::make({"z1", "z2"}, 12);
  SeriesMatrix eye(z2, 2, 2);
  eye.at(0, 0) = cst(z2, 1);
  eye.at(1, 1) = cst(z2, 1);

  SeriesRing pshort = SeriesRing::make({"t1"}, 10);
  TruncSeries ts = TruncSeries::var(pshort, 0);
  CHECK_THROWS_AS(pull_back(eye, SubvarietyChart::make(pshort, {ts, ts * ts})),
                  domain_error);

  SeriesRing p1 = SeriesRing::make({"t1"}, 12);
  TruncSeries t = TruncSeries::var(p1, 0);
  CHECK_THROWS_AS(pull_back(eye, SubvarietyChart::make(p1, {t})), domain_error);

  SeriesMatrix ragged(z2, 2, 1);
  ragged.at(0, 0) = cst(z2, 1);
  CHECK_THROWS_AS(pull_back(ragged, SubvarietyChart::make(p1, {t})), domain_error);
}

TEST_CASE("generic rank with certificates") {
  PulledBackForm disk = disk_form(16);
  GenericRank g1 = generic_rank(disk);
  CHECK(g1.rank == 1);
  CHECK(g1.certificate.find("lowest term") != std::string::npos);

  SeriesRing r = disk.ring;
  TruncSeries z(r), one = cst(r, 1);
  CHECK(generic_rank(PulledBackForm::make(r, {{one, z}, {z, one}})).rank == 2);
  CHECK(generic_rank(PulledBackForm::make(r, {{z, z}, {z, z}})).rank == 0);

  SeriesRing p1 = SeriesRing::make({"t1"}, 16);
  TruncSeries t = TruncSeries::var(p1, 0);
  CHECK(generic_rank(PulledBackForm::make(p1, {{t}})).rank == 1);
  CHECK(generic_rank(parabola_form(16)).rank == 1);
}

TEST_CASE("kernel analysis resolves the dichotomy") {
  // parabola: non-constant kernel coefficient, first integral t1
  PulledBackForm P = parabola_form(16);
  KernelAnalysis ka = kernel_analysis(P);
  CHECK(ka.rank == 1);
  REQUIRE(ka.kernel_basis.size() == 1);
  TruncSeries t = TruncSeries::var(P.ring, 0);
  CHECK(ka.kernel_basis[0][0] == ExactScalar(-2) * t);
  CHECK(ka.kernel_basis[0][1] == cst(P.ring, 1));
  CHECK(ka.kind == VerdictKind::FirstIntegral);
  REQUIRE(ka.f.has_value());
  CHECK(*ka.f == t);
  CHECK(*ka.vanishing_fn == t);
  CHECK(ka.note.find("16") != std::string::npos);

  // two-disk variant
  PulledBackForm D = disk_form(16);
  KernelAnalysis kd = kernel_analysis(D);
  CHECK(kd.kind == VerdictKind::FirstIntegral);
  CHECK(*kd.f == TruncSeries::var(D.ring, 0));

  // constant coefficient: descent onto span{v1 + (3/2) v2}
  PulledBackForm C = constant_kernel_form(16);
  KernelAnalysis kc = kernel_analysis(C);
  CHECK(kc.kind == VerdictKind::SubalgebraDescent);
  REQUIRE(kc.subalgebra.size() == 1);
  CHECK_FALSE(kc.subalgebra[0][0] == ExactScalar(0));
  CHECK(kc.subalgebra[0][1] / kc.subalgebra[0][0] == ExactScalar(3, 2));
  CHECK(kc.note.find("constant to order 16") != std::string::npos);

  // zero form: every covector survives, the subalgebra collapses
  SeriesRing r = C.ring;
  TruncSeries z(r);
  KernelAnalysis kz = kernel_analysis(PulledBackForm::make(r, {{z, z}, {z, z}}));
  CHECK(kz.rank == 0);
  CHECK(kz.kernel_basis.size() == 2);
  CHECK(kz.kind == VerdictKind::SubalgebraDescent);
  CHECK(kz.subalgebra.empty());

  // full rank: trivial kernel, whole algebra returned
  TruncSeries one = cst(r, 1);
  KernelAnalysis kf = kernel_analysis(PulledBackForm::make(r, {{one, z}, {z, one}}));
  CHECK(kf.kernel_basis.empty());
  CHECK(kf.kind == VerdictKind::SubalgebraDescent);
  CHECK(kf.subalgebra == rat_identity(2));
}

TEST_CASE("kernel covectors annihilate every column") {
  for (const PulledBackForm& F : {parabola_form(12), disk_form(12)}) {
    KernelAnalysis ka = kernel_analysis(F);
    for (const auto& cov : ka.kernel_basis)
      for (int b = 0; b < F.nparams(); ++b) {
        TruncSeries s(F.ring);
        for (int a = 0; a < F.gdim(); ++a) s += cov[a] * F.M[a][b];
        CHECK(s.truncated(F.ring.cap - 1).is_zero());
      }
  }
}

TEST_CASE("degenerate charts are rejected") {
  SeriesRing p1 = SeriesRing::make({"t1"}, 12);
  TruncSeries t = TruncSeries::var(p1, 0);
  PulledBackForm bad = PulledBackForm::make(p1, {{t}});
  CHECK_THROWS_AS(kernel_analysis(bad), domain_error);
}

TEST_CASE("effective locus on the corpus") {
  SeriesRing z2 = SeriesRing::make({"z1", "z2"}, 16);
  SeriesMatrix eye(z2, 2, 2);
  eye.at(0, 0) = cst(z2, 1);
  eye.at(1, 1) = cst(z2, 1);

  // parabola: one first-integral round, chart exhausted
  SeriesRing p1 = SeriesRing::make({"t1"}, 16);
  TruncSeries t = TruncSeries::var(p1, 0);
  SubvarietyChart parabola = SubvarietyChart::make(p1, {t, t * t});
  LocusResult lp = effective_locus(eye, parabola, 4);
  REQUIRE(lp.vanishing.size() == 1);
  CHECK(lp.vanishing[0] == t);
  CHECK(lp.complete);
  CHECK(lp.report == "chart reduced to its basepoint");
  CHECK(lp.steps.size() == 1);
  CHECK(lp.steps[0].kind == VerdictKind::FirstIntegral);

  // constant kernel: descent recorded, then the rank saturates
  SeriesMatrix two(z2, 2, 2);
  two.at(0, 0) = cst(z2, 1);
  two.at(1, 0) = cst(z2, 3, 2);
  SeriesRing p2 = SeriesRing::make({"t1", "t2"}, 16);
  SubvarietyChart id2 = SubvarietyChart::make(
      p2, {TruncSeries::var(p2, 0), TruncSeries::var(p2, 1)});
  LocusResult lc = effective_locus(two, id2, 4);
  CHECK(lc.vanishing.empty());
  CHECK(lc.complete);
  CHECK(lc.steps.size() == 2);
  CHECK(lc.steps[0].kind == VerdictKind::SubalgebraDescent);
  CHECK(lc.report == "rank saturated on the restricted data");

  // full rank immediately: the hypothesis gives nothing
  LocusResult lf = effective_locus(eye, id2, 4);
  CHECK(lf.vanishing.empty());
  CHECK(lf.complete);
  CHECK(lf.report.find("not exploitable") != std::string::npos);

  // budget exhaustion is flagged
  LocusResult lb = effective_locus(two, id2, 1);
  CHECK_FALSE(lb.complete);
  CHECK(lb.report == "iteration budget exhausted");

  CHECK_THROWS_AS(effective_locus(eye, parabola, 0), domain_error);
}

TEST_CASE("effective locus iterates through mixed rounds") {
  SeriesRing z3 = SeriesRing::make({"z1", "z2", "z3"}, 16);
  SeriesMatrix eye(z3, 3, 3);
  for (int i = 0; i < 3; ++i) eye.at(i, i) = cst(z3, 1);
  SeriesRing p2 = SeriesRing::make({"t1", "t2"}, 16);
  TruncSeries t1 = TruncSeries::var(p2, 0), t2 = TruncSeries::var(p2, 1);

  // graph of t1*t2: first integral t2, then descent, then saturation
  SubvarietyChart gr = SubvarietyChart::make(p2, {t1, t2, t1 * t2});
  LocusResult la = effective_locus(eye, gr, 5);
  REQUIRE(la.vanishing.size() == 1);
  CHECK(la.vanishing[0] == t2);
  CHECK(la.complete);
  CHECK(la.steps.size() == 3);
  CHECK(la.steps[0].kind == VerdictKind::FirstIntegral);
  CHECK(la.steps[1].kind == VerdictKind::SubalgebraDescent);

  // graph of t1*t2 + t1^2: two first-integral rounds
  SubvarietyChart gr2 = SubvarietyChart::make(p2, {t1, t2, t1 * t2 + t1 * t1});
  LocusResult lb = effective_locus(eye, gr2, 5);
  REQUIRE(lb.vanishing.size() == 2);
  CHECK(lb.vanishing[0] == ExactScalar(2) * t1 + t2);
  SeriesRing rrest = lb.vanishing[1].ring();
  CHECK(rrest.nvars() == 1);
  CHECK(lb.vanishing[1] == TruncSeries::var(rrest, 0));
  CHECK(lb.complete);
  CHECK(lb.report == "chart reduced to its basepoint");

  // recorded constraint composes to zero with its own solution
  TruncSeries psi = ExactScalar(-1, 2) * TruncSeries::var(rrest, 0);
  CHECK(lb.vanishing[0].subst({psi, TruncSeries::var(rrest, 0)}).is_zero());
}

TEST_CASE("pull back is functorial under reparametrization") {
  std::mt19937 rng(717273u);
  SeriesRing z2 = SeriesRing::make({"z1", "z2"}, 8);
  SeriesRing p2 = SeriesRing::make({"t1", "t2"}, 8);
  SeriesRing q2 = SeriesRing::make({"u1", "u2"}, 8);
  for (int trial = 0; trial < 10; ++trial) {
    SeriesMatrix omega(z2, 2, 2);
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < 2; ++i)
        omega.at(a, i) = cst(z2, (long)(rng() % 5) - 2) + random_quad(z2, rng);

    TruncSeries m0 = TruncSeries::var(p2, 0) + random_quad(p2, rng);
    TruncSeries m1 = TruncSeries::var(p2, 1) + random_quad(p2, rng);
    SubvarietyChart chart = SubvarietyChart::make(p2, {m0, m1});

    long a = (long)(rng() % 3) - 1;
    TruncSeries r0 =
        TruncSeries::var(q2, 0) + ExactScalar(a) * TruncSeries::var(q2, 1) +
        random_quad(q2, rng);
    TruncSeries r1 = TruncSeries::var(q2, 1) + random_quad(q2, rng);
    std::vector<TruncSeries> rho = {r0, r1};

    SubvarietyChart composed =
        SubvarietyChart::make(q2, {m0.subst(rho), m1.subst(rho)});
    PulledBackForm direct = pull_back(omega, composed);
    PulledBackForm staged = reparametrize(pull_back(omega, chart), q2, rho);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(direct.M[i][j] == staged.M[i][j]);
  }
}

TEST_CASE("generic rank is invariant under row mixing and reparametrization") {
  std::mt19937 rng(747576u);
  std::vector<PulledBackForm> corpus = {parabola_form(8), disk_form(8),
                                        constant_kernel_form(8)};
  for (const PulledBackForm& F : corpus) {
    int base = generic_rank(F).rank;
    for (int trial = 0; trial < 10; ++trial) {
      long a = (long)(rng() % 5) - 2, b = (long)(rng() % 5) - 2;
      RatMatrix C = {{ExactScalar(1), ExactScalar(a)},
                     {ExactScalar(b), ExactScalar(1 + a * b)}};
      CHECK(generic_rank(row_mixed(F, C)).rank == base);

      std::vector<TruncSeries> rho;
      for (int j = 0; j < F.nparams(); ++j) {
        TruncSeries v = TruncSeries::var(F.ring, j) + random_quad(F.ring, rng);
        if (j > 0) v += ExactScalar(a) * TruncSeries::var(F.ring, 0);
        rho.push_back(v);
      }
      CHECK(generic_rank(reparametrize(F, F.ring, rho)).rank == base);
    }
  }
}

TEST_CASE("kernel derivations kill the first integral") {
  // integrable input: each coordinate of the form is an exact differential,
  // so the kernel of the pullback consists of honest tangent derivations
  std::mt19937 rng(787980u);
  int cap = 10;
  SeriesRing z2 = SeriesRing::make({"z1", "z2"}, cap);
  SeriesRing p3 = SeriesRing::make({"t1", "t2", "t3"}, cap);
  int integrals_seen = 0;
  for (int trial = 0; trial < 20; ++trial) {
    // potentials F_a and the stacked gradient form
    SeriesMatrix omega(z2, 3, 2);
    for (int a = 0; a < 3; ++a) {
      TruncSeries F(z2);
      for (int k = 0; k < 4; ++k) {
        std::vector<int> e = {(int)(rng() % 3), (int)(rng() % 3)};
        if (e[0] + e[1] == 0) e[0] = 1;
        long num = (long)(rng() % 9) - 4;
        if (num != 0) F += TruncSeries::monomial(z2, e, ExactScalar(num));
      }
      for (int i = 0; i < 2; ++i) omega.at(a, i) = F.diff(i);
    }
    TruncSeries m0 = TruncSeries::var(p3, 0) + random_quad(p3, rng);
    TruncSeries m1 = TruncSeries::var(p3, 1) +
                     ExactScalar((long)(rng() % 2)) * TruncSeries::var(p3, 2) +
                     random_quad(p3, rng);
    SubvarietyChart chart = SubvarietyChart::make(p3, {m0, m1});
    PulledBackForm M = pull_back(omega, chart);

    KernelAnalysis ka;
    try {
      ka = kernel_analysis(M);
    } catch (const domain_error&) {
      continue;  // degenerate draw
    }
    if (ka.kind != VerdictKind::FirstIntegral) continue;
    ++integrals_seen;

    // tangent kernel: cross product of the Jacobian rows
    Grid J(2, std::vector<TruncSeries>(3, TruncSeries(p3)));
    for (int i = 0; i < 2; ++i)
      for (int b = 0; b < 3; ++b) J[i][b] = chart.maps[i].diff(b);
    std::vector<TruncSeries> xi = {J[0][1] * J[1][2] - J[0][2] * J[1][1],
                                   J[0][2] * J[1][0] - J[0][0] * J[1][2],
                                   J[0][0] * J[1][1] - J[0][1] * J[1][0]};
    for (int a = 0; a < 3; ++a) {
      TruncSeries s(p3);
      for (int b = 0; b < 3; ++b) s += M.M[a][b] * xi[b];
      CHECK(s.truncated(cap - 1).is_zero());
    }
    TruncSeries Df(p3);
    for (int b = 0; b < 3; ++b) Df += xi[b] * ka.f->diff(b);
    CHECK(Df.truncated(cap - 1).is_zero());
  }
  CHECK(integrals_seen >= 12);
}

TEST_CASE("verdicts are stable under cap increase") {
  for (int cap : {16, 20}) {
    CHECK(kernel_analysis(parabola_form(cap)).kind == VerdictKind::FirstIntegral);
    CHECK(kernel_analysis(disk_form(cap)).kind == VerdictKind::FirstIntegral);
    CHECK(kernel_analysis(constant_kernel_form(cap)).kind ==
          VerdictKind::SubalgebraDescent);
    CHECK(generic_rank(parabola_form(cap)).rank == 1);
  }
}

#include "ccf/transport.hpp"

#include <algorithm>
#include <sstream>

namespace ccf {

namespace {

// transplant into another ring with the same variables (cap/log changes)
TruncSeries recap(const TruncSeries& s, const SeriesRing& target) {
  TruncSeries r(target);
  int lsz = target.logs ? target.nvars() : 0;
  for (const auto& [m, c] : s.terms()) {
    if (m.tdeg() > target.cap) continue;
    Monomial k{m.t, std::vector<int>(lsz, 0)};
    if (!m.l.empty()) {
      if (!target.logs) continue;
      k.l = m.l;
    }
    r.set_coeff(k, c);
  }
  return r;
}

SeriesMatrix recap(const SeriesMatrix& m, const SeriesRing& target) {
  SeriesMatrix r(target, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = recap(m.at(i, j), target);
  return r;
}

TruncSeries homogeneous_part(const TruncSeries& s, int d) {
  TruncSeries r(s.ring());
  for (const auto& [m, c] : s.terms())
    if (m.tdeg() == d) r.set_coeff(m, c);
  return r;
}

// primitive along one variable only, other variables as parameters
TruncSeries partial_antiderivative(const TruncSeries& s, int v) {
  TruncSeries r(s.ring());
  for (const auto& [m, c] : s.terms()) {
    Monomial b = m;
    b.t[v] += 1;
    if (b.tdeg() > s.ring().cap) continue;
    r.set_coeff(b, r.coeff(b) + c / ExactScalar(b.t[v]));
  }
  return r;
}

bool matrix_has_logs(const SeriesMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j).has_logs()) return true;
  return false;
}

// leading rows that vanish in every listed matrix
int zero_row_prefix(const std::vector<const SeriesMatrix*>& ms, int dim) {
  int a = 0;
  for (; a < dim; ++a) {
    for (const auto* m : ms)
      for (int j = 0; j < dim; ++j)
        if (!m->at(a, j).is_zero()) return a;
  }
  return a;
}

}  // namespace

ConnectionForm ConnectionForm::make(std::vector<SeriesMatrix> components,
                                    std::vector<SingularPart> singular) {
  if (components.empty()) throw domain_error("connection: no components");
  const SeriesRing& ring = components[0].ring();
  if (ring.logs) throw domain_error("connection: components must be log-free");
  if ((int)components.size() != ring.nvars())
    throw domain_error("connection: one component per variable required");
  int dim = components[0].rows();
  for (const auto& c : components) {
    if (!(c.ring() == ring)) throw domain_error("connection: ring mismatch");
    if (c.rows() != dim || c.cols() != dim)
      throw domain_error("connection: components must be square of one size");
    if (matrix_has_logs(c)) throw domain_error("connection: components must be log-free");
  }
  std::vector<bool> seen(ring.nvars(), false);
  for (const auto& s : singular) {
    if (s.var < 0 || s.var >= ring.nvars())
      throw domain_error("connection: singular variable out of range");
    if (seen[s.var]) throw domain_error("connection: duplicate singular variable");
    seen[s.var] = true;
    if ((int)s.residue.size() != dim)
      throw domain_error("connection: residue size mismatch");
    for (const auto& row : s.residue)
      if ((int)row.size() != dim) throw domain_error("connection: residue size mismatch");
    if (!rat_is_nilpotent(s.residue))
      throw domain_error("connection: residue matrix is not nilpotent");
  }
  for (size_t i = 0; i < singular.size(); ++i)
    for (size_t j = i + 1; j < singular.size(); ++j)
      if (!rat_commute(singular[i].residue, singular[j].residue))
        throw domain_error("connection: residue matrices do not commute");
  return ConnectionForm(std::move(components), std::move(singular));
}

FlatnessReport flatness_check(const ConnectionForm& form) {
  const SeriesRing& ring = form.ring();
  int worst = -1;
  std::string note;
  for (int k = 0; k < form.nvars(); ++k)
    for (int l = k + 1; l < form.nvars(); ++l) {
      const SeriesMatrix& Ak = form.component(k);
      const SeriesMatrix& Al = form.component(l);
      SeriesMatrix res = Ak.diff(l) - Al.diff(k) - (Al * Ak - Ak * Al).truncated(ring.cap - 1);
      if (!res.is_zero()) {
        worst = std::max(worst, res.degree());
        if (note.empty())
          note = "residual in (" + ring.vars[k] + "," + ring.vars[l] + ")";
      }
    }
  if (worst < 0) {
    note = form.has_singular() ? "regular part flat; pole part constant by construction"
                               : "flat at cap";
  }
  return {worst < 0, worst, note};
}

TransportResult parallel_transport(const ConnectionForm& form, int order) {
  if (form.has_singular())
    throw domain_error("parallel_transport: connection has dt/t poles");
  if (order < 1 || order > form.ring().cap)
    throw domain_error("parallel_transport: order must lie in [1, cap]");
  FlatnessReport fr = flatness_check(form);
  if (!fr.flat)
    throw integrability_error("parallel_transport: connection is not flat (" + fr.note +
                              ", degree " + std::to_string(fr.max_residual_degree) + ")");
  SeriesRing ring = form.ring();
  ring.cap = order;
  std::vector<SeriesMatrix> A;
  A.reserve(form.nvars());
  for (int k = 0; k < form.nvars(); ++k) A.push_back(recap(form.component(k), ring));
  int dim = form.dim();
  SeriesMatrix H = SeriesMatrix::identity(ring, dim);
  for (int d = 1; d <= order; ++d) {
    SeriesMatrix T(ring, dim, dim);
    for (int k = 0; k < form.nvars(); ++k)
      T = T + TruncSeries::var(ring, k) * (A[k] * H);
    ExactScalar inv_d(1, d);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        H.at(i, j) += inv_d * homogeneous_part(T.at(i, j), d);
  }
  for (int k = 0; k < form.nvars(); ++k) {
    SeriesMatrix res = (H.diff(k) - A[k] * H).truncated(order - 1);
    if (!res.is_zero())
      throw integrability_error("parallel_transport: dH - Lambda H residual of degree " +
                                std::to_string(res.degree()));
  }
  return {H, order};
}

PadicMatrix transport_evaluate(const TransportResult& res, long p, int prec,
                               const std::vector<PadicScalar>& x1,
                               const std::vector<PadicScalar>& x2) {
  PadicMatrix h1 = res.H.eval_padic(p, prec, x1);
  PadicMatrix h2 = res.H.eval_padic(p, prec, x2);
  return h2 * h1.inv_unit();
}

std::vector<PadicScalar> coleman_disk_integral(const std::vector<TruncSeries>& forms,
                                               long p, int prec,
                                               const PadicScalar& x1,
                                               const PadicScalar& x2) {
  if (forms.empty()) throw domain_error("coleman_disk_integral: no forms");
  const SeriesRing& ring = forms[0].ring();
  if (ring.nvars() != 1)
    throw domain_error("coleman_disk_integral: one-variable forms required");
  std::vector<PadicScalar> out;
  out.reserve(forms.size());
  for (const auto& w : forms) {
    if (!(w.ring() == ring)) throw domain_error("coleman_disk_integral: ring mismatch");
    TruncSeries F = antiderivative({w});
    PadicScalar direct =
        F.eval_padic(p, prec, {x2}) - F.eval_padic(p, prec, {x1});
    SeriesMatrix A(ring, 2, 2);
    A.at(1, 0) = w;
    TransportResult tr = parallel_transport(ConnectionForm::make({A}), ring.cap);
    PadicScalar via = transport_evaluate(tr, p, prec, {x1}, {x2}).at(1, 0);
    if (!congruent(direct, via))
      throw precision_error("coleman_disk_integral: transport and antiderivative disagree");
    int n = std::min(direct.precision(), via.precision());
    out.push_back(direct.with_precision(n));
  }
  return out;
}

BettiSquareReport betti_square_check(const ConnectionForm& family, int order) {
  FlatnessReport fr = flatness_check(family);
  if (!fr.flat)
    throw integrability_error("betti_square_check: family is not flat (" + fr.note + ")");
  if (family.has_singular())
    throw domain_error("betti_square_check: family must be pole-free");
  int dim = family.dim();
  std::vector<const SeriesMatrix*> comps;
  for (int k = 0; k < family.nvars(); ++k) comps.push_back(&family.component(k));
  int a = zero_row_prefix(comps, dim);
  if (a < 1)
    throw domain_error("betti_square_check: no trivial top block");
  for (const auto* m : comps)
    for (int i = 0; i < dim; ++i)
      for (int j = a; j < dim; ++j)
        if (!m->at(i, j).is_zero())
          throw domain_error("betti_square_check: connection is not two-step");
  TransportResult tr = parallel_transport(family, order);
  int worst = -1;
  for (int i = a; i < dim; ++i)
    for (int j = 0; j < a; ++j) {
      TruncSeries fib = partial_antiderivative(
          recap(family.component(0).at(i, j), tr.H.ring()), 0);
      TruncSeries res = tr.H.at(i, j) - fib;
      if (!res.is_zero()) worst = std::max(worst, res.degree());
    }
  if (worst < 0) return {true, -1, "leaf map matches the fibrewise integral at cap"};
  std::ostringstream os;
  os << "square fails: residual degree " << worst;
  return {false, worst, os.str()};
}

SeriesMatrix with_log_ring(const SeriesMatrix& m) {
  SeriesRing r2 = m.ring();
  r2.logs = true;
  return recap(m, r2);
}

SeriesMatrix log_singular_transport(const std::vector<RatMatrix>& residues,
                                    const TransportResult& G) {
  const SeriesRing& ring = G.H.ring();
  int dim = G.H.rows();
  if ((int)residues.size() != ring.nvars())
    throw domain_error("log_singular_transport: one residue matrix per variable");
  for (const auto& N : residues) {
    if ((int)N.size() != dim)
      throw domain_error("log_singular_transport: residue size mismatch");
    for (const auto& row : N)
      if ((int)row.size() != dim)
        throw domain_error("log_singular_transport: residue size mismatch");
    if (!rat_is_nilpotent(N))
      throw domain_error("log_singular_transport: residue is not nilpotent");
  }
  for (size_t i = 0; i < residues.size(); ++i)
    for (size_t j = i + 1; j < residues.size(); ++j)
      if (!rat_commute(residues[i], residues[j]))
        throw domain_error("log_singular_transport: residues do not commute");

  SeriesRing r2 = ring;
  r2.logs = true;
  SeriesMatrix M(r2, dim, dim);
  for (int v = 0; v < ring.nvars(); ++v) {
    TruncSeries L = TruncSeries::log_symbol(r2, v);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (!residues[v][i][j].is_zero())
          M.at(i, j) += residues[v][i][j] * L;
  }
  SeriesMatrix E = SeriesMatrix::identity(r2, dim);
  SeriesMatrix P = SeriesMatrix::identity(r2, dim);
  ExactScalar fact(1);
  int max_steps = ring.nvars() * (dim - 1) + 1;
  for (int j = 1; j <= max_steps; ++j) {
    P = P * M;
    if (P.is_zero()) break;
    fact *= ExactScalar(j);
    E = E + (ExactScalar(1) / fact) * P;
  }
  return E * recap(G.H, r2);
}

ResidueFunctional residue_functional(const ConnectionForm& form) {
  if (!form.has_singular())
    throw domain_error("residue_functional: no dt/t pole present");
  for (int k = 0; k < form.nvars(); ++k)
    if (!form.component(k).is_zero())
      throw domain_error("residue_functional: regular part must vanish in normal form");
  int dim = form.dim();
  // block split shared by every residue matrix
  int a = dim;
  for (int i = 0; i < dim && i < a; ++i)
    for (const auto& s : form.singular())
      for (int j = 0; j < dim; ++j)
        if (!s.residue[i][j].is_zero()) a = std::min(a, i);
  if (a == dim) {
    // all residues vanish: the smooth-point case, zero functional
    return {{}, dim, 0, 0};
  }
  if (a < 1) throw domain_error("residue_functional: no trivial top block");
  for (const auto& s : form.singular())
    for (int i = 0; i < dim; ++i)
      for (int j = a; j < dim; ++j)
        if (!s.residue[i][j].is_zero())
          throw domain_error("residue_functional: residues are not two-step");
  const RatMatrix& N0 = form.singular()[0].residue;
  RatMatrix block(dim - a, std::vector<ExactScalar>(a, ExactScalar(0)));
  for (int i = a; i < dim; ++i)
    for (int j = 0; j < a; ++j) block[i - a][j] = N0[i][j];
  int rank = rat_rank(block);
  return {block, a, rank, (dim - a) - rank};
}

}  // namespace ccf

#include "ccf/axschanuel.hpp"

#include <map>
#include <sstream>

#include "ccf/errors.hpp"

namespace ccf {

namespace {

using Grid = std::vector<std::vector<TruncSeries>>;

void require_plain(const SeriesRing& r, const char* what) {
  if (r.logs) throw domain_error(std::string(what) + ": log-free ring required");
}

// polynomial shift t -> t + c, exact at the cap since degrees do not grow
TruncSeries taylor_shift(const TruncSeries& s, const std::vector<ExactScalar>& c) {
  const SeriesRing& r = s.ring();
  bool centred = true;
  for (const auto& ci : c) centred = centred && ci == ExactScalar(0);
  if (centred) return s;
  TruncSeries out(r);
  for (const auto& [m, a] : s.terms()) {
    TruncSeries term = TruncSeries::constant(r, a);
    for (int i = 0; i < r.nvars(); ++i) {
      if (m.t[i] == 0) continue;
      TruncSeries base = TruncSeries::var(r, i) + TruncSeries::constant(r, c[i]);
      for (int e = 0; e < m.t[i]; ++e) term = term * base;
    }
    out += term;
  }
  return out;
}

// reciprocal of a unit series via the geometric series, exact at the cap
TruncSeries inverse_unit(const TruncSeries& u) {
  ExactScalar c = u.constant_term();
  if (c == ExactScalar(0)) throw domain_error("series inverse: not a unit");
  const SeriesRing& r = u.ring();
  ExactScalar ic = ExactScalar(1) / c;
  TruncSeries eps = ic * u - TruncSeries::constant(r, ExactScalar(1));
  TruncSeries acc = TruncSeries::constant(r, ExactScalar(1));
  TruncSeries pw = TruncSeries::constant(r, ExactScalar(1));
  for (int k = 1; k <= r.cap; ++k) {
    pw = -(pw * eps);
    if (pw.is_zero()) break;
    acc += pw;
  }
  return ic * acc;
}

TruncSeries series_det(const Grid& a) {
  size_t n = a.size();
  if (n == 1) return a[0][0];
  const SeriesRing& r = a[0][0].ring();
  TruncSeries det(r);
  for (size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    Grid sub;
    for (size_t i = 1; i < n; ++i) {
      std::vector<TruncSeries> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      sub.push_back(std::move(row));
    }
    TruncSeries term = a[0][j] * series_det(sub);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

// adjugate over determinant; requires a unit determinant
Grid series_inverse(const Grid& b) {
  size_t n = b.size();
  const SeriesRing& r = b[0][0].ring();
  TruncSeries idet = inverse_unit(series_det(b));
  Grid inv(n, std::vector<TruncSeries>(n, TruncSeries(r)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Grid sub;
      for (size_t p = 0; p < n; ++p) {
        if (p == i) continue;
        std::vector<TruncSeries> row;
        for (size_t q = 0; q < n; ++q)
          if (q != j) row.push_back(b[p][q]);
        sub.push_back(std::move(row));
      }
      TruncSeries cof =
          sub.empty() ? TruncSeries::constant(r, ExactScalar(1)) : series_det(sub);
      inv[j][i] = ((i + j) % 2 == 0) ? cof * idet : -(cof * idet);
    }
  return inv;
}

bool next_combination(std::vector<int>& idx, int n) {
  int k = (int)idx.size();
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::string fmt_indices(const std::vector<int>& v) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "}";
  return os.str();
}

}  // namespace

SubvarietyChart SubvarietyChart::make(const SeriesRing& ring,
                                      std::vector<TruncSeries> maps) {
  require_plain(ring, "chart");
  if (maps.empty()) throw domain_error("chart: at least one ambient coordinate");
  for (const auto& m : maps)
    if (!(m.ring() == ring)) throw domain_error("chart: map outside the parameter ring");
  return {ring, std::move(maps)};
}

std::vector<ExactScalar> SubvarietyChart::basepoint() const {
  std::vector<ExactScalar> b;
  for (const auto& m : maps) b.push_back(m.constant_term());
  return b;
}

PulledBackForm PulledBackForm::make(const SeriesRing& ring, Grid M) {
  require_plain(ring, "form");
  if (M.empty()) throw domain_error("form: at least one coordinate row");
  for (const auto& row : M) {
    if ((int)row.size() != ring.nvars())
      throw domain_error("form: one column per chart parameter");
    for (const auto& e : row)
      if (!(e.ring() == ring)) throw domain_error("form: entry outside the chart ring");
  }
  return {ring, std::move(M)};
}

PulledBackForm pull_back(const SeriesMatrix& omega, const SubvarietyChart& chart) {
  const SeriesRing& ar = omega.ring();
  require_plain(ar, "pull back");
  if (omega.rows() < 1) throw domain_error("pull back: empty form");
  if (omega.cols() != ar.nvars())
    throw domain_error("pull back: one column per ambient variable");
  if ((int)chart.maps.size() != omega.cols())
    throw domain_error("pull back: ambient dimension mismatch");
  if (ar.cap != chart.ring.cap) throw domain_error("pull back: cap mismatch");

  std::vector<ExactScalar> base = chart.basepoint();
  std::vector<TruncSeries> centred;
  for (size_t i = 0; i < chart.maps.size(); ++i)
    centred.push_back(chart.maps[i] -
                      TruncSeries::constant(chart.ring, base[i]));

  int g = omega.rows(), n = omega.cols(), w = chart.nparams();
  Grid M(g, std::vector<TruncSeries>(w, TruncSeries(chart.ring)));
  for (int i = 0; i < n; ++i) {
    std::vector<TruncSeries> dmap;
    for (int b = 0; b < w; ++b) dmap.push_back(chart.maps[i].diff(b));
    for (int a = 0; a < g; ++a) {
      if (omega.at(a, i).is_zero()) continue;
      TruncSeries comp = taylor_shift(omega.at(a, i), base).subst(centred);
      for (int b = 0; b < w; ++b) M[a][b] += comp * dmap[b];
    }
  }
  return PulledBackForm::make(chart.ring, std::move(M));
}

PulledBackForm reparametrize(const PulledBackForm& form, const SeriesRing& new_ring,
                             const std::vector<TruncSeries>& images) {
  require_plain(new_ring, "reparametrize");
  if (new_ring.cap != form.ring.cap) throw domain_error("reparametrize: cap mismatch");
  if ((int)images.size() != form.nparams())
    throw domain_error("reparametrize: one image per old parameter");
  for (const auto& im : images) {
    if (!(im.ring() == new_ring))
      throw domain_error("reparametrize: image outside the new ring");
    if (!(im.constant_term() == ExactScalar(0)))
      throw domain_error("reparametrize: origin-fixing map required");
  }
  int g = form.gdim(), w = form.nparams(), w2 = new_ring.nvars();
  Grid M(g, std::vector<TruncSeries>(w2, TruncSeries(new_ring)));
  for (int b = 0; b < w; ++b) {
    std::vector<TruncSeries> dimg;
    for (int c = 0; c < w2; ++c) dimg.push_back(images[b].diff(c));
    for (int a = 0; a < g; ++a) {
      if (form.M[a][b].is_zero()) continue;
      TruncSeries comp = form.M[a][b].subst(images);
      for (int c = 0; c < w2; ++c) M[a][c] += comp * dimg[c];
    }
  }
  return PulledBackForm::make(new_ring, std::move(M));
}

GenericRank generic_rank(const PulledBackForm& form) {
  int g = form.gdim(), w = form.nparams();
  for (int r = std::min(g, w); r >= 1; --r) {
    std::vector<int> rs(r);
    for (int i = 0; i < r; ++i) rs[i] = i;
    do {
      std::vector<int> cs(r);
      for (int i = 0; i < r; ++i) cs[i] = i;
      do {
        Grid block(r, std::vector<TruncSeries>(r, TruncSeries(form.ring)));
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) block[i][j] = form.M[rs[i]][cs[j]];
        TruncSeries det = series_det(block);
        if (!det.is_zero()) {
          auto [lm, lc] = det.lowest_term();
          TruncSeries lead(form.ring);
          lead.set_coeff(lm, lc);
          std::string cert = "witness minor rows " + fmt_indices(rs) + " cols " +
                             fmt_indices(cs) + ", lowest term " + lead.str();
          return {r, rs, cs, cert};
        }
      } while (next_combination(cs, w));
    } while (next_combination(rs, g));
  }
  return {0, {}, {}, "form vanishes at this truncation order"};
}

KernelAnalysis kernel_analysis(const PulledBackForm& form) {
  const SeriesRing& ring = form.ring;
  int g = form.gdim(), w = form.nparams();
  GenericRank gr = generic_rank(form);
  int r = gr.rank;

  KernelAnalysis out;
  out.rank = r;

  // unit pivots: eliminate on the constant matrix so the chosen leading
  // block is invertible in the series local ring
  RatMatrix work(g, std::vector<ExactScalar>(w, ExactScalar(0)));
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < w; ++b) work[a][b] = form.M[a][b].constant_term();
  std::vector<int> sel_rows, sel_cols;
  std::vector<char> used_r(g, 0), used_c(w, 0);
  for (int step = 0; step < r; ++step) {
    int pi = -1, pj = -1;
    for (int i = 0; i < g && pi < 0; ++i) {
      if (used_r[i]) continue;
      for (int j = 0; j < w; ++j) {
        if (used_c[j]) continue;
        if (!(work[i][j] == ExactScalar(0))) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi < 0)
      throw domain_error("degenerate chart: no unit leading block at the generic rank");
    used_r[pi] = used_c[pj] = 1;
    sel_rows.push_back(pi);
    sel_cols.push_back(pj);
    for (int i = 0; i < g; ++i) {
      if (used_r[i]) continue;
      ExactScalar f = work[i][pj] / work[pi][pj];
      for (int j = 0; j < w; ++j) work[i][j] = work[i][j] - f * work[pi][j];
    }
  }

  Grid invB;
  if (r > 0) {
    Grid B(r, std::vector<TruncSeries>(r, TruncSeries(ring)));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) B[i][j] = form.M[sel_rows[i]][sel_cols[j]];
    invB = series_inverse(B);
  }

  bool all_const = true;
  std::optional<TruncSeries> first_nc;
  for (int e = 0; e < g; ++e) {
    if (used_r[e]) continue;
    std::vector<TruncSeries> cov(g, TruncSeries(ring));
    cov[e] = TruncSeries::constant(ring, ExactScalar(1));
    for (int j = 0; j < r; ++j) {
      TruncSeries s(ring);
      for (int k = 0; k < r; ++k) s += form.M[e][sel_cols[k]] * invB[k][j];
      TruncSeries fej = -s;
      if (!fej.is_constant()) {
        all_const = false;
        if (!first_nc) first_nc = fej;
      }
      cov[sel_rows[j]] = fej;
    }
    out.kernel_basis.push_back(std::move(cov));
  }

  std::string order = std::to_string(ring.cap);
  if (all_const) {
    out.kind = VerdictKind::SubalgebraDescent;
    if (out.kernel_basis.empty()) {
      out.subalgebra = rat_identity(g);
      out.note = "kernel trivial at this order; certified to truncation order " + order;
    } else {
      RatMatrix K;
      for (const auto& cov : out.kernel_basis) {
        std::vector<ExactScalar> row;
        for (const auto& c : cov) row.push_back(c.constant_term());
        K.push_back(std::move(row));
      }
      out.subalgebra = rat_nullspace(K);
      out.note = "coefficients constant to order " + order;
    }
  } else {
    out.kind = VerdictKind::FirstIntegral;
    TruncSeries raw = *first_nc;
    TruncSeries vfn = raw - TruncSeries::constant(ring, raw.constant_term());
    auto [lm, lc] = vfn.lowest_term();
    vfn = (ExactScalar(1) / lc) * vfn;
    out.f = vfn;
    out.vanishing_fn = vfn;
    out.note = "certified to truncation order " + order;
  }
  return out;
}

LocusResult effective_locus(const SeriesMatrix& omega, const SubvarietyChart& chart,
                            int max_iter) {
  if (max_iter < 1) throw domain_error("effective locus: max_iter must be positive");
  LocusResult res;
  PulledBackForm cur = pull_back(omega, chart);
  for (int it = 0; it < max_iter; ++it) {
    KernelAnalysis ka = kernel_analysis(cur);
    res.steps.push_back(ka);

    if (ka.kernel_basis.empty()) {
      res.report = res.steps.size() == 1
                       ? "full rank: hypothesis dim V < dim W + dim G not exploitable"
                       : "rank saturated on the restricted data";
      res.complete = true;
      return res;
    }

    if (ka.kind == VerdictKind::FirstIntegral) {
      const TruncSeries vfn = *ka.vanishing_fn;
      res.vanishing.push_back(vfn);
      int w = cur.nparams();
      if (w == 1) {
        res.report = "chart reduced to its basepoint";
        res.complete = true;
        return res;
      }
      int b = -1;
      ExactScalar alpha(0);
      for (int j = 0; j < w; ++j) {
        std::vector<int> e(w, 0);
        e[j] = 1;
        ExactScalar c = vfn.coeff(e);
        if (!(c == ExactScalar(0))) {
          b = j;
          alpha = c;
          break;
        }
      }
      if (b < 0) {
        res.report = "constraint has no linear part; chart restriction stops here";
        res.complete = false;
        return res;
      }
      std::vector<std::string> names;
      for (int j = 0; j < w; ++j)
        if (j != b) names.push_back(cur.ring.vars[j]);
      SeriesRing rr = SeriesRing::make(names, cur.ring.cap);
      auto images_with = [&](const TruncSeries& psi) {
        std::vector<TruncSeries> im;
        for (int j = 0; j < w; ++j) {
          if (j == b)
            im.push_back(psi);
          else
            im.push_back(TruncSeries::var(rr, j < b ? j : j - 1));
        }
        return im;
      };
      // implicit solve of vfn = 0 for parameter b; each pass fixes one more
      // degree because every remaining t_b occurrence sits in degree >= 2
      TruncSeries psi(rr);
      ExactScalar ia = ExactScalar(1) / alpha;
      for (int k = 0; k <= rr.cap; ++k) {
        TruncSeries rem = vfn.subst(images_with(psi));
        if (rem.is_zero()) break;
        psi = psi - ia * rem;
      }
      cur = reparametrize(cur, rr, images_with(psi));
      continue;
    }

    // descent: rewrite every column in coordinates on the subalgebra
    const RatMatrix& H = ka.subalgebra;
    int m = (int)H.size(), g = cur.gdim();
    if (m == 0) {
      res.report = "form vanishes on the chart at this order";
      res.complete = true;
      return res;
    }
    RatMatrix HT(g, std::vector<ExactScalar>(m, ExactScalar(0)));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < g; ++j) HT[j][i] = H[i][j];
    Grid M2(m, std::vector<TruncSeries>(cur.nparams(), TruncSeries(cur.ring)));
    for (int col = 0; col < cur.nparams(); ++col) {
      std::map<Monomial, std::vector<ExactScalar>> by_mono;
      for (int a = 0; a < g; ++a)
        for (const auto& [mo, cval] : cur.M[a][col].terms()) {
          auto& v = by_mono[mo];
          if (v.empty()) v.assign(g, ExactScalar(0));
          v[a] = cval;
        }
      for (const auto& [mo, cvec] : by_mono) {
        auto x = rat_solve(HT, cvec);
        if (!x) throw domain_error("descent: column leaves the subalgebra span");
        for (int k = 0; k < m; ++k)
          if (!((*x)[k] == ExactScalar(0))) M2[k][col].set_coeff(mo, (*x)[k]);
      }
    }
    cur = PulledBackForm::make(cur.ring, std::move(M2));
  }
  res.complete = false;
  res.report = "iteration budget exhausted";
  return res;
}

}  // namespace ccf

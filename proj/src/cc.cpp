#include "jetcc/cc.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace jetcc {

namespace {

// Source-jet column layout shared by the CC-side linear algebra.
struct SourceCols {
  std::vector<Jet> jets;  // highest first
  std::map<Jet, int, JetBefore> index;
};

SourceCols source_cols_upto(const PDESystem& sys, int level) {
  SourceCols c;
  c.jets = jets_upto(sys.nvars(), sys.nsources(), level);
  for (size_t i = 0; i < c.jets.size(); ++i)
    c.index[c.jets[i]] = static_cast<int>(i);
  return c;
}

SourceCols source_cols_exact(const PDESystem& sys, int level) {
  SourceCols c;
  c.jets = jets_exact(sys.nvars(), sys.nsources(), level);
  for (size_t i = 0; i < c.jets.size(); ++i)
    c.index[c.jets[i]] = static_cast<int>(i);
  return c;
}

SparseRow rowify(const LinForm& form, const SourceCols& cols) {
  SparseRow row;
  for (const auto& [jet, coeff] : form) {
    if (coeff.is_zero()) continue;
    auto it = cols.index.find(jet);
    if (it == cols.index.end())
      throw InternalError("compatibility row leaves the column range");
    row[it->second] = coeff;
  }
  return row;
}

LinForm unrowify(const SparseRow& row, const SourceCols& cols) {
  LinForm f;
  for (const auto& [col, coeff] : row) f[cols.jets[col]] = coeff;
  return f;
}

LinForm derivative_multi(const LinForm& f, const MultiIndex& nu) {
  LinForm out = f;
  for (size_t v = 0; v < nu.size(); ++v)
    for (unsigned k = 0; k < nu[v]; ++k)
      out = total_derivative(out, static_cast<int>(v));
  return out;
}

// Terms of exact order `ord` (the principal part used by sigma).
LinForm top_part(const LinForm& f, int ord) {
  LinForm out;
  for (const auto& [jet, coeff] : f)
    if (mi_order(jet.mu) == ord && !coeff.is_zero()) out[jet] = coeff;
  return out;
}

// Plain multi-shift: u_mu -> u_{mu+nu}, coefficients untouched (no Leibniz).
LinForm shift_multi(const LinForm& f, const MultiIndex& nu) {
  LinForm out;
  for (const auto& [jet, coeff] : f) {
    Jet shifted = jet;
    for (size_t v = 0; v < nu.size(); ++v) shifted.mu[v] += nu[v];
    out[shifted] = coeff;
  }
  return out;
}

// RREF span of the full prolongation d_nu g, |nu| <= level - order(g), of
// every known generator; membership oracle for "derivable from the knowns".
SparseRREF prolonged_span(const PDESystem& sys,
                          const std::vector<CCExpression>& known, int level,
                          const SourceCols& cols) {
  SparseRREF span;
  long tag = 0;
  for (const auto& g : known) {
    int depth = level - g.order();
    if (depth < 0) continue;
    for (const auto& nu : multi_indices_upto(sys.nvars(), depth)) {
      LinForm d = derivative_multi(g.form, nu);
      if (d.empty()) continue;
      span.add_row(rowify(d, cols), tag++);
    }
  }
  span.reduce();
  return span;
}

// Kernel of the uniform depth-r prolongation {d_nu(e) : |nu| <= r}. This is
// the domain the Psi_r compatibility computations act on. When every
// equation has the same order it coincides with solve_at at level q + r;
// with mixed orders the saturated solve also imposes deeper consequences of
// the lower-order equations, so all dimension bookkeeping on the F0 side
// must use this kernel to stay consistent with cc_solve.
SolveResult uniform_solve(const PDESystem& sys, int r) {
  return solve_rows(sys, prolong(sys, r).eqs, false);
}

long long uniform_dim(const PDESystem& sys, int r) {
  return uniform_solve(sys, r).dim();
}

struct CCSolve {
  SolveResult solved;
  std::vector<CCExpression> ccs;  // unlabeled canonical Q_r basis
};

CCSolve cc_solve(const PDESystem& sys, int r) {
  CCSolve out;
  PDESystem rho = prolong(sys, r);
  out.solved = solve_rows(sys, rho.eqs);
  for (const auto& row : out.solved.cc_rows) {
    CCExpression cc;
    cc.form = row.rhs;
    out.ccs.push_back(std::move(cc));
  }
  return out;
}

// Canonical basis of the part of `ccs` not derivable from `known` at `level`.
std::vector<CCExpression> complement_gens(const PDESystem& sys,
                                          const std::vector<CCExpression>& ccs,
                                          const std::vector<CCExpression>& known,
                                          int level) {
  SourceCols cols = source_cols_upto(sys, level);
  SparseRREF span = prolonged_span(sys, known, level, cols);
  SparseRREF fresh;
  long tag = 0;
  for (const auto& cc : ccs) {
    SparseRow nf = span.normal_form(rowify(cc.form, cols));
    if (!nf.empty()) fresh.add_row(std::move(nf), tag++);
  }
  fresh.reduce();
  std::vector<CCExpression> out;
  for (const auto& row : fresh.rows()) {
    CCExpression g;
    g.form = unrowify(row, cols);
    out.push_back(std::move(g));
  }
  return out;
}

// True when every source component is the unit order-0 tracker of exactly
// one equation (the form substitution checks rely on).
bool has_unit_trackers(const PDESystem& sys) {
  std::vector<int> seen(sys.nsources(), 0);
  for (const auto& e : sys.eqs) {
    if (e.rhs.size() != 1) return false;
    const auto& [jet, coeff] = *e.rhs.begin();
    if (mi_order(jet.mu) != 0 || !coeff.is_one()) return false;
    if (jet.comp < 0 || jet.comp >= sys.nsources()) return false;
    if (seen[jet.comp]++) return false;
  }
  for (int c = 0; c < sys.nsources(); ++c)
    if (!seen[c]) return false;
  return true;
}

void form_axpy(LinForm& acc, const RatFunc& coeff, const LinForm& f) {
  for (const auto& [jet, c] : f) {
    RatFunc add = coeff * c;
    if (add.is_zero()) continue;
    auto it = acc.find(jet);
    if (it == acc.end()) {
      acc.emplace(jet, std::move(add));
    } else {
      it->second = it->second + add;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

}  // namespace

CCDims cc_dims(const PDESystem& sys, int r) {
  int q = std::max(sys.order(), 0);
  CCDims d;
  d.dim_R = uniform_dim(sys, r);
  d.dim_jet_E = dim_jet(sys.nvars(), q + r, sys.nunknowns());
  d.dim_jet_F0 = dim_jet(sys.nvars(), r, sys.nsources());
  d.dim_B = d.dim_jet_E - d.dim_R;
  d.dim_Q = d.dim_jet_F0 - d.dim_B;
  return d;
}

std::vector<CCExpression> cc_at_order(const PDESystem& sys, int r) {
  if (sys.eqs.empty() || sys.nsources() == 0) return {};
  return cc_solve(sys, r).ccs;
}

std::vector<CCExpression> new_generators(
    const PDESystem& sys, int r, const std::vector<CCExpression>& known) {
  int level = r + 1;
  return complement_gens(sys, cc_at_order(sys, level), known, level);
}

TerminationSearch find_termination(const PDESystem& sys, int max_t) {
  TerminationSearch out;
  if (sys.eqs.empty()) return out;
  int q = std::max(sys.order(), 0);
  for (int t = 1; t <= max_t; ++t) {
    SolveResult deep = solve_at(sys, q + t - 1);
    for (int s = 0; s <= t - 1; ++s) {
      int r = t - 1 - s;
      PDESystem cand = project(sys, deep, q + r);
      if (cand.eqs.empty()) continue;
      // The rows must generate exactly the projected space: re-saturating
      // rows of lower order may inject deeper consequences, in which case
      // the candidate is not yet a stable system in its own right.
      if (dim_solution(cand, q + r) != deep.projected_dim(q + r)) continue;
      if (!is_involutive_at(cand, q + r)) continue;
      FiCertificate cert = certify_fi(cand);
      if (!cert.certified) continue;
      out.found = true;
      out.r = r;
      out.s = s;
      out.t = t;
      out.system = std::move(cand);
      out.certificate = cert;
      return out;
    }
  }
  return out;
}

GeneratingCC generating_cc(const PDESystem& sys, int max_order) {
  GeneratingCC out;
  if (sys.eqs.empty() || sys.nsources() == 0) {
    out.complete = true;
    out.scanned_to = 0;
    return out;
  }
  out.termination = find_termination(sys, max_order);
  // The termination bound limits the jet level q + t of generating
  // conditions.  When equation orders are mixed, a condition at that level
  // may still need up to t + (q - min order) derivatives of the lowest-order
  // equation, so the per-order scan runs that much further.
  int q = std::max(sys.order(), 0);
  int minord = q;
  for (const auto& e : sys.eqs) minord = std::min(minord, e.order());
  int spread = q - minord;
  int t = out.termination.found
              ? std::min(out.termination.t, max_order) + spread
              : max_order;
  bool canonical = has_unit_trackers(sys);
  int counter = 0;
  for (int o = 0; o <= t; ++o) {
    CCSolve qs = cc_solve(sys, o);
    std::vector<CCExpression> fresh =
        complement_gens(sys, qs.ccs, out.generators, o);
    for (auto& g : fresh) {
      g.label = "cc" + std::to_string(++counter);
      if (canonical && !verify_cc(sys, g))
        throw InternalError("generated compatibility condition " + g.label +
                            " fails exact substitution");
      out.generators.push_back(std::move(g));
    }
    OrderCount oc;
    oc.new_generators = static_cast<long long>(fresh.size());
    oc.dim_Q = static_cast<long long>(qs.ccs.size());
    oc.identities = qs.solved.identities;
    out.per_order[o] = oc;
  }
  out.complete = out.termination.found;
  out.scanned_to = t;
  return out;
}

PDESystem cc_system(const PDESystem& sys,
                    const std::vector<CCExpression>& gens) {
  PDESystem d1;
  d1.vars = sys.vars;
  d1.unknowns = sys.sources;
  for (size_t i = 0; i < gens.size(); ++i) {
    std::string label = gens[i].label.empty()
                            ? "g" + std::to_string(i + 1)
                            : gens[i].label;
    d1.sources.push_back(label);
    Equation e;
    e.label = label;
    e.lhs = gens[i].form;
    Jet tracker;
    tracker.comp = static_cast<int>(i);
    tracker.mu = MultiIndex(sys.nvars(), 0);
    e.rhs[tracker] = RatFunc::constant(sys.nvars(), Rational(1));
    d1.eqs.push_back(std::move(e));
  }
  return d1;
}

SyzygyResult syzygies(const PDESystem& sys,
                      const std::vector<CCExpression>& gens,
                      int search_order) {
  SyzygyResult out;
  if (gens.empty()) {
    out.search_order = 0;
    out.run.complete = true;
    out.run.scanned_to = 0;
    return out;
  }
  int deepest = 0;
  for (const auto& g : gens) deepest = std::max(deepest, g.order());
  out.search_order = search_order < 0 ? deepest + 4 : search_order;
  if (gens.size() == 1) {
    // One nonzero row over the Ore ring K(x)[d] admits no relation.
    out.run.complete = true;
    out.run.scanned_to = 0;
    return out;
  }
  PDESystem d1 = cc_system(sys, gens);
  out.run = generating_cc(d1, out.search_order);
  out.relations = out.run.generators;
  for (size_t i = 0; i < out.relations.size(); ++i)
    out.relations[i].label = "syz" + std::to_string(i + 1);
  return out;
}

ResolutionReport resolution(const PDESystem& sys, int max_order) {
  ResolutionReport rep;
  rep.ranks.push_back(sys.nunknowns());
  if (!sys.eqs.empty() && sys.nsources() > 0) {
    rep.ranks.push_back(sys.nsources());
    rep.orders.push_back(std::max(sys.order(), 0));
    PDESystem cur = sys;
    for (;;) {
      GeneratingCC run = generating_cc(cur, max_order);
      if (!run.complete) rep.complete = false;
      if (run.generators.empty()) break;
      int maxord = 0;
      for (const auto& g : run.generators) maxord = std::max(maxord, g.order());
      rep.ranks.push_back(static_cast<long long>(run.generators.size()));
      rep.orders.push_back(maxord);
      if (!run.complete) break;
      if (run.generators.size() == 1) break;  // next stage has no relations
      cur = cc_system(cur, run.generators);
    }
  }
  long long chi = 0;
  long long sign = 1;
  for (long long rank : rep.ranks) {
    chi += sign * rank;
    sign = -sign;
  }
  rep.euler = chi;
  rep.differential_rank = chi;
  return rep;
}

std::array<long long, 6> connecting_sequence_dims(const PDESystem& sys,
                                                  int r) {
  int q = std::max(sys.order(), 0);
  int n = sys.nvars();
  SolveResult u2 = uniform_solve(sys, r + 2);
  long long g2 = u2.dim() - u2.projected_dim(q + r + 1);
  long long r2 = u2.dim();
  long long r1 = uniform_dim(sys, r + 1);
  long long h2 = dim_sym(n, r + 2, sys.nsources()) -
                 (dim_sym(n, q + r + 2, sys.nunknowns()) - g2);
  long long q2 = cc_dims(sys, r + 2).dim_Q;
  long long q1 = cc_dims(sys, r + 1).dim_Q;
  return {g2, r2, r1, h2, q2, q1};
}

JetCohomology jet_cohomology_dims(const PDESystem& sys, int r) {
  int q = std::max(sys.order(), 0);
  int n = sys.nvars();
  int m = sys.nunknowns();
  int p = sys.nsources();
  JetCohomology out;
  SolveResult up = uniform_solve(sys, r + 1);
  out.h_R = uniform_dim(sys, r) - up.projected_dim(q + r);

  std::vector<CCExpression> psi = cc_at_order(sys, r);
  long long dim_r_next = up.dim();

  // Jet side: kernel of rho_1(Psi_r) on J_{r+1}(F0) against the image B_{r+1}.
  SourceCols jcols = source_cols_upto(sys, r + 1);
  SparseRREF rho;
  long tag = 0;
  for (const auto& c : psi) {
    rho.add_row(rowify(c.form, jcols), tag++);
    for (int v = 0; v < n; ++v)
      rho.add_row(rowify(total_derivative(c.form, v), jcols), tag++);
  }
  rho.reduce();
  long long z_jet = dim_jet(n, r + 1, p) - rho.rank();
  long long b_jet = dim_jet(n, q + r + 1, m) - dim_r_next;
  out.h_J = z_jet - b_jet;

  // Symbol side: kernel of sigma_1(Psi_r) on S_{r+1}(F0) against the symbol
  // image.
  SourceCols scols = source_cols_exact(sys, r + 1);
  SparseRREF sig;
  tag = 0;
  for (const auto& c : psi) {
    LinForm top = top_part(c.form, r);
    if (top.empty()) continue;
    for (int v = 0; v < n; ++v) {
      MultiIndex nu(n, 0);
      nu[v] = 1;
      sig.add_row(rowify(shift_multi(top, nu), scols), tag++);
    }
  }
  sig.reduce();
  long long z_sym = dim_sym(n, r + 1, p) - sig.rank();
  long long b_sym =
      dim_sym(n, q + r + 1, m) - (up.dim() - up.projected_dim(q + r));
  out.h_S = z_sym - b_sym;

  if (out.h_S != out.h_R + out.h_J)
    throw InternalError("jet cohomology additivity check failed");
  return out;
}

RelativeCohomology relative_jet_cohomology(
    const PDESystem& sys, const std::vector<CCExpression>& gens, int level) {
  int q = std::max(sys.order(), 0);
  int n = sys.nvars();
  int m = sys.nunknowns();
  int p = sys.nsources();
  int t1 = 0;
  for (const auto& g : gens) t1 = std::max(t1, g.order());

  RelativeCohomology out;

  SourceCols jcols = source_cols_upto(sys, level);
  SparseRREF rho;
  long tag = 0;
  if (level >= t1) {
    for (const auto& g : gens)
      for (const auto& nu : multi_indices_upto(n, level - t1))
        rho.add_row(rowify(derivative_multi(g.form, nu), jcols), tag++);
  }
  rho.reduce();
  SolveResult usol = uniform_solve(sys, level);
  long long z_jet = dim_jet(n, level, p) - rho.rank();
  long long b_jet = dim_jet(n, q + level, m) - usol.dim();
  out.h_J = z_jet - b_jet;

  SourceCols scols = source_cols_exact(sys, level);
  SparseRREF sig;
  tag = 0;
  if (level >= t1) {
    for (const auto& g : gens) {
      LinForm top = top_part(g.form, t1);
      if (top.empty()) continue;
      for (const auto& nu : multi_indices_exact(n, level - t1))
        sig.add_row(rowify(shift_multi(top, nu), scols), tag++);
    }
  }
  sig.reduce();
  long long z_sym = dim_sym(n, level, p) - sig.rank();
  long long b_sym = dim_sym(n, q + level, m) -
                    (usol.dim() - usol.projected_dim(q + level - 1));
  out.h_S = z_sym - b_sym;
  return out;
}

long long dim_h_R(const PDESystem& sys, int level) {
  int q = std::max(sys.order(), 0);
  int r = std::max(level - q, 0);
  SolveResult cur = uniform_solve(sys, r);
  SolveResult up = uniform_solve(sys, r + 1);
  return cur.projected_dim(level) - up.projected_dim(level);
}

SequenceDims sequence_dims(const PDESystem& sys) {
  FiTestResult fi = fi_test(sys, 1);
  if (!fi.ok)
    throw PreconditionError("sequence_dims needs a formally integrable system",
                            "fi_test");
  if (!is_involutive(sys, 0))
    throw PreconditionError("sequence_dims needs an involutive symbol",
                            "is_involutive");

  int q = std::max(sys.order(), 0);
  int n = sys.nvars();
  int m = sys.nunknowns();
  long long dim_r = dim_solution(sys, q);
  long long dim_j = dim_jet(n, q, m);
  SymbolSpace g_q = symbol_at_level(sys, q);
  SymbolSpace g_up = symbol_at_level(sys, q + 1);
  SymbolSpace full_q = SymbolSpace::full(n, m, q);
  SymbolSpace full_up = SymbolSpace::full(n, m, q + 1);

  SequenceDims out;
  for (int s = 0; s <= n; ++s) {
    long long rank_g = (s == 0) ? 0 : delta_rank(g_up, g_q, s - 1);
    long long rank_f = (s == 0) ? 0 : delta_rank(full_up, full_q, s - 1);
    out.spencer.push_back(binom(n, s) * dim_r - rank_g);
    out.trivial.push_back(binom(n, s) * dim_j - rank_f);
    out.janet.push_back(out.trivial.back() - out.spencer.back());
  }
  return out;
}

std::vector<std::pair<int, long long>> long_run_dims(const PDESystem& sys,
                                                     int r_lo, int r_hi) {
  int q = std::max(sys.order(), 0);
  std::vector<std::pair<int, long long>> out;
  for (int r = r_lo; r <= r_hi; ++r)
    out.emplace_back(q + r, dim_solution(sys, q + r));
  return out;
}

bool verify_cc(const PDESystem& sys, const CCExpression& cc) {
  if (!has_unit_trackers(sys))
    throw PreconditionError(
        "verify_cc needs one unit order-0 tracker per source component",
        "unit_trackers");
  std::vector<int> tracker(sys.nsources(), -1);
  for (size_t i = 0; i < sys.eqs.size(); ++i)
    tracker[sys.eqs[i].rhs.begin()->first.comp] = static_cast<int>(i);

  LinForm acc;
  for (const auto& [jet, coeff] : cc.form) {
    Equation d = differentiate_multi(sys.eqs[tracker[jet.comp]], jet.mu);
    form_axpy(acc, coeff, d.lhs);
  }
  return acc.empty();
}

}  // namespace jetcc

#include "jetcc/system.hpp"

#include <algorithm>
#include <stdexcept>

namespace jetcc {

int PDESystem::order() const {
  int q = -1;
  for (const auto& e : eqs) q = std::max(q, e.order());
  return q;
}

LinForm total_derivative(const LinForm& f, int v) {
  LinForm out;
  auto acc = [&out](const Jet& j, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.emplace(j, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  for (const auto& [j, c] : f) {
    acc(j, c.partial(v));
    acc(Jet{j.comp, mi_plus(j.mu, v)}, c);
  }
  return out;
}

Equation differentiate(const Equation& e, int v) {
  return Equation{e.label, total_derivative(e.lhs, v), total_derivative(e.rhs, v)};
}

Equation differentiate_multi(const Equation& e, const MultiIndex& nu) {
  Equation out = e;
  std::string digits = mi_digits(nu);
  if (!digits.empty()) out.label = e.label + "_" + digits;
  for (size_t i = 0; i < nu.size(); ++i)
    for (unsigned k = 0; k < nu[i]; ++k) {
      out.lhs = total_derivative(out.lhs, static_cast<int>(i));
      out.rhs = total_derivative(out.rhs, static_cast<int>(i));
    }
  return out;
}

PDESystem prolong(const PDESystem& sys, int r) {
  PDESystem out = sys;
  out.eqs.clear();
  for (const auto& nu : multi_indices_upto(sys.nvars(), r))
    for (const auto& e : sys.eqs) out.eqs.push_back(differentiate_multi(e, nu));
  return out;
}

PDESystem saturate(const PDESystem& sys, int level) {
  PDESystem out = sys;
  out.eqs.clear();
  for (const auto& e : sys.eqs) {
    int r = level - e.order();
    if (r < 0) continue;
    for (const auto& nu : multi_indices_upto(sys.nvars(), r))
      out.eqs.push_back(differentiate_multi(e, nu));
  }
  return out;
}

namespace {

// Column layout for a solve: unknown jets <= ulevel (highest first), then
// source jets <= slevel (highest first).
struct ColumnSpace {
  std::vector<Jet> cols;       // unknown jets then source jets
  long n_unknown_cols = 0;
  std::map<Jet, int, JetBefore> unknown_idx;
  std::map<Jet, int, JetBefore> source_idx;

  ColumnSpace(int nvars, int m, int ulevel, int nsrc, int slevel) {
    for (const Jet& j : jets_upto(nvars, m, ulevel)) {
      unknown_idx.emplace(j, static_cast<int>(cols.size()));
      cols.push_back(j);
    }
    n_unknown_cols = static_cast<long>(cols.size());
    if (slevel >= 0)
      for (const Jet& j : jets_upto(nvars, nsrc, slevel)) {
        source_idx.emplace(j, static_cast<int>(cols.size()));
        cols.push_back(j);
      }
  }
};

SolveResult solve_impl(const PDESystem& sys, const std::vector<Equation>& eqs,
                       int level, bool track_sources) {
  int slevel = -1;
  if (track_sources)
    for (const auto& e : eqs) slevel = std::max(slevel, e.rhs_order());
  ColumnSpace cs(sys.nvars(), sys.nunknowns(), level, sys.nsources(), slevel);

  SparseRREF rref;
  long tag = 0;
  for (const auto& e : eqs) {
    SparseRow row;
    for (const auto& [j, c] : e.lhs) {
      auto it = cs.unknown_idx.find(j);
      if (it == cs.unknown_idx.end())
        throw std::logic_error("equation exceeds solve level");
      row.emplace(it->second, c);
    }
    if (track_sources)
      for (const auto& [j, c] : e.rhs) row.emplace(cs.source_idx.at(j), c);
    rref.add_row(std::move(row), tag++);
  }
  rref.reduce();

  SolveResult res;
  res.level = level;
  res.identities = rref.identities();
  std::map<Jet, bool, JetBefore> is_pivot;
  long row_no = 0, cc_no = 0;
  for (size_t i = 0; i < rref.rows().size(); ++i) {
    const SparseRow& r = rref.rows()[i];
    int piv = rref.pivots()[i];
    Equation eq;
    for (const auto& [c, v] : r) {
      if (c < cs.n_unknown_cols)
        eq.lhs.emplace(cs.cols[c], v);
      else
        eq.rhs.emplace(cs.cols[c], v);
    }
    if (piv < cs.n_unknown_cols) {
      // Solved row: pivot + lower terms = rhs. Move non-pivot lhs to the
      // canonical "lhs = rhs" shape as-is (equation semantics unchanged).
      eq.label = "r" + std::to_string(++row_no);
      res.pivots.push_back(cs.cols[piv]);
      is_pivot[cs.cols[piv]] = true;
      res.rows.push_back(std::move(eq));
    } else {
      // 0 = (source form): a compatibility row. Store the form in rhs.
      eq.label = "c" + std::to_string(++cc_no);
      res.cc_rows.push_back(std::move(eq));
    }
  }
  for (long c = 0; c < cs.n_unknown_cols; ++c)
    if (!is_pivot.count(cs.cols[c])) res.parametric.push_back(cs.cols[c]);
  return res;
}

}  // namespace

long long SolveResult::projected_dim(int q) const {
  long long d = 0;
  for (const auto& j : parametric)
    if (mi_order(j.mu) <= q) ++d;
  return d;
}

SolveResult solve_at(const PDESystem& sys, int level, bool track_sources) {
  PDESystem sat = saturate(sys, level);
  return solve_impl(sys, sat.eqs, level, track_sources);
}

SolveResult solve_rows(const PDESystem& sys, const std::vector<Equation>& rows,
                       bool track_sources) {
  int level = -1;
  for (const auto& e : rows) level = std::max(level, e.order());
  return solve_impl(sys, rows, std::max(level, 0), track_sources);
}

PDESystem project(const PDESystem& sys, const SolveResult& solved, int q) {
  PDESystem out = sys;
  out.eqs.clear();
  for (size_t i = 0; i < solved.rows.size(); ++i)
    if (mi_order(solved.pivots[i].mu) <= q) out.eqs.push_back(solved.rows[i]);
  return out;
}

PDESystem projected_system(const PDESystem& sys, int level, int q) {
  return project(sys, solve_at(sys, level), q);
}

long long dim_solution(const PDESystem& sys, int level) {
  return solve_at(sys, level, false).dim();
}

FiTestResult fi_test(const PDESystem& sys, int depth) {
  FiTestResult out;
  int q = sys.order();
  for (int j = 0; j < depth; ++j) {
    long long plain = solve_at(sys, q + j, false).dim();
    long long projected = solve_at(sys, q + j + 1, false).projected_dim(q + j);
    out.dims.emplace_back(projected, plain);
    if (projected != plain) {
      out.ok = false;
      out.failed_at = j;
      return out;
    }
  }
  return out;
}

JetSection spencer_operator(const JetSection& f, int v, int level, int nvars,
                            int ncomps) {
  JetSection out;
  for (const Jet& j : jets_upto(nvars, ncomps, level - 1)) {
    RatFunc val(nvars);
    auto here = f.find(j);
    if (here != f.end()) val = here->second.partial(v);
    Jet up{j.comp, mi_plus(j.mu, v)};
    auto it = f.find(up);
    if (it != f.end()) val -= it->second;
    if (!val.is_zero()) out.emplace(j, val);
  }
  return out;
}

JetSection section_of_polys(const std::vector<Poly>& sol, int level) {
  JetSection out;
  if (sol.empty()) return out;
  int n = sol[0].nvars();
  for (const auto& mu : multi_indices_upto(n, level)) {
    for (size_t k = 0; k < sol.size(); ++k) {
      Poly d = sol[k];
      for (size_t i = 0; i < mu.size(); ++i)
        for (unsigned e = 0; e < mu[i]; ++e) d = d.partial(static_cast<int>(i));
      if (!d.is_zero())
        out.emplace(Jet{static_cast<int>(k), mu}, RatFunc::from_poly(d));
    }
  }
  return out;
}

namespace {

// Expands a jet u_mu under d/dx_j = sum_i a_ij d/dxt_i into new-coordinate
// jets with rational coefficients.
std::map<Jet, Rational, JetBefore> expand_jet(const Jet& j, const QMatrix& a) {
  int n = static_cast<int>(a.size());
  std::map<Jet, Rational, JetBefore> cur;
  cur.emplace(Jet{j.comp, MultiIndex(n, 0)}, Rational(1));
  for (int var = 0; var < n; ++var) {
    for (unsigned rep = 0; rep < j.mu[var]; ++rep) {
      std::map<Jet, Rational, JetBefore> next;
      for (const auto& [jj, c] : cur) {
        for (int i = 0; i < n; ++i) {
          if (sgn(a[i][var]) == 0) continue;
          Jet up{jj.comp, mi_plus(jj.mu, i)};
          auto [it, inserted] = next.emplace(up, c * a[i][var]);
          if (!inserted) it->second += c * a[i][var];
        }
      }
      cur = std::move(next);
    }
  }
  return cur;
}

LinForm change_form(const LinForm& f, const QMatrix& a, const QMatrix& a_inv) {
  // x = A^{-1} xt substituted into coefficients.
  int n = static_cast<int>(a.size());
  std::vector<std::vector<Rational>> subst(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) subst[i][k] = a_inv[i][k];
  LinForm out;
  for (const auto& [j, c] : f) {
    RatFunc cc = c.subst_linear(subst);
    for (const auto& [jj, w] : expand_jet(j, a)) {
      RatFunc term = cc * RatFunc::constant(c.nvars(), w);
      auto [it, inserted] = out.emplace(jj, term);
      if (!inserted) {
        it->second += term;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

}  // namespace

PDESystem change_coordinates(const PDESystem& sys, const QMatrix& a) {
  auto inv = mat_inverse(a);
  if (!inv) throw std::invalid_argument("coordinate change matrix is singular");
  PDESystem out = sys;
  for (auto& e : out.eqs) {
    e.lhs = change_form(e.lhs, a, *inv);
    e.rhs = change_form(e.rhs, a, *inv);
  }
  return out;
}

}  // namespace jetcc

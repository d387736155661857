#include "jetcc/symbol.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace jetcc {

SymbolSpace SymbolSpace::full(int nvars, int ncomps, int level) {
  SymbolSpace g;
  g.level = level;
  g.nvars = nvars;
  g.ncomps = ncomps;
  if (level >= 0) g.parametric = jets_exact(nvars, ncomps, level);
  return g;
}

SymbolSpace SymbolSpace::zero_space(int nvars, int ncomps, int level) {
  SymbolSpace g;
  g.level = level;
  g.nvars = nvars;
  g.ncomps = ncomps;
  for (const Jet& j : jets_exact(nvars, ncomps, level)) {
    LinForm row;
    row.emplace(j, RatFunc::constant(nvars, Rational(1)));
    g.rows.push_back(std::move(row));
    g.pivots.push_back(j);
  }
  return g;
}

int SymbolSpace::pivot_index(const Jet& nu) const {
  for (size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] == nu) return static_cast<int>(i);
  return -1;
}

RatFunc SymbolSpace::basis_component(const Jet& p, const Jet& nu) const {
  if (nu == p) return RatFunc::constant(nvars, Rational(1));
  int ri = pivot_index(nu);
  if (ri < 0) return RatFunc(nvars);
  auto it = rows[ri].find(p);
  if (it == rows[ri].end()) return RatFunc(nvars);
  return -it->second;
}

namespace {

// Top part of an equation: the terms of exact order = order(e).
LinForm top_part(const LinForm& lhs) {
  LinForm out;
  int ord = form_order(lhs);
  for (const auto& [j, c] : lhs)
    if (mi_order(j.mu) == ord) out.emplace(j, c);
  return out;
}

// Shift every jet of the form by nu (the symbol of d_nu, coefficients frozen).
LinForm shift_form(const LinForm& f, const MultiIndex& nu) {
  LinForm out;
  for (const auto& [j, c] : f) {
    Mono m = j.mu;
    for (size_t i = 0; i < nu.size(); ++i) m[i] += nu[i];
    out.emplace(Jet{j.comp, m}, c);
  }
  return out;
}

SymbolSpace rref_symbol(std::vector<LinForm> raw, int nvars, int ncomps,
                        int level) {
  SymbolSpace g;
  g.level = level;
  g.nvars = nvars;
  g.ncomps = ncomps;
  std::vector<Jet> cols = jets_exact(nvars, ncomps, level);
  std::map<Jet, int, JetBefore> col_idx;
  for (size_t i = 0; i < cols.size(); ++i)
    col_idx.emplace(cols[i], static_cast<int>(i));
  SparseRREF rref;
  long tag = 0;
  for (auto& f : raw) {
    SparseRow row;
    for (const auto& [j, c] : f) row.emplace(col_idx.at(j), c);
    rref.add_row(std::move(row), tag++);
  }
  rref.reduce();
  std::vector<bool> is_pivot(cols.size(), false);
  for (size_t i = 0; i < rref.rows().size(); ++i) {
    LinForm row;
    for (const auto& [c, v] : rref.rows()[i]) row.emplace(cols[c], v);
    g.rows.push_back(std::move(row));
    g.pivots.push_back(cols[rref.pivots()[i]]);
    is_pivot[rref.pivots()[i]] = true;
  }
  for (size_t i = 0; i < cols.size(); ++i)
    if (!is_pivot[i]) g.parametric.push_back(cols[i]);
  return g;
}

}  // namespace

SymbolSpace symbol_at_level(const PDESystem& sys, int L) {
  if (L < 0) return SymbolSpace::full(sys.nvars(), sys.nunknowns(), L);
  std::vector<LinForm> raw;
  for (const auto& e : sys.eqs) {
    int r = L - e.order();
    if (r < 0) continue;
    LinForm top = top_part(e.lhs);
    for (const auto& nu : multi_indices_exact(sys.nvars(), r))
      raw.push_back(shift_form(top, nu));
  }
  return rref_symbol(std::move(raw), sys.nvars(), sys.nunknowns(), L);
}

SymbolSpace symbol(const PDESystem& sys, int r) {
  return symbol_at_level(sys, std::max(sys.order(), 0) + r);
}

std::vector<std::vector<int>> wedge_subsets(int n, int s) {
  std::vector<std::vector<int>> out;
  if (s < 0 || s > n) return out;
  std::vector<int> cur;
  // Ascending lexicographic enumeration of s-subsets.
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == s) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

DeltaMatrix delta_matrix(const SymbolSpace& g_hi, const SymbolSpace& g_lo,
                         int s) {
  if (g_lo.level >= 0 && g_hi.level != g_lo.level + 1)
    throw std::invalid_argument("delta_matrix level mismatch");
  int n = g_hi.nvars;
  auto dom_subsets = wedge_subsets(n, s);
  auto cod_subsets = wedge_subsets(n, s + 1);
  std::map<std::vector<int>, int> cod_subset_idx;
  for (size_t i = 0; i < cod_subsets.size(); ++i)
    cod_subset_idx.emplace(cod_subsets[i], static_cast<int>(i));
  std::map<Jet, int, JetBefore> lo_param_idx;
  for (size_t i = 0; i < g_lo.parametric.size(); ++i)
    lo_param_idx.emplace(g_lo.parametric[i], static_cast<int>(i));

  DeltaMatrix m;
  m.s = s;
  m.level = g_hi.level;
  m.domain_dim = static_cast<long long>(dom_subsets.size()) * g_hi.dim();
  m.codomain_dim = static_cast<long long>(cod_subsets.size()) * g_lo.dim();
  if (m.domain_dim == 0 || m.codomain_dim == 0) {
    m.rows.assign(static_cast<size_t>(std::max<long long>(m.domain_dim, 0)),
                  SparseRow{});
    return m;
  }
  long long lo_dim = g_lo.dim();
  for (const auto& subset : dom_subsets) {
    for (const Jet& p : g_hi.parametric) {
      SparseRow row;
      for (int j = 0; j < n; ++j) {
        if (std::find(subset.begin(), subset.end(), j) != subset.end())
          continue;
        int before = 0;
        for (int i : subset)
          if (i < j) ++before;
        Rational sign((before % 2 == 0) ? 1 : -1);
        std::vector<int> target = subset;
        target.insert(std::upper_bound(target.begin(), target.end(), j), j);
        long long tbase = cod_subset_idx.at(target) * lo_dim;
        for (size_t pi = 0; pi < g_lo.parametric.size(); ++pi) {
          const Jet& pp = g_lo.parametric[pi];
          RatFunc comp =
              g_hi.basis_component(p, Jet{pp.comp, mi_plus(pp.mu, j)});
          if (comp.is_zero()) continue;
          comp = comp * RatFunc::constant(n, sign);
          int col = static_cast<int>(tbase + pi);
          auto [it, inserted] = row.emplace(col, comp);
          if (!inserted) {
            it->second += comp;
            if (it->second.is_zero()) row.erase(it);
          }
        }
      }
      m.rows.push_back(std::move(row));
    }
  }
  return m;
}

long long delta_rank(const SymbolSpace& g_hi, const SymbolSpace& g_lo, int s) {
  if (g_hi.dim() == 0 || g_lo.dim() == 0 || s < 0 || s > g_hi.nvars) return 0;
  DeltaMatrix m = delta_matrix(g_hi, g_lo, s);
  SparseRREF rref;
  long tag = 0;
  for (auto& r : m.rows) rref.add_row(std::move(r), tag++);
  rref.reduce();
  return rref.rank();
}

bool composes_to_zero(const DeltaMatrix& first, const DeltaMatrix& second) {
  if (first.codomain_dim != second.domain_dim)
    throw std::invalid_argument("delta matrices not composable");
  for (const auto& row : first.rows) {
    SparseRow acc;
    for (const auto& [mid, c] : row) {
      const SparseRow& img = second.rows[static_cast<size_t>(mid)];
      for (const auto& [col, v] : img) {
        auto [it, inserted] = acc.emplace(col, c * v);
        if (!inserted) {
          it->second += c * v;
          if (it->second.is_zero()) acc.erase(it);
        }
      }
    }
    if (!acc.empty()) return false;
  }
  return true;
}

long long spencer_cohomology_at(const SymbolSpace& g_up, const SymbolSpace& g,
                                const SymbolSpace& g_down, int s) {
  int n = g.nvars;
  if (s < 0 || s > n) return 0;
  long long out_rank =
      (g_down.level < 0) ? 0 : delta_rank(g, g_down, s);
  long long nullity = binom(n, s) * g.dim() - out_rank;
  long long in_rank = (s >= 1) ? delta_rank(g_up, g, s - 1) : 0;
  return nullity - in_rank;
}

long long spencer_cohomology_dim(const PDESystem& sys, int r, int s) {
  int q = std::max(sys.order(), 0);
  int L = q + r;
  SymbolSpace g = symbol_at_level(sys, L);
  SymbolSpace g_up = symbol_at_level(sys, L + 1);
  SymbolSpace g_down = symbol_at_level(sys, L - 1);
  return spencer_cohomology_at(g_up, g, g_down, s);
}

bool is_2_acyclic(const PDESystem& sys, int r) {
  return spencer_cohomology_dim(sys, r, 1) == 0 &&
         spencer_cohomology_dim(sys, r, 2) == 0;
}

bool is_involutive(const PDESystem& sys, int r) {
  for (int s = 1; s <= sys.nvars(); ++s)
    if (spencer_cohomology_dim(sys, r, s) != 0) return false;
  return true;
}

long long spencer_cohomology_at_level(const PDESystem& sys, int level, int s) {
  SymbolSpace g = symbol_at_level(sys, level);
  SymbolSpace g_up = symbol_at_level(sys, level + 1);
  SymbolSpace g_down = symbol_at_level(sys, level - 1);
  return spencer_cohomology_at(g_up, g, g_down, s);
}

bool is_2_acyclic_at(const PDESystem& sys, int level) {
  return spencer_cohomology_at_level(sys, level, 1) == 0 &&
         spencer_cohomology_at_level(sys, level, 2) == 0;
}

bool is_involutive_at(const PDESystem& sys, int level) {
  for (int s = 1; s <= sys.nvars(); ++s)
    if (spencer_cohomology_at_level(sys, level, s) != 0) return false;
  return true;
}

namespace {

/// Membership basis: multiplicative multi-shifts of all top rows to `level`.
SparseRREF multiplicative_span(const std::vector<LinForm>& tops, int nvars,
                               int ncomps, int level,
                               const std::map<Jet, int, JetBefore>& col_idx) {
  SparseRREF span;
  long tag = 0;
  for (const auto& top : tops) {
    if (top.empty()) continue;
    int cls = mi_class(top.begin()->first.mu);
    int depth = level - form_order(top);
    if (depth < 0) continue;
    // Multi-indices supported on the multiplicative variables x^1..x^cls.
    for (const auto& nu : multi_indices_exact(nvars, depth)) {
      bool ok = true;
      for (int v = cls; v < nvars; ++v)
        if (nu[v] != 0) ok = false;
      if (!ok) continue;
      SparseRow row;
      for (const auto& [j, c] : shift_form(top, nu))
        row.emplace(col_idx.at(j), c);
      span.add_row(std::move(row), tag++);
    }
  }
  span.reduce();
  return span;
}

JanetTabular tabular_of_rows(const PDESystem& sys,
                             const std::vector<Equation>& rows,
                             const std::vector<Jet>& parametric, int level) {
  int n = sys.nvars();
  JanetTabular tab;
  tab.level = level;
  tab.characters.assign(n, 0);
  for (const Jet& p : parametric) {
    if (mi_order(p.mu) != level) continue;
    int c = mi_class(p.mu);
    if (c >= 1) tab.characters[c - 1] += 1;
  }
  std::vector<LinForm> tops;
  tops.reserve(rows.size());
  for (const auto& e : rows) tops.push_back(top_part(e.lhs));

  // Column space big enough for every single non-multiplicative shift.
  int max_level = 0;
  for (const auto& t : tops)
    if (!t.empty()) max_level = std::max(max_level, form_order(t) + 1);
  std::map<Jet, int, JetBefore> col_idx;
  {
    int i = 0;
    for (const Jet& j : jets_upto(n, sys.nunknowns(), max_level))
      col_idx.emplace(j, i++);
  }
  // One span per occurring target level.
  std::map<int, SparseRREF> spans;
  for (const auto& t : tops) {
    if (t.empty()) continue;
    int target = form_order(t) + 1;
    if (!spans.count(target))
      spans.emplace(target, multiplicative_span(tops, n, sys.nunknowns(),
                                                target, col_idx));
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    JanetRow jr;
    jr.label = rows[i].label;
    jr.lhs = rows[i].lhs;
    jr.rhs = rows[i].rhs;
    if (tops[i].empty()) continue;
    jr.pivot = tops[i].begin()->first;
    jr.cls = mi_class(jr.pivot.mu);
    tab.cartan_sum += jr.cls;
    int target = form_order(tops[i]) + 1;
    SparseRREF& span = spans.at(target);
    for (int v = jr.cls; v < n; ++v) {  // non-multiplicative: class+1..n
      MultiIndex nu(n, 0);
      nu[v] = 1;
      SparseRow shifted;
      for (const auto& [j, c] : shift_form(tops[i], nu))
        shifted.emplace(col_idx.at(j), c);
      if (!span.normal_form(std::move(shifted)).empty())
        jr.cross_vars.push_back(v + 1);
    }
    tab.rows.push_back(std::move(jr));
  }
  std::sort(tab.rows.begin(), tab.rows.end(),
            [](const JanetRow& a, const JanetRow& b) {
              return jet_before(a.pivot, b.pivot);
            });
  return tab;
}

}  // namespace

JanetTabular janet_tabular(const PDESystem& sys, int r) {
  int L = std::max(sys.order(), 0) + r;
  SymbolSpace g = symbol_at_level(sys, L);
  std::vector<Equation> rows;
  for (size_t i = 0; i < g.rows.size(); ++i)
    rows.push_back(Equation{"s" + std::to_string(i + 1), g.rows[i], {}});
  JanetTabular tab = tabular_of_rows(sys, rows, g.parametric, L);
  tab.symbol_dim = g.dim();
  SymbolSpace g_next = symbol_at_level(sys, L + 1);
  tab.rank_next =
      dim_sym(sys.nvars(), L + 1, sys.nunknowns()) - g_next.dim();
  tab.cartan_equal = (tab.rank_next == tab.cartan_sum);
  return tab;
}

JanetTabular system_tabular(const PDESystem& sys, int level) {
  SolveResult sol = solve_at(sys, level);
  JanetTabular tab =
      tabular_of_rows(sys, sol.rows, sol.parametric, level);
  SymbolSpace g = symbol_at_level(sys, level);
  tab.symbol_dim = g.dim();
  SymbolSpace g_next = symbol_at_level(sys, level + 1);
  tab.rank_next =
      dim_sym(sys.nvars(), level + 1, sys.nunknowns()) - g_next.dim();
  tab.cartan_equal = (tab.rank_next == tab.cartan_sum);
  return tab;
}

RegularizeResult delta_regularize(const PDESystem& sys, int r,
                                  unsigned long seed, int max_tries) {
  int n = sys.nvars();
  RegularizeResult best;
  best.delta_verdict = is_involutive(sys, r);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-2, 2);
  QMatrix identity(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) identity[i][i] = Rational(1);

  QMatrix change = identity;
  PDESystem cur = sys;
  bool have_best = false;
  for (int attempt = 0; attempt <= max_tries; ++attempt) {
    if (attempt > 0) {
      QMatrix a(n, std::vector<Rational>(n));
      do {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) a[i][j] = Rational(entry(rng));
      } while (sgn(mat_det(a)) == 0);
      change = a;
      cur = change_coordinates(sys, a);
    }
    JanetTabular tab = janet_tabular(cur, r);
    bool janet_verdict = tab.cartan_equal;
    bool better = !have_best || tab.cartan_sum > best.tabular.cartan_sum;
    if (better) {
      best.sys = cur;
      best.change = change;
      best.tabular = tab;
      best.janet_verdict = janet_verdict;
      have_best = true;
    }
    best.tries = attempt + 1;
    if (janet_verdict == best.delta_verdict) {
      best.sys = cur;
      best.change = change;
      best.tabular = std::move(tab);
      best.janet_verdict = janet_verdict;
      best.agree = true;
      return best;
    }
  }
  best.agree = (best.janet_verdict == best.delta_verdict);
  return best;
}

}  // namespace jetcc

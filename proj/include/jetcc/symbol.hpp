#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetcc/system.hpp"

namespace jetcc {

// The symbol g_L: kernel of the top-order rows at exact jet order L, stored
// dually as canonical RREF constraint rows over the order-L jet columns.
// Basis vectors of the kernel are indexed by the parametric jets.
struct SymbolSpace {
  int level = 0;
  int nvars = 0;
  int ncomps = 0;
  std::vector<LinForm> rows;    // constraints, pivot coefficient 1
  std::vector<Jet> pivots;      // row pivots (highest jet of each row)
  std::vector<Jet> parametric;  // order-L jets that are not pivots

  long long dim() const { return static_cast<long long>(parametric.size()); }

  static SymbolSpace full(int nvars, int ncomps, int level);
  static SymbolSpace zero_space(int nvars, int ncomps, int level);

  // Component at jet nu of the kernel basis vector attached to parametric
  // jet p: 1 at p, minus the row coefficient at pivots, 0 elsewhere.
  RatFunc basis_component(const Jet& p, const Jet& nu) const;

  int pivot_index(const Jet& nu) const;  // -1 when nu is not a pivot
};

// Symbol of the saturated system at absolute jet order L: constraint rows are
// the nu-shifted top parts of every equation with order(e) + |nu| = L.
SymbolSpace symbol_at_level(const PDESystem& sys, int L);
// Spec-style offset form: g_{q+r} with q = order(sys).
SymbolSpace symbol(const PDESystem& sys, int r);

// Wedge-basis bookkeeping: s-element subsets of {0..n-1}, ascending lex.
std::vector<std::vector<int>> wedge_subsets(int n, int s);

// Matrix of delta : wedge^s T* (x) g_hi -> wedge^{s+1} T* (x) g_lo,
// (delta w)_{i0..is} = sum alternating insertions, jet index lowered by 1_i.
// Rows are indexed by (subset, parametric jet of g_hi) pairs, flattened as
// subset_index * dim(g_hi) + param_index; columns likewise over g_lo.
struct DeltaMatrix {
  int s = 0;
  int level = 0;  // domain symbol level
  long long domain_dim = 0;
  long long codomain_dim = 0;
  std::vector<SparseRow> rows;  // one per domain basis element
};

DeltaMatrix delta_matrix(const SymbolSpace& g_hi, const SymbolSpace& g_lo,
                         int s);
long long delta_rank(const SymbolSpace& g_hi, const SymbolSpace& g_lo, int s);
// Sparse product checking the complex property; used by tests.
bool composes_to_zero(const DeltaMatrix& first, const DeltaMatrix& second);

// dim H^s(g_L) = nullity(delta: wedge^s (x) g_L -> wedge^{s+1} (x) g_{L-1})
//              - rank(delta: wedge^{s-1} (x) g_{L+1} -> wedge^s (x) g_L).
long long spencer_cohomology_at(const SymbolSpace& g_up, const SymbolSpace& g,
                                const SymbolSpace& g_down, int s);
long long spencer_cohomology_dim(const PDESystem& sys, int r, int s);

bool is_2_acyclic(const PDESystem& sys, int r);
bool is_involutive(const PDESystem& sys, int r);  // delta-rank route
// Same tests at an absolute jet level (independent of order(sys)).
bool is_2_acyclic_at(const PDESystem& sys, int level);
bool is_involutive_at(const PDESystem& sys, int level);
long long spencer_cohomology_at_level(const PDESystem& sys, int level, int s);

// Janet tabular of the symbol at level q+r (or of arbitrary solved rows).
// Class of a row = class of its pivot; multiplicative variables x^1..x^class.
// For each non-multiplicative variable the single prolongation of the row's
// top part either reduces to zero against the multiplicative prolongations
// of all rows (printed as a dot) or does not (printed as a cross).
struct JanetRow {
  std::string label;
  Jet pivot;
  int cls = 0;
  std::vector<int> cross_vars;  // 1-based non-multiplicative failures
  LinForm lhs;                  // full row (symbol top or solved equation)
  LinForm rhs;
};

struct JanetTabular {
  int level = 0;
  std::vector<JanetRow> rows;
  std::vector<long long> characters;  // alpha^1..alpha^n from parametric jets
  long long symbol_dim = 0;
  long long cartan_sum = 0;   // sum of pivot classes
  long long rank_next = 0;    // rank of the symbol at level+1
  bool cartan_equal = false;  // rank_next == cartan_sum (involutive in these
                              // coordinates)
};

JanetTabular janet_tabular(const PDESystem& sys, int r);
// Tabular over the solved rows of the system at the given level (all pivot
// orders <= level); used by the CLI solved-form display.
JanetTabular system_tabular(const PDESystem& sys, int level);

// Random linear coordinate changes (entries in {-2..2}, det != 0, seeded)
// until the Janet-division verdict at level q+r agrees with the delta-rank
// verdict; the identity is tried first.
struct RegularizeResult {
  PDESystem sys;
  QMatrix change;
  JanetTabular tabular;
  bool delta_verdict = false;
  bool janet_verdict = false;
  bool agree = false;
  int tries = 0;
};

RegularizeResult delta_regularize(const PDESystem& sys, int r,
                                  unsigned long seed, int max_tries = 25);

}  // namespace jetcc

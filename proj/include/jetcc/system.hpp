#pragma once

#include <string>
#include <vector>

#include "jetcc/jet.hpp"
#include "jetcc/linalg.hpp"

namespace jetcc {

// One linear equation lhs(unknown jets) = rhs(source jets); both sides have
// coefficients in Q(x1..xn).
struct Equation {
  std::string label;
  LinForm lhs;
  LinForm rhs;

  int order() const { return form_order(lhs); }
  int rhs_order() const { return form_order(rhs); }
};

struct PDESystem {
  std::vector<std::string> vars;      // x1..xn
  std::vector<std::string> unknowns;  // fiber components of E
  std::vector<std::string> sources;   // fiber components of F0
  std::vector<Equation> eqs;

  int nvars() const { return static_cast<int>(vars.size()); }
  int nunknowns() const { return static_cast<int>(unknowns.size()); }
  int nsources() const { return static_cast<int>(sources.size()); }
  // Order of the system: max lhs order over equations.
  int order() const;
};

// Formal total derivative d/dx_v with the Leibniz rule on coefficients:
// d_v(b * u_mu) = (db/dx_v) u_mu + b * u_{mu+1_v}.
LinForm total_derivative(const LinForm& f, int v);
Equation differentiate(const Equation& e, int v);
Equation differentiate_multi(const Equation& e, const MultiIndex& nu);

// Uniform-depth prolongation: all d_nu(e), |nu| <= r, for every equation.
// This is the operator prolongation rho_r.
PDESystem prolong(const PDESystem& sys, int r);

// Order saturation: all d_nu(e) with order(e) + |nu| <= level. Agrees with
// prolong(sys, level - order) when all equations share the same order, and is
// what the solution space at a given jet order means for mixed-order systems.
PDESystem saturate(const PDESystem& sys, int level);

// Canonical reduced echelon solve of the saturated system at a jet level.
// Columns are unknown jets (highest first), then source jets (highest first);
// row space RREF is unique, so parametric expressions and compatibility rows
// are canonical.
struct SolveResult {
  int level = 0;
  std::vector<Equation> rows;      // pivot on an unknown jet, sorted pivot-desc
  std::vector<Equation> cc_rows;   // lhs identically zero: 0 = rhs form
  long identities = 0;             // 0 = 0 rows
  std::vector<Jet> pivots;         // unknown-jet pivots, one per row
  std::vector<Jet> parametric;     // unknown jets <= level that are not pivots

  long long dim() const { return static_cast<long long>(parametric.size()); }
  // dim of the projection to jet order q (count of parametric jets <= q).
  long long projected_dim(int q) const;
};

// Solves the saturation of sys at the given jet level. With track_sources
// the reduced rows carry their source-side forms (rhs, compatibility rows);
// dimension-only callers can switch it off, which skips the expensive exact
// bookkeeping in the source columns and leaves rhs/cc_rows empty (dependent
// rows are then counted as identities).
SolveResult solve_at(const PDESystem& sys, int level,
                     bool track_sources = true);
// Solves exactly the given rows (no saturation); level = max lhs order.
SolveResult solve_rows(const PDESystem& sys, const std::vector<Equation>& rows,
                       bool track_sources = true);

// System whose equations are the solved rows of pivot order <= q
// (every jet in such a row has order <= q).
PDESystem project(const PDESystem& sys, const SolveResult& solved, int q);
// Convenience: project(solve_at(sys, level), q).
PDESystem projected_system(const PDESystem& sys, int level, int q);

long long dim_solution(const PDESystem& sys, int level);

// Depth-bounded formal integrability test:
// dim pi_{q+j}(R_{q+j+1}) == dim R_{q+j} for j = 0..depth-1, q = order(sys).
struct FiTestResult {
  bool ok = true;
  int failed_at = -1;  // j of the first failing comparison
  std::vector<std::pair<long long, long long>> dims;  // (projected, plain)
};
FiTestResult fi_test(const PDESystem& sys, int depth);

// Spencer operator on a truncated jet section f (all jets |mu| <= level):
// (D_v f)^k_mu = d/dx_v f^k_mu - f^k_{mu+1_v}, for |mu| <= level - 1.
using JetSection = std::map<Jet, RatFunc, JetBefore>;
JetSection spencer_operator(const JetSection& f, int v, int level, int nvars,
                            int ncomps);
// Jet section of a vector of polynomials, truncated at the level.
JetSection section_of_polys(const std::vector<Poly>& sol, int level);

// Linear change of base coordinates xt = A x (unknowns/sources unchanged):
// d/dx_j = sum_i A_ij d/dxt_i, coefficients pull back via x = A^{-1} xt.
PDESystem change_coordinates(const PDESystem& sys, const QMatrix& a);

}  // namespace jetcc

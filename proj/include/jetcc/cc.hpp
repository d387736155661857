#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetcc/errors.hpp"
#include "jetcc/formal.hpp"
#include "jetcc/symbol.hpp"
#include "jetcc/system.hpp"

namespace jetcc {

// A compatibility condition: a linear form over source jets that vanishes on
// every right-hand side in the image of the operator.
struct CCExpression {
  std::string label;
  LinForm form;  // source jets -> coefficients, highest jet first

  int order() const { return form_order(form); }
};

// dim B_r = rank rho_r(Phi) = dim J_{q+r}(E) - dim R_{q+r};
// dim Q_r = dim J_r(F0) - dim B_r.
struct CCDims {
  long long dim_R = 0;
  long long dim_jet_E = 0;
  long long dim_jet_F0 = 0;
  long long dim_B = 0;
  long long dim_Q = 0;
};
CCDims cc_dims(const PDESystem& sys, int r);

// Canonical K-basis of Q_r: reduced echelon residue rows (zero lhs) of the
// depth-r uniform prolongation, pivot coefficient 1.
std::vector<CCExpression> cc_at_order(const PDESystem& sys, int r);

// Basis of the complement of the prolonged known generators inside
// cc_at_order(sys, r+1); i.e. the new generators of order r+1.
std::vector<CCExpression> new_generators(const PDESystem& sys, int r,
                                         const std::vector<CCExpression>& known);

// Search over pairs (r, s), in ascending t = r+s+1 and ascending s, for a
// projected system R^(s)_{q+r} that is certified formally integrable with
// involutive symbol at level q+r; Prop-style bound: generating CC have order
// at most t.
struct TerminationSearch {
  bool found = false;
  int r = -1;
  int s = -1;
  int t = -1;
  PDESystem system;  // the accepted projected system
  FiCertificate certificate;
};
TerminationSearch find_termination(const PDESystem& sys, int max_t);

struct OrderCount {
  long long new_generators = 0;
  long long dim_Q = 0;
  long long identities = 0;  // 0 = 0 residue rows (diagnostics only)
};

struct GeneratingCC {
  std::vector<CCExpression> generators;
  std::map<int, OrderCount> per_order;
  TerminationSearch termination;
  bool complete = false;  // false if the cap was hit before certification
  int scanned_to = -1;
};

// Scans CC orders 0..t (t from find_termination, capped by max_order) and
// returns the generating set. Every emitted generator is verified by exact
// substitution; violation raises InternalError.
GeneratingCC generating_cc(const PDESystem& sys, int max_order = 10);

// The generators as a new operator D1 : F0 -> F1 (unknowns = old sources,
// one equation per generator with a fresh tracker named after its label).
PDESystem cc_system(const PDESystem& sys,
                    const std::vector<CCExpression>& gens);

// Generating CC of the generator operator; relations verified by exact
// substitution. search_order < 0 means deepest generator order + 4.
struct SyzygyResult {
  std::vector<CCExpression> relations;
  GeneratingCC run;
  int search_order = 0;
};
SyzygyResult syzygies(const PDESystem& sys,
                      const std::vector<CCExpression>& gens,
                      int search_order = -1);

struct ResolutionReport {
  std::vector<long long> ranks;  // m, dim F0, #gens, #syzygies, ...
  std::vector<int> orders;       // operator orders, one per arrow
  long long euler = 0;           // alternating sum of ranks from the left
  long long differential_rank = 0;  // = euler
  bool complete = true;
};
ResolutionReport resolution(const PDESystem& sys, int max_order = 10);

// (g_{q+r+2}, R_{q+r+2}, R_{q+r+1}, h_{r+2}, Q_{r+2}, Q_{r+1});
// the alternating sum vanishes.
std::array<long long, 6> connecting_sequence_dims(const PDESystem& sys, int r);

// H_R = dim R_{q+r} - dim pi(R_{q+r+1});
// H_S at S_{r+1}(F0), H_J at J_{r+1}(F0), both relative to the canonical
// order-r quotient operator Psi_r (the Q_r basis); H_S = H_R + H_J.
struct JetCohomology {
  long long h_R = 0;
  long long h_S = 0;
  long long h_J = 0;
};
JetCohomology jet_cohomology_dims(const PDESystem& sys, int r);

// Same cohomology dimensions at J_level(F0) / S_level(F0) but relative to a
// fixed CC operator given by `gens` (treated as uniform order = max order).
struct RelativeCohomology {
  long long h_S = 0;
  long long h_J = 0;
};
RelativeCohomology relative_jet_cohomology(const PDESystem& sys,
                                           const std::vector<CCExpression>& gens,
                                           int level);

// dim R_level - dim pi_level(R_{level+1}).
long long dim_h_R(const PDESystem& sys, int level);

// Spencer bundle dims C_r = C(n,r) dim R_q - rank delta(wedge^{r-1} g_{q+1}),
// trivial counterparts over full jets, Janet dims F_r = C_r(E) - C_r.
// Precondition: fi_test depth 1 passes and the symbol at q is involutive;
// otherwise PreconditionError naming the failing check.
struct SequenceDims {
  std::vector<long long> spencer;
  std::vector<long long> trivial;
  std::vector<long long> janet;
};
SequenceDims sequence_dims(const PDESystem& sys);

// [(level, dim R_level)] for level = q+r_lo .. q+r_hi.
std::vector<std::pair<int, long long>> long_run_dims(const PDESystem& sys,
                                                     int r_lo, int r_hi);

// Exact substitution checks. Every source component must be the unit tracker
// of exactly one equation (rhs = single order-0 jet, coefficient 1).
bool verify_cc(const PDESystem& sys, const CCExpression& cc);

}  // namespace jetcc

#pragma once

#include "jetcc/symbol.hpp"
#include "jetcc/system.hpp"

namespace jetcc {

// Goldschmidt-style certificate: find the smallest j with the symbol at
// level order+j 2-acyclic (delta ranks), then require the projections
// pi: R_{order+i+1} -> R_{order+i} to be surjective for i = 0..j.
struct FiCertificate {
  bool certified = false;
  int j_star = -1;          // first 2-acyclic offset, -1 if none within cap
  int failed_projection = -1;  // offset of the first dimension drop, if any
  std::vector<std::pair<long long, long long>> projections;  // (proj, plain)
};

FiCertificate certify_fi(const PDESystem& sys, int acyclic_cap = 8);

// Prolongation/projection: R^(s)_q = pi_q(R_{q+s}) for s = 0,1,2,...;
// records (s, dim) at every strict dimension drop and stops once the current
// projected system is certified formally integrable (then R^(s')_q is the
// same system for every s' >= s).
struct PPResult {
  std::vector<std::pair<int, long long>> chain;  // (s, dim), strict drops only
  PDESystem stable;        // last projected system
  int stable_s = -1;       // s at which the certificate succeeded
  bool certified = false;  // false when max_steps was hit first
  FiCertificate certificate;
};

PPResult pp_procedure(const PDESystem& sys, int max_steps = 10);

}  // namespace jetcc

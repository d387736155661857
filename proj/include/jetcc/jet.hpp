#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jetcc/ratfunc.hpp"

namespace jetcc {

// A multi-index over the base variables reuses the exponent-vector type.
using MultiIndex = Mono;

inline int mi_order(const MultiIndex& mu) {
  int s = 0;
  for (unsigned e : mu) s += static_cast<int>(e);
  return s;
}

// Class of a multi-index: smallest i (1-based) with mu_i != 0; 0 for mu = 0.
inline int mi_class(const MultiIndex& mu) {
  for (size_t i = 0; i < mu.size(); ++i)
    if (mu[i] != 0) return static_cast<int>(i) + 1;
  return 0;
}

inline MultiIndex mi_plus(MultiIndex mu, int v) {
  mu[v] += 1;
  return mu;
}

// Digits rendering: (1,0,2) -> "133" (one d/dx1, two d/dx3).
std::string mi_digits(const MultiIndex& mu);
MultiIndex mi_from_digits(const std::string& digits, int nvars);

// Jet coordinate u^comp_mu. comp indexes the unknown (or source) component.
struct Jet {
  int comp = 0;
  MultiIndex mu;

  bool operator==(const Jet& o) const { return comp == o.comp && mu == o.mu; }
  bool operator!=(const Jet& o) const { return !(*this == o); }
};

// Column precedence: higher jets come first. Order descending by |mu|, then
// descending lexicographically on the reversed tuple (mu_n,...,mu_1), then
// ascending by component index.
bool jet_before(const Jet& a, const Jet& b);

struct JetBefore {
  bool operator()(const Jet& a, const Jet& b) const { return jet_before(a, b); }
};

// Linear form with rational-function coefficients, highest jet first.
using LinForm = std::map<Jet, RatFunc, JetBefore>;

int form_order(const LinForm& f);  // -1 if empty

long long binom(int n, int k);
// dim S_q T* (x) E for one component: C(q+n-1, n-1); total multiplies by m.
long long dim_sym(int n, int q, int m = 1);
// dim J_q(E): C(n+q, n) per component.
long long dim_jet(int n, int q, int m = 1);

// All multi-indices of exact order q (resp. order <= q), listed with the
// jet_before precedence (highest first).
std::vector<MultiIndex> multi_indices_exact(int n, int q);
std::vector<MultiIndex> multi_indices_upto(int n, int q);

// All jets for m components with |mu| = q (resp. <= q), highest first.
std::vector<Jet> jets_exact(int n, int m, int q);
std::vector<Jet> jets_upto(int n, int m, int q);

// Rendering: order-0 jets print as the bare component name, otherwise
// name_digits, e.g. "y_233".
std::string jet_name(const Jet& j, const std::vector<std::string>& comp_names);

}  // namespace jetcc

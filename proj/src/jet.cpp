#include "jetcc/jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace jetcc {

std::string mi_digits(const MultiIndex& mu) {
  std::string s;
  for (size_t i = 0; i < mu.size(); ++i)
    for (unsigned e = 0; e < mu[i]; ++e) s += std::to_string(i + 1);
  return s;
}

MultiIndex mi_from_digits(const std::string& digits, int nvars) {
  MultiIndex mu(nvars, 0);
  for (char c : digits) {
    if (c < '1' || c > '9') throw std::invalid_argument("bad jet digit");
    int v = c - '1';
    if (v >= nvars) throw std::invalid_argument("jet digit out of range");
    mu[v] += 1;
  }
  return mu;
}

bool jet_before(const Jet& a, const Jet& b) {
  int oa = mi_order(a.mu), ob = mi_order(b.mu);
  if (oa != ob) return oa > ob;
  // Descending lex on (mu_n, ..., mu_1).
  size_t n = a.mu.size();
  for (size_t k = 0; k < n; ++k) {
    unsigned ea = a.mu[n - 1 - k], eb = b.mu[n - 1 - k];
    if (ea != eb) return ea > eb;
  }
  return a.comp < b.comp;
}

int form_order(const LinForm& f) {
  return f.empty() ? -1 : mi_order(f.begin()->first.mu);
}

long long binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long dim_sym(int n, int q, int m) {
  if (q < 0) return 0;
  return m * binom(q + n - 1, n - 1);
}

long long dim_jet(int n, int q, int m) {
  if (q < 0) return 0;
  return m * binom(n + q, n);
}

namespace {

void gen_exact(int n, int q, int pos, MultiIndex& cur,
               std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    cur[pos] = static_cast<unsigned>(q);
    out.push_back(cur);
    cur[pos] = 0;
    return;
  }
  for (int e = q; e >= 0; --e) {
    cur[pos] = static_cast<unsigned>(e);
    gen_exact(n, q - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> multi_indices_exact(int n, int q) {
  std::vector<MultiIndex> out;
  if (q < 0) return out;
  MultiIndex cur(n, 0);
  gen_exact(n, q, 0, cur, out);
  std::sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
    return jet_before(Jet{0, a}, Jet{0, b});
  });
  return out;
}

std::vector<MultiIndex> multi_indices_upto(int n, int q) {
  std::vector<MultiIndex> out;
  for (int k = q; k >= 0; --k) {
    auto level = multi_indices_exact(n, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<Jet> jets_exact(int n, int m, int q) {
  std::vector<Jet> out;
  for (const auto& mu : multi_indices_exact(n, q))
    for (int c = 0; c < m; ++c) out.push_back(Jet{c, mu});
  return out;
}

std::vector<Jet> jets_upto(int n, int m, int q) {
  std::vector<Jet> out;
  for (int k = q; k >= 0; --k) {
    auto level = jets_exact(n, m, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::string jet_name(const Jet& j, const std::vector<std::string>& comp_names) {
  const std::string& base = comp_names[j.comp];
  if (mi_order(j.mu) == 0) return base;
  return base + "_" + mi_digits(j.mu);
}

}  // namespace jetcc

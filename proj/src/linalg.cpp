#include "jetcc/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace jetcc {

namespace {

// Rescales a row by a nonzero element of K so that every entry becomes a
// polynomial with no common polynomial factor and coprime integer
// coefficients. Rows only matter up to such a scale, and keeping them in
// this form makes the cross-multiplied elimination in reduce() fraction
// free: the only gcd work per row update is one content pass over entries
// of near-minimal degree, instead of a field normalization per entry.
void strip_content(SparseRow& row) {
  if (row.empty()) return;
  int n = row.begin()->second.nvars();
  const Poly one = Poly::constant(n, Rational(1));
  Poly den_lcm = one;
  for (const auto& [c, v] : row)
    if (!v.den().is_constant())
      den_lcm = den_lcm * Poly::div_exact(v.den(), Poly::gcd(den_lcm, v.den()));
  if (!den_lcm.is_constant())
    for (auto& [c, v] : row)
      v = RatFunc::from_poly(v.num() * Poly::div_exact(den_lcm, v.den()));

  Poly g(n);
  for (const auto& [c, v] : row) {
    g = g.is_zero() ? v.num() : Poly::gcd(g, v.num());
    if (g.is_constant()) break;
  }
  if (!g.is_constant() && !g.is_zero())
    for (auto& [c, v] : row)
      v = RatFunc::from_poly(Poly::div_exact(v.num(), g));

  // Integer-primitive rescale of the remaining rational coefficients.
  mpz_class num_gcd = 0, den_lcm_z = 1;
  for (const auto& [c, v] : row)
    for (const auto& [m, q] : v.num().terms()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
              q.get_num().get_mpz_t());
      mpz_lcm(den_lcm_z.get_mpz_t(), den_lcm_z.get_mpz_t(),
              q.get_den().get_mpz_t());
    }
  if (!(num_gcd == 1 && den_lcm_z == 1)) {
    Rational scale(den_lcm_z, num_gcd);
    scale.canonicalize();
    for (auto& [c, v] : row) v = RatFunc::from_poly(v.num() * scale);
  }
}

// row := lead(piv)*row - row[col]*piv, the cross-multiplied elimination of
// col from row, which stays within polynomial entries; strip_content keeps
// them small. No-op when row has no entry in col. piv's leading column must
// be col.
void combine(SparseRow& row, const SparseRow& piv, int col) {
  auto it = row.find(col);
  if (it == row.end()) return;
  const RatFunc lead = piv.begin()->second;
  RatFunc factor = it->second;
  row.erase(it);
  if (!lead.is_one())
    for (auto& [c, v] : row) v = v * lead;
  for (const auto& [c, v] : piv) {
    if (c == col) continue;
    RatFunc term = factor * v;
    auto jt = row.find(c);
    if (jt == row.end()) {
      if (!term.is_zero()) row.emplace(c, -term);
    } else {
      jt->second -= term;
      if (jt->second.is_zero()) row.erase(jt);
    }
  }
  strip_content(row);
}

}  // namespace

void SparseRREF::add_row(SparseRow r, long tag) {
  for (auto it = r.begin(); it != r.end();) {
    if (it->second.is_zero())
      it = r.erase(it);
    else
      ++it;
  }
  if (reduced_) throw std::logic_error("add_row after reduce");
  strip_content(r);
  pending_.push_back(std::move(r));
  tags_.push_back(tag);
}

void SparseRREF::reduce() {
  if (reduced_) return;
  reduced_ = true;
  std::vector<bool> used(pending_.size(), false);
  while (true) {
    // Leftmost column with a nonzero entry in any unused row.
    int col = std::numeric_limits<int>::max();
    for (size_t i = 0; i < pending_.size(); ++i) {
      if (used[i] || pending_[i].empty()) continue;
      col = std::min(col, pending_[i].begin()->first);
    }
    if (col == std::numeric_limits<int>::max()) break;
    // Among candidate rows prefer the one whose leading coefficient has the
    // lowest degree (a constant lead keeps the cross-multiplied updates from
    // raising degrees at all), then the sparsest, then the lowest tag. The
    // reduced echelon form is unique, so the choice only affects cost.
    size_t best = pending_.size();
    int best_deg = 0;
    for (size_t i = 0; i < pending_.size(); ++i) {
      if (used[i] || pending_[i].empty()) continue;
      if (pending_[i].begin()->first != col) continue;
      int deg = pending_[i].begin()->second.num().degree();
      if (best == pending_.size() || deg < best_deg ||
          (deg == best_deg &&
           (pending_[i].size() < pending_[best].size() ||
            (pending_[i].size() == pending_[best].size() &&
             tags_[i] < tags_[best])))) {
        best = i;
        best_deg = deg;
      }
    }
    used[best] = true;
    SparseRow piv = std::move(pending_[best]);
    // Forward elimination only: already-selected pivot rows are cleaned up
    // by the back-substitution pass below, once they are fully reduced and
    // therefore small.
    for (size_t i = 0; i < pending_.size(); ++i)
      if (!used[i]) combine(pending_[i], piv, col);
    pivots_.push_back(col);
    rows_.push_back(std::move(piv));
  }
  for (size_t i = 0; i < pending_.size(); ++i)
    if (!used[i]) ++identities_;  // rows that vanished entirely
  pending_.clear();
  tags_.clear();
  // Sort rows by pivot column.
  std::vector<size_t> idx(rows_.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return pivots_[a] < pivots_[b]; });
  std::vector<SparseRow> rs;
  std::vector<int> ps;
  rs.reserve(rows_.size());
  ps.reserve(rows_.size());
  for (size_t i : idx) {
    rs.push_back(std::move(rows_[i]));
    ps.push_back(pivots_[i]);
  }
  rows_ = std::move(rs);
  pivots_ = std::move(ps);
  // Back-substitution, bottom up: once row j > i is fully reduced it holds
  // only its own pivot column plus free columns, so a single ascending pass
  // over the later pivots clears row i completely.
  for (size_t i = rows_.size(); i-- > 0;)
    for (size_t j = i + 1; j < rows_.size(); ++j)
      combine(rows_[i], rows_[j], pivots_[j]);
  // Canonical form: unit pivot coefficients.
  for (auto& r : rows_) {
    const RatFunc lead = r.begin()->second;
    if (lead.is_one()) continue;
    RatFunc inv = lead.inv();
    for (auto& [c, v] : r) v = v * inv;
  }
}

SparseRow SparseRREF::normal_form(SparseRow v) const {
  if (!reduced_) throw std::logic_error("normal_form before reduce");
  for (size_t i = 0; i < rows_.size(); ++i) {
    auto it = v.find(pivots_[i]);
    if (it == v.end()) continue;
    RatFunc factor = it->second;
    v.erase(it);
    for (const auto& [c, w] : rows_[i]) {
      if (c == pivots_[i]) continue;
      auto jt = v.find(c);
      if (jt == v.end()) {
        RatFunc nv = -(factor * w);
        if (!nv.is_zero()) v.emplace(c, std::move(nv));
      } else {
        jt->second -= factor * w;
        if (jt->second.is_zero()) v.erase(jt);
      }
    }
  }
  return v;
}

Rational mat_det(QMatrix a) {
  size_t n = a.size();
  Rational det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r)
      if (sgn(a[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    Rational inv = Rational(1) / a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c] * inv;
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

std::optional<QMatrix> mat_inverse(QMatrix a) {
  size_t n = a.size();
  QMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r)
      if (sgn(a[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    Rational d = Rational(1) / a[c][c];
    for (size_t k = 0; k < n; ++k) {
      a[c][k] *= d;
      inv[c][k] *= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace jetcc

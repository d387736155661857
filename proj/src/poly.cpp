#include "jetcc/poly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace jetcc {

int mono_cmp(const Mono& a, const Mono& b) {
  unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Mono(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  Poly p(nvars);
  Mono m(nvars, 0);
  m[i] = 1;
  p.add_term(m, Rational(1));
  return p;
}

Poly Poly::monomial(int nvars, const Mono& m, const Rational& c) {
  Poly p(nvars);
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && degree() == 0);
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  const Mono& m = terms_.begin()->first;  // leading term has max total degree
  return static_cast<int>(std::accumulate(m.begin(), m.end(), 0u));
}

int Poly::degree_in(int v) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[v]));
  return terms_.empty() ? -1 : d;
}

const Mono& Poly::leading_mono() const {
  if (terms_.empty()) throw std::logic_error("leading_mono of zero");
  return terms_.begin()->first;
}

const Rational& Poly::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading_coeff of zero");
  return terms_.begin()->second;
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Mono(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Mono& m, const Rational& c) {
  if (rat_is_zero(c)) return;
  if (static_cast<int>(m.size()) != nvars_)
    throw std::logic_error("monomial arity mismatch");
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (rat_is_zero(it->second)) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ != o.nvars_) throw std::logic_error("poly arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ != o.nvars_) throw std::logic_error("poly arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (nvars_ != o.nvars_) throw std::logic_error("poly arity mismatch");
  Poly r(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Mono m(nvars_);
      for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r(nvars_);
  if (rat_is_zero(c)) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly base = *this;
  Poly acc = Poly::constant(nvars_, Rational(1));
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

Poly Poly::partial(int v) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[v] == 0) continue;
    Mono d = m;
    d[v] -= 1;
    r.add_term(d, c * Rational(static_cast<long>(m[v])));
  }
  return r;
}

Poly Poly::coeff_in(int v, int k) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (static_cast<int>(m[v]) != k) continue;
    Mono d = m;
    d[v] = 0;
    r.add_term(d, c);
  }
  return r;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

Poly Poly::subst_linear(const std::vector<std::vector<Rational>>& m) const {
  std::vector<Poly> lin;
  lin.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    Poly li(nvars_);
    for (int j = 0; j < nvars_; ++j)
      li += Poly::variable(nvars_, j) * m[i][j];
    lin.push_back(li);
  }
  Poly r(nvars_);
  for (const auto& [mono, c] : terms_) {
    Poly t = Poly::constant(nvars_, c);
    for (int i = 0; i < nvars_; ++i)
      if (mono[i] > 0) t = t * lin[i].pow(mono[i]);
    r += t;
  }
  return r;
}

Poly Poly::div_exact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::logic_error("division by zero polynomial");
  Poly r = f;
  Poly q(f.nvars_);
  const Mono& gl = g.leading_mono();
  while (!r.is_zero()) {
    const Mono& rl = r.leading_mono();
    Mono t(f.nvars_);
    for (int i = 0; i < f.nvars_; ++i) {
      if (rl[i] < gl[i]) throw std::logic_error("inexact polynomial division");
      t[i] = rl[i] - gl[i];
    }
    Poly step = Poly::monomial(f.nvars_, t, r.leading_coeff() / g.leading_coeff());
    q += step;
    r -= step * g;
  }
  return q;
}

namespace {

// Pseudo-remainder of f by g with respect to variable v.
Poly pseudo_rem(Poly f, const Poly& g, int v) {
  int dg = g.degree_in(v);
  Poly lcg = g.coeff_in(v, dg);
  int nvars = f.nvars();
  while (!f.is_zero() && f.degree_in(v) >= dg) {
    int df = f.degree_in(v);
    Poly lcf = f.coeff_in(v, df);
    Mono shift(nvars, 0);
    shift[v] = static_cast<unsigned>(df - dg);
    f = f * lcg - g * (lcf * Poly::monomial(nvars, shift, Rational(1)));
  }
  return f;
}

int lowest_var(const Poly& f, const Poly& g) {
  int nvars = f.nvars();
  for (int v = 0; v < nvars; ++v)
    if (f.degree_in(v) > 0 || g.degree_in(v) > 0) return v;
  return -1;
}

// Rescales f by a positive rational so its coefficients become coprime
// integers. Polynomial gcds are only defined up to a constant factor, but
// the remainder sequence below must not carry unreduced rational scales: a
// pseudo-remainder multiplies through by leading coefficients, so any scale
// left in place compounds exponentially across steps.
Poly int_primitive(const Poly& f) {
  if (f.is_zero()) return f;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : f.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  return f * scale;
}

// Content of f with respect to x_v: gcd of its x_v-coefficients.
Poly content_in(const Poly& f, int v) {
  Poly c(f.nvars());
  for (int k = 0; k <= f.degree_in(v); ++k) {
    Poly ck = f.coeff_in(v, k);
    if (!ck.is_zero()) c = c.is_zero() ? ck : Poly::gcd(c, ck);
  }
  return c;
}

}  // namespace

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading_coeff());
}

Poly Poly::gcd(const Poly& f, const Poly& g) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.is_constant() || g.is_constant())
    return Poly::constant(f.nvars(), Rational(1));
  int v = lowest_var(f, g);
  if (f.degree_in(v) == 0) return Poly::gcd(content_in(g, v), f);
  if (g.degree_in(v) == 0) return Poly::gcd(content_in(f, v), g);

  Poly cf = content_in(f, v);
  Poly cg = content_in(g, v);
  Poly a = int_primitive(div_exact(f, cf));
  Poly b = int_primitive(div_exact(g, cg));
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  // Primitive pseudo-remainder sequence in x_v.
  while (true) {
    Poly r = pseudo_rem(a, b, v);
    if (r.is_zero()) break;
    r = int_primitive(r);
    Poly cr = content_in(r, v);
    r = int_primitive(div_exact(r, cr));
    a = b;
    b = r;
    if (b.degree_in(v) == 0) {
      b = Poly::constant(f.nvars(), Rational(1));
      break;
    }
  }
  return (Poly::gcd(cf, cg) * b).monic();
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (sgn(a) < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    bool has_vars = false;
    for (int i = 0; i < nvars_; ++i)
      if (m[i] > 0) has_vars = true;
    if (!has_vars) {
      out << rat_to_string(a);
      continue;
    }
    bool printed = false;
    if (a != Rational(1)) {
      out << rat_to_string(a);
      printed = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (printed) out << "*";
      out << names[i];
      if (m[i] > 1) out << "^" << m[i];
      printed = true;
    }
  }
  return out.str();
}

std::string Poly::to_string() const {
  std::vector<std::string> names;
  names.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) names.push_back("x" + std::to_string(i + 1));
  return to_string(names);
}

}  // namespace jetcc

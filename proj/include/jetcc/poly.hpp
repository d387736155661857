#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetcc/rational.hpp"

namespace jetcc {

// Exponent vector; size equals the ambient variable count.
using Mono = std::vector<unsigned>;

// Graded lexicographic order with x1 > x2 > ... > xn.
// Returns -1, 0, +1.
int mono_cmp(const Mono& a, const Mono& b);

struct MonoGreater {
  bool operator()(const Mono& a, const Mono& b) const {
    return mono_cmp(a, b) > 0;
  }
};

// Sparse multivariate polynomial over Q with a fixed number of variables.
// Terms are stored leading-first (graded lex descending); zero coefficients
// are never stored.
class Poly {
 public:
  using TermMap = std::map<Mono, Rational, MonoGreater>;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int i);  // 0-based index
  static Poly monomial(int nvars, const Mono& m, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(int v) const;
  const TermMap& terms() const { return terms_; }

  const Mono& leading_mono() const;
  const Rational& leading_coeff() const;
  Rational constant_term() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  bool operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(unsigned e) const;
  Poly partial(int v) const;

  // Coefficient of x_v^k, viewed as a polynomial with x_v-degree zero.
  Poly coeff_in(int v, int k) const;

  Rational eval(const std::vector<Rational>& point) const;

  // Substitutes x_i = sum_j m[i][j] * x_j (new variables, same count).
  Poly subst_linear(const std::vector<std::vector<Rational>>& m) const;

  // Exact division; throws std::logic_error if the division is not exact.
  static Poly div_exact(const Poly& f, const Poly& g);

  // GCD over Q[x1..xn], normalized monic (leading coefficient 1).
  static Poly gcd(const Poly& f, const Poly& g);

  // Divides by the leading coefficient.
  Poly monic() const;

  std::string to_string(const std::vector<std::string>& names) const;
  std::string to_string() const;

  void add_term(const Mono& m, const Rational& c);

 private:
  int nvars_;
  TermMap terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

}  // namespace jetcc

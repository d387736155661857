#pragma once

#include <string>
#include <vector>

#include "jetcc/poly.hpp"

namespace jetcc {

// Element of Q(x1..xn), kept in canonical form: gcd(num, den) = 1 and den
// monic under graded lex. The zero element is 0/1.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(0) {}
  explicit RatFunc(int nvars)
      : num_(nvars), den_(Poly::constant(nvars, Rational(1))) {}
  RatFunc(Poly num, Poly den);

  static RatFunc constant(int nvars, const Rational& c) {
    return RatFunc(Poly::constant(nvars, c),
                   Poly::constant(nvars, Rational(1)));
  }
  static RatFunc from_poly(Poly p) {
    int n = p.nvars();
    return RatFunc(std::move(p), Poly::constant(n, Rational(1)));
  }
  static RatFunc variable(int nvars, int i) {
    return from_poly(Poly::variable(nvars, i));
  }

  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  bool operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc inv() const;
  // d/dx_v by the quotient rule.
  RatFunc partial(int v) const;
  // x_i = sum_j m[i][j] x_j in both numerator and denominator.
  RatFunc subst_linear(const std::vector<std::vector<Rational>>& m) const;

  std::string to_string(const std::vector<std::string>& names) const;
  std::string to_string() const;

 private:
  void normalize();
  Poly num_, den_;
};

}  // namespace jetcc

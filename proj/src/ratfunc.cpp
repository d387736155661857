#include "jetcc/ratfunc.hpp"

#include <stdexcept>

namespace jetcc {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::logic_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.nvars(), Rational(1));
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (!(g.is_constant() && g.constant_term() == Rational(1))) {
    num_ = Poly::div_exact(num_, g);
    den_ = Poly::div_exact(den_, g);
  }
  Rational lc = den_.leading_coeff();
  if (lc != Rational(1)) {
    Rational inv_lc = Rational(1) / lc;
    num_ = num_ * inv_lc;
    den_ = den_ * inv_lc;
  }
}

bool RatFunc::is_one() const {
  return num_.is_constant() && num_.constant_term() == Rational(1) &&
         den_.is_constant() && den_.constant_term() == Rational(1);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw std::logic_error("division by zero rational function");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw std::logic_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::partial(int v) const {
  return RatFunc(num_.partial(v) * den_ - num_ * den_.partial(v), den_ * den_);
}

RatFunc RatFunc::subst_linear(const std::vector<std::vector<Rational>>& m) const {
  return RatFunc(num_.subst_linear(m), den_.subst_linear(m));
}

std::string RatFunc::to_string(const std::vector<std::string>& names) const {
  if (den_.is_constant() && den_.constant_term() == Rational(1))
    return num_.to_string(names);
  std::string n = num_.to_string(names);
  std::string d = den_.to_string(names);
  bool n_paren = num_.terms().size() > 1;
  bool d_paren = den_.terms().size() > 1;
  std::string out = n_paren ? "(" + n + ")" : n;
  out += "/";
  out += d_paren ? "(" + d + ")" : d;
  return out;
}

std::string RatFunc::to_string() const {
  std::vector<std::string> names;
  for (int i = 0; i < nvars(); ++i) names.push_back("x" + std::to_string(i + 1));
  return to_string(names);
}

}  // namespace jetcc

#include "jetcc/parse.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace jetcc {

namespace {

enum class Tok {
  kIdent,
  kInt,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kCaret,
  kLParen,
  kRParen,
  kColon,
  kEquals,
  kTerm,  // ';' or newline
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;     // identifier base name or integer literal
  std::string suffix;   // jet digits after '_', empty when absent
  bool has_suffix = false;
  int line = 1;
  int col = 1;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string t, int l, int c) {
    Token tok;
    tok.kind = k;
    tok.text = std::move(t);
    tok.line = l;
    tok.col = c;
    out.push_back(std::move(tok));
  };
  while (i < text.size()) {
    char ch = text[i];
    int l = line, c = col;
    auto advance = [&](size_t k) {
      for (size_t j = 0; j < k; ++j) {
        if (text[i + j] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += k;
    };
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (ch == '\n') {
      push(Tok::kTerm, "\n", l, c);
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      push(Tok::kInt, text.substr(i, j - i), l, c);
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < text.size() &&
             std::isalnum(static_cast<unsigned char>(text[j])))
        ++j;
      Token tok;
      tok.kind = Tok::kIdent;
      tok.text = text.substr(i, j - i);
      tok.line = l;
      tok.col = c;
      if (j < text.size() && text[j] == '_') {
        size_t k = j + 1;
        while (k < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[k])))
          ++k;
        if (k == j + 1)
          throw ParseError("expected jet digits after '_'", l,
                           c + static_cast<int>(j - i));
        tok.suffix = text.substr(j + 1, k - j - 1);
        tok.has_suffix = true;
        j = k;
      }
      out.push_back(tok);
      advance(j - i);
      continue;
    }
    switch (ch) {
      case '+': push(Tok::kPlus, "+", l, c); break;
      case '-': push(Tok::kMinus, "-", l, c); break;
      case '*': push(Tok::kStar, "*", l, c); break;
      case '/': push(Tok::kSlash, "/", l, c); break;
      case '^': push(Tok::kCaret, "^", l, c); break;
      case '(': push(Tok::kLParen, "(", l, c); break;
      case ')': push(Tok::kRParen, ")", l, c); break;
      case ':': push(Tok::kColon, ":", l, c); break;
      case '=': push(Tok::kEquals, "=", l, c); break;
      case ';': push(Tok::kTerm, ";", l, c); break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", l,
                         c);
    }
    advance(1);
  }
  Token end;
  end.kind = Tok::kEnd;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  SystemFile run() {
    while (!at(Tok::kEnd)) {
      if (at(Tok::kTerm)) {
        next();
        continue;
      }
      statement();
    }
    finalize();
    return std::move(file_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }
  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) fail("expected " + what);
    return next();
  }
  void end_statement() {
    if (at(Tok::kEnd)) return;
    expect(Tok::kTerm, "';' or end of line");
  }

  int nvars() const { return static_cast<int>(file_.system.vars.size()); }

  bool known_name(const std::string& s) const {
    return var_index_.count(s) || unknown_index_.count(s) ||
           source_index_.count(s);
  }

  void statement() {
    const Token& kw = peek();
    if (kw.kind != Tok::kIdent) fail("expected a statement keyword");
    if (kw.text == "vars") {
      next();
      declare(file_.system.vars, var_index_, "variable");
    } else if (kw.text == "unknown" || kw.text == "unknowns") {
      next();
      declare(file_.system.unknowns, unknown_index_, "unknown");
    } else if (kw.text == "option") {
      next();
      const Token& name = expect(Tok::kIdent, "option name");
      bool neg = false;
      if (at(Tok::kMinus)) {
        next();
        neg = true;
      }
      const Token& val = expect(Tok::kInt, "option value");
      long v = std::stol(val.text);
      file_.options[name.text] = neg ? -v : v;
      end_statement();
    } else if (kw.text == "eq") {
      next();
      equation();
    } else {
      fail("expected 'vars', 'unknown', 'option' or 'eq'");
    }
  }

  void declare(std::vector<std::string>& into,
               std::map<std::string, int>& index, const std::string& what) {
    if (have_equation_)
      fail(what + " declaration after the first equation");
    int count = 0;
    while (at(Tok::kIdent)) {
      const Token& t = next();
      if (t.has_suffix)
        throw ParseError("'_' is reserved for jet suffixes", t.line, t.col);
      if (known_name(t.text))
        throw ParseError("duplicate name '" + t.text + "'", t.line, t.col);
      index[t.text] = static_cast<int>(into.size());
      into.push_back(t.text);
      ++count;
    }
    if (count == 0) fail("expected at least one " + what + " name");
    end_statement();
  }

  MultiIndex suffix_to_mu(const Token& t) const {
    MultiIndex mu(nvars(), 0);
    if (!t.has_suffix || t.suffix == "0") return mu;
    for (char d : t.suffix) {
      int v = d - '0';
      if (v < 1 || v > nvars())
        throw ParseError("jet index " + std::string(1, d) +
                             " out of range 1.." + std::to_string(nvars()),
                         t.line, t.col);
      mu[v - 1] += 1;
    }
    return mu;
  }

  // A multiplicative unit: integer, base variable, parenthesized coefficient
  // expression, or (when allowed) a jet variable; optional '^' power.
  struct Unit {
    bool is_jet = false;
    Jet jet;
    RatFunc value;
  };

  Unit parse_unit(bool allow_jet) {
    Unit u;
    if (at(Tok::kInt)) {
      const Token& t = next();
      u.value = RatFunc::constant(nvars(), rat_from_string(t.text));
    } else if (at(Tok::kLParen)) {
      next();
      u.value = parse_coeff_sum();
      expect(Tok::kRParen, "')'");
    } else if (at(Tok::kIdent)) {
      const Token& t = next();
      auto vi = var_index_.find(t.text);
      if (vi != var_index_.end()) {
        if (t.has_suffix)
          throw ParseError("variable '" + t.text + "' cannot carry a jet suffix",
                           t.line, t.col);
        u.value = RatFunc::variable(nvars(), vi->second);
      } else {
        auto ui = unknown_index_.find(t.text);
        if (ui == unknown_index_.end())
          throw ParseError("unknown identifier '" + t.text + "'", t.line,
                           t.col);
        if (!allow_jet)
          throw ParseError("jet variable '" + t.text +
                               "' is not allowed inside a coefficient",
                           t.line, t.col);
        u.is_jet = true;
        u.jet.comp = ui->second;
        u.jet.mu = suffix_to_mu(t);
      }
    } else {
      fail("expected a coefficient or jet variable");
    }
    if (at(Tok::kCaret)) {
      const Token& caret = next();
      if (u.is_jet)
        throw ParseError("jet variables cannot be raised to a power",
                         caret.line, caret.col);
      const Token& e = expect(Tok::kInt, "non-negative integer exponent");
      long exp = std::stol(e.text);
      RatFunc base = u.value;
      u.value = RatFunc::constant(nvars(), Rational(1));
      for (long k = 0; k < exp; ++k) u.value = u.value * base;
    }
    return u;
  }

  // coeff-sum: full +,-,*,/,^ expression over base variables and integers.
  RatFunc parse_coeff_sum() {
    RatFunc acc = RatFunc::constant(nvars(), Rational(0));
    int sign = 1;
    if (at(Tok::kMinus)) {
      next();
      sign = -1;
    } else if (at(Tok::kPlus)) {
      next();
    }
    for (;;) {
      RatFunc term = parse_coeff_product();
      if (sign < 0)
        term = RatFunc::constant(nvars(), Rational(-1)) * term;
      acc = acc + term;
      if (at(Tok::kPlus)) {
        next();
        sign = 1;
      } else if (at(Tok::kMinus)) {
        next();
        sign = -1;
      } else {
        break;
      }
    }
    return acc;
  }

  RatFunc parse_coeff_product() {
    RatFunc acc = parse_unit(false).value;
    while (at(Tok::kStar) || at(Tok::kSlash)) {
      bool div = at(Tok::kSlash);
      const Token& op = next();
      RatFunc rhs = parse_unit(false).value;
      if (div) {
        if (rhs.is_zero())
          throw ParseError("division by zero", op.line, op.col);
        acc = acc / rhs;
      } else {
        acc = acc * rhs;
      }
    }
    return acc;
  }

  // One signed term of the equation left-hand side.
  void parse_term(int sign, LinForm& lhs, RatFunc& constant) {
    RatFunc coeff = RatFunc::constant(nvars(), Rational(sign));
    std::optional<Jet> jet;
    Unit first = parse_unit(true);
    if (first.is_jet)
      jet = first.jet;
    else
      coeff = coeff * first.value;
    while (at(Tok::kStar) || at(Tok::kSlash)) {
      bool div = at(Tok::kSlash);
      const Token& op = next();
      if (jet)
        throw ParseError("the jet variable must end its term", op.line,
                         op.col);
      Unit u = parse_unit(!div);
      if (u.is_jet) {
        jet = u.jet;
      } else if (div) {
        if (u.value.is_zero())
          throw ParseError("division by zero", op.line, op.col);
        coeff = coeff / u.value;
      } else {
        coeff = coeff * u.value;
      }
    }
    if (jet) {
      auto it = lhs.find(*jet);
      if (it == lhs.end()) {
        if (!coeff.is_zero()) lhs.emplace(*jet, coeff);
      } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) lhs.erase(it);
      }
    } else {
      constant = constant + coeff;
    }
  }

  void equation() {
    have_equation_ = true;
    eq_pos_.emplace_back(peek().line, peek().col);
    std::string label;
    if (at(Tok::kIdent)) {
      const Token& t = next();
      if (t.has_suffix)
        throw ParseError("equation label cannot carry a jet suffix", t.line,
                         t.col);
      label = t.text;
    }
    expect(Tok::kColon, "':'");
    if (file_.system.vars.empty()) fail("no variables declared before 'eq'");
    if (file_.system.unknowns.empty())
      fail("no unknowns declared before 'eq'");

    Equation e;
    RatFunc constant = RatFunc::constant(nvars(), Rational(0));
    int sign = 1;
    if (at(Tok::kMinus)) {
      next();
      sign = -1;
    } else if (at(Tok::kPlus)) {
      next();
    }
    for (;;) {
      parse_term(sign, e.lhs, constant);
      if (at(Tok::kPlus)) {
        next();
        sign = 1;
      } else if (at(Tok::kMinus)) {
        next();
        sign = -1;
      } else {
        break;
      }
    }
    if (!constant.is_zero())
      fail("equations must be linear in the jets (nonzero constant term)");

    const Token& eq = expect(Tok::kEquals, "'='");
    (void)eq;
    if (at(Tok::kInt) && peek().text == "0") {
      next();  // homogeneous right-hand side
    } else {
      const Token& s = expect(Tok::kIdent, "source name or 0");
      if (s.has_suffix)
        throw ParseError("source name cannot carry a jet suffix", s.line,
                         s.col);
      if (var_index_.count(s.text) || unknown_index_.count(s.text))
        throw ParseError("source name '" + s.text +
                             "' collides with a declared name",
                         s.line, s.col);
      auto it = source_index_.find(s.text);
      int idx;
      if (it == source_index_.end()) {
        idx = static_cast<int>(file_.system.sources.size());
        source_index_[s.text] = idx;
        file_.system.sources.push_back(s.text);
      } else {
        idx = it->second;
      }
      Jet tracker;
      tracker.comp = idx;
      tracker.mu = MultiIndex(nvars(), 0);
      e.rhs[tracker] = RatFunc::constant(nvars(), Rational(1));
    }
    e.label = label;
    file_.labels.push_back(label);
    file_.system.eqs.push_back(std::move(e));
    end_statement();
  }

  void finalize() {
    if (file_.system.vars.empty())
      throw ParseError("no 'vars' declaration", 1, 1);
    if (file_.system.unknowns.empty())
      throw ParseError("no 'unknown' declaration", 1, 1);
    for (size_t i = 0; i < file_.labels.size(); ++i)
      if (file_.labels[i].empty()) {
        file_.labels[i] = "e" + std::to_string(i + 1);
        file_.system.eqs[i].label = file_.labels[i];
      }
    std::map<std::string, int> seen;
    for (size_t i = 0; i < file_.labels.size(); ++i) {
      if (seen.count(file_.labels[i]))
        throw ParseError("duplicate equation label '" + file_.labels[i] + "'",
                         eq_pos_[i].first, eq_pos_[i].second);
      seen[file_.labels[i]] = static_cast<int>(i);
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<std::pair<int, int>> eq_pos_;
  SystemFile file_;
  std::map<std::string, int> var_index_;
  std::map<std::string, int> unknown_index_;
  std::map<std::string, int> source_index_;
  bool have_equation_ = false;
};

void append_term(std::string& out, bool& first, const RatFunc& coeff,
                 const std::string& jet_text,
                 const std::vector<std::string>& names) {
  int nvars = static_cast<int>(names.size());
  RatFunc minus_one = RatFunc::constant(nvars, Rational(-1));
  RatFunc one = RatFunc::constant(nvars, Rational(1));
  std::string body;
  bool negative = false;
  if ((coeff + minus_one).is_zero()) {
    body = jet_text;
  } else if ((coeff + one).is_zero() && !jet_text.empty()) {
    body = jet_text;
    negative = true;
  } else {
    // A sum with a unit denominator must be parenthesized next to '*', or it
    // would re-parse as separate terms. Pull the sign out for readability.
    bool sum = coeff.den().is_constant() && coeff.num().terms().size() > 1;
    RatFunc c_norm = coeff;
    if (sum && sgn(coeff.num().leading_coeff()) < 0) {
      negative = true;
      c_norm = -coeff;
    }
    std::string c = c_norm.to_string(names);
    if (sum) {
      c = "(" + c + ")";
    } else if (!c.empty() && c[0] == '-' &&
               c.find_first_of("+-", 1) == std::string::npos) {
      negative = true;
      c = c.substr(1);
    }
    body = jet_text.empty() ? c : c + "*" + jet_text;
  }
  if (first) {
    out += negative ? "-" + body : body;
    first = false;
  } else {
    out += negative ? " - " + body : " + " + body;
  }
}

}  // namespace

SystemFile parse_system(const std::string& text) {
  return Parser(text).run();
}

std::string form_to_string(const LinForm& f,
                           const std::vector<std::string>& comp_names,
                           const std::vector<std::string>& var_names) {
  if (f.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [jet, coeff] : f)
    append_term(out, first, coeff, jet_name(jet, comp_names), var_names);
  return out;
}

std::string emit_system(const SystemFile& f) {
  const PDESystem& sys = f.system;
  std::ostringstream out;
  out << "vars";
  for (const auto& v : sys.vars) out << " " << v;
  out << "\n";
  out << "unknown";
  for (const auto& u : sys.unknowns) out << " " << u;
  out << "\n";
  for (const auto& [k, v] : f.options) out << "option " << k << " " << v << "\n";
  for (size_t i = 0; i < sys.eqs.size(); ++i) {
    const Equation& e = sys.eqs[i];
    out << "eq " << f.labels[i] << ":";
    if (e.lhs.empty()) {
      out << " 0";
    } else {
      std::string lhs;
      bool first = true;
      for (const auto& [jet, coeff] : e.lhs)
        append_term(lhs, first, coeff, jet_name(jet, sys.unknowns), sys.vars);
      out << " " << lhs;
    }
    out << " = ";
    if (e.rhs.empty()) {
      out << "0";
    } else {
      out << sys.sources[e.rhs.begin()->first.comp];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace jetcc

#pragma once

#include <map>
#include <string>

#include "jetcc/errors.hpp"
#include "jetcc/system.hpp"

namespace jetcc {

// A parsed input file: the system plus any file-level options.
//
// Grammar (statements end with ';' or newline, '#' comments to end of line):
//   file     := stmt*
//   stmt     := vars_decl | unknown_decl | option | eq
//   vars_decl    := "vars" name+
//   unknown_decl := ("unknown" | "unknowns") name+
//   option       := "option" name integer
//   eq       := "eq" [label] ":" expr "=" (source-name | "0")
//   expr     := ['-'] term (('+'|'-') term)*
//   term     := [coeff '*'] jetvar | coeff
//   coeff    := product/quotient chain of factors; factor := integer |
//               base-variable | '(' coeff-sum ')', each with optional
//               '^' non-negative integer
//   jetvar   := unknown-name ['_' digits]   (digits in 1..n, any order;
//               '_0' and a missing suffix both mean the order-0 jet)
struct SystemFile {
  PDESystem system;
  std::map<std::string, long> options;
  std::vector<std::string> labels;  // one per equation, defaulted "e<k>"
};

SystemFile parse_system(const std::string& text);

// Canonical one-line-per-statement rendering; parse(emit(parse(t))) and
// parse(t) agree for every valid t.
std::string emit_system(const SystemFile& f);

// Renders a linear form with the same conventions as emit_system
// (highest jet first, unit coefficients dropped, "0" when empty).
std::string form_to_string(const LinForm& f,
                           const std::vector<std::string>& comp_names,
                           const std::vector<std::string>& var_names);

}  // namespace jetcc

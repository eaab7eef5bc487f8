#pragma once

#include <string>

#include "folim/formula.hpp"

namespace folim {

/// Parses formula text against a signature. Grammar:
///   formula := quant | iff ;  quant := ("exists"|"forall") var "." formula ;
///   iff := imp { "<->" imp } ;  imp := or { "->" or } ;  or := and { "|" and } ;
///   and := unary { "&" unary } ;  unary := "!" unary | "(" formula ")" | atom ;
///   atom := name "(" var {"," var} ")" | var ("="|"!=") var | "true" | "false" ;
///   var := "x" digits ; name := letter {letter|digit} .
/// Precedence ! > & > | > -> > <-> ; a quantifier body extends maximally right.
/// Throws ParseError with line/column on syntax errors, unknown relations and
/// arity mismatches.
Formula parseFormula(const std::string& text, const Signature& sig);

} // namespace folim

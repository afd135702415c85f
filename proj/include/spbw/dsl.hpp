#pragma once

// Text form of presentations. A document is a sequence of `ring` statements
// and `algebra` blocks; the last block is the result, and earlier blocks can
// serve as nested coefficient algebras. emit_definition produces the
// canonical layout, and emit(parse(emit(a))) == emit(a) byte for byte.

#include <string>

#include "spbw/catalog.hpp"

namespace spbw {

struct SourcePos {
  int line = 1;
  int col = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourcePos at, const std::string& msg);
  SourcePos at;
};

// A flat quasi-commutative block with verified inverses and localized
// variables also carries its quantum form, mirroring catalog instantiation.
BuiltAlgebra parse_definition(const std::string& text);

std::string emit_definition(const BuiltAlgebra& a);

// expression over a built presentation, normalized through the engine;
// identifiers resolve to variables first, then to tower ring generators
SkewPoly parse_expr(const std::string& text, const PresPtr& p);

}  // namespace spbw

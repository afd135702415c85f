#pragma once

// Named constructors for the worked families of skew PBW extensions: classical
// operator algebras (Weyl, shift, difference, q-dilation), quantum planes and
// tori, enveloping algebras of low-dimensional Lie algebras, and the quantized
// Weyl-algebra towers. Every entry built with admissible parameters passes
// validate() and a confluence sweep.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spbw/presentation.hpp"
#include "spbw/quantum.hpp"

namespace spbw {

// parameter values arrive as strings (CLI-friendly); integers parse with
// strict range checks, scalars accept a rational literal like -3/2 or stay
// symbolic (a generator of the coefficient field) when omitted
using ParamMap = std::map<std::string, std::string>;

struct ParamSpec {
  enum class Kind { integer, scalar, choice };
  std::string name;
  Kind kind = Kind::integer;
  std::string fallback;  // printed default; scalars default to "symbolic"
  std::string constraint;
};

struct BuiltAlgebra {
  PresPtr pres;
  // engaged when the entry localizes a variable prefix
  std::optional<QuantumPresentation> quantum;
};

struct CatalogEntry {
  std::string key;
  std::string family;  // one-line description of the algebra
  std::vector<ParamSpec> params;
  std::vector<std::string> notes;
  std::function<BuiltAlgebra(const ParamMap&)> build;
};

// alphabetical by key, immutable
const std::vector<CatalogEntry>& list_catalog();
const CatalogEntry& catalog_entry(const std::string& key);  // throws on unknown key
BuiltAlgebra instantiate(const std::string& key, const ParamMap& params = {});

// Structure constants for a finite-dimensional Lie algebra with an affine
// bracket table: bracket[{i,j}] for i<j is (c_0, c_1, ..., c_n) meaning
// [x_i, x_j] = c_0 + sum_k c_k x_k. Missing pairs commute. The constructor
// checks the Jacobi identity (and [x,1] = 0 degenerations) before building
// the enveloping-algebra presentation.
struct LieTable {
  size_t n = 0;
  std::map<std::pair<size_t, size_t>, std::vector<mpq_class>> bracket;
};

PresPtr build_enveloping(const std::string& name, const std::vector<std::string>& vars,
                         const LieTable& table);

}  // namespace spbw

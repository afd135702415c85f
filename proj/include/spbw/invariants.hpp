#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spbw/presentation.hpp"
#include "spbw/quantum.hpp"

namespace spbw {

// an integer quantity that may be infinite or simply not declared
struct Extent {
  enum class Kind { finite, infinite, unknown };
  Kind kind = Kind::unknown;
  int64_t value = 0;

  static Extent finite(int64_t v) { return {Kind::finite, v}; }
  static Extent infinite() { return {Kind::infinite, 0}; }
  static Extent unknown() { return {}; }
  bool is_finite() const { return kind == Kind::finite; }
  bool is_unknown() const { return kind == Kind::unknown; }
  friend bool operator==(const Extent&, const Extent&) = default;
};

std::string to_string(const Extent& e);

// Declared properties of the coefficient ring. Nothing here is verified
// against an actual ring; the calculators consume the declarations as-is.
struct RingFacts {
  Extent lgld;   // left global dimension
  Extent lkdim;  // left Krull dimension
  bool is_noetherian = false;
  bool is_domain = false;
  bool is_semisimple = false;
  bool is_field = false;
  bool is_regular = false;
  bool is_psf = false;            // f.g. projectives are stably free
  bool k_trivial_action = false;  // automorphisms act trivially on K-theory
};

// Implication closure: field => semisimple/domain/noetherian/regular/psf and
// both dimensions 0; semisimple => noetherian and lgld 0. Declared values
// that contradict the closure raise Error.
RingFacts normalize_facts(const RingFacts& f);

struct DimReport {
  size_t nvars = 0;
  Extent lgld_lo, lgld_hi;
  Extent lkdim_lo, lkdim_hi;
  Extent udim;
  bool lgld_exact = false;
  bool lkdim_exact = false;
  // false when the backing theorem's hypotheses are not declared,
  // in which case the matching lo/hi pair carries no information
  bool lkdim_applicable = true;
  std::vector<std::string> notes;

  std::string to_string() const;
};

DimReport dim_report(const PresPtr& p, const RingFacts& facts);
DimReport dim_report(const QuantumPresentation& qp, const RingFacts& facts);

// formal direct sum  ⊕_j [K_j(R)]^{m_j}; never identified with a concrete group
struct KExpr {
  std::map<int64_t, int64_t> multiplicities;  // j -> m_j, entries strictly positive

  std::string to_string() const;
  friend bool operator==(const KExpr&, const KExpr&) = default;
};

// Laurent splitting K_j(B[x^{±1}]) = K_j(B) ⊕ K_{j-1}(B) applied to each
// formal summand; K_{-1} is zero. Requires facts.k_trivial_action.
KExpr k_laurent_step(const KExpr& k, const RingFacts& facts);

// K_m of the quantum polynomial ring with r inverted variables:
// multiplicity of K_j(R) is C(r, m-j). Non-inverted variables contribute
// nothing. Requires noetherian + regular + trivial K-action.
KExpr k_groups(const RingFacts& facts, int64_t m, int64_t r);

}  // namespace spbw

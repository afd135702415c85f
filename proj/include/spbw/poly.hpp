#pragma once

// Elements of the extension in the standard-monomial basis x^alpha, ordered
// by total degree with leftmost-larger tie-break. Exponents are signed only
// inside the localized prefix used by the quantum module; the degree of a
// signed monomial is the sum of absolute values.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spbw/presentation.hpp"

namespace spbw {

struct ExpVec {
  std::vector<int32_t> e;
  int32_t signed_prefix = 0;  // entries before this index may be negative

  bool operator==(const ExpVec& o) const { return e == o.e; }
  bool is_zero() const;
  bool operator<(const ExpVec& o) const { return e < o.e; }  // container key only
};

ExpVec ev_zero(size_t n, int32_t signed_prefix = 0);
ExpVec ev_unit(size_t n, size_t i, int32_t signed_prefix = 0);
int64_t ev_deg(const ExpVec& a);  // sum of absolute values
ExpVec ev_add(const ExpVec& a, const ExpVec& b);
ExpVec ev_sub(const ExpVec& a, const ExpVec& b);
ExpVec ev_neg(const ExpVec& a);

// total order: higher degree first, then the first differing entry decides
// (larger wins); throws on length or prefix mismatch
int cmp_mon(const ExpVec& a, const ExpVec& b);

struct MonGreater {
  bool operator()(const ExpVec& a, const ExpVec& b) const { return cmp_mon(a, b) > 0; }
};

class SkewPoly {
 public:
  using Terms = std::map<ExpVec, Coeff, MonGreater>;

  static SkewPoly zero(PresPtr p);
  static SkewPoly constant(PresPtr p, Coeff c);
  static SkewPoly from_ring(PresPtr p, const RingElem& r);
  static SkewPoly var(PresPtr p, size_t i);
  static SkewPoly monomial(PresPtr p, Coeff c, ExpVec a);
  // assumes the map is already normalized except possibly for zero coefficients
  static SkewPoly from_terms(PresPtr p, Terms t);

  const PresPtr& pres() const { return pres_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t nterms() const { return terms_.size(); }

  std::optional<int64_t> degree() const;          // nullopt = minus infinity
  std::pair<ExpVec, Coeff> leading() const;       // throws on zero
  bool homogeneous() const;                       // zero counts as homogeneous

  SkewPoly add(const SkewPoly& g) const;
  SkewPoly sub(const SkewPoly& g) const;
  SkewPoly neg() const;
  SkewPoly scale(const Coeff& c) const;           // left scale: c * f
  SkewPoly hom_part(int64_t d) const;             // degree-d slice

  bool eq(const SkewPoly& g) const;
  std::string to_string() const;

 private:
  SkewPoly(PresPtr p, Terms t) : pres_(std::move(p)), terms_(std::move(t)) {}
  PresPtr pres_;
  Terms terms_;
};

std::string mono_to_string(const Presentation& p, const ExpVec& a);

}  // namespace spbw

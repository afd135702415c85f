#pragma once

// Commutative coefficient tower with exact arithmetic and canonical forms:
//
//   QQ                      rationals
//   QQ(q1,...,qs)           rational-function field over QQ
//   B[t1,...,tm]            polynomials over a tower ring B
//   B[t1^+-,...,tm^+-]      Laurent polynomials over B
//
// Values are immutable handles; every operation returns a canonical form
// (reduced fractions with graded-lex-monic denominators, sorted term maps,
// no stored zeros), so structural equality is value equality.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spbw {

class Error : public std::runtime_error {
 public:
  explicit Error(std::string what) : std::runtime_error(std::move(what)) {}
};

enum class RingKind { rationals, rational_functions, poly, laurent };

class RingDesc;
using RingPtr = std::shared_ptr<const RingDesc>;

class RingDesc {
 public:
  static RingPtr rationals();
  static RingPtr rational_functions(std::vector<std::string> gens);
  static RingPtr poly(RingPtr base, std::vector<std::string> gens);
  static RingPtr laurent(RingPtr base, std::vector<std::string> gens);

  RingKind kind() const { return kind_; }
  const RingPtr& base() const { return base_; }  // null below poly/laurent
  const std::vector<std::string>& gens() const { return gens_; }

  bool is_field() const {
    return kind_ == RingKind::rationals || kind_ == RingKind::rational_functions;
  }
  // every tower ring is an integral domain
  std::vector<std::string> all_gens() const;  // innermost level first
  bool has_gen(const std::string& name) const;
  std::string to_string() const;  // e.g. QQ(q)[z^+-]

 private:
  RingDesc(RingKind k, RingPtr base, std::vector<std::string> gens);
  RingKind kind_;
  RingPtr base_;
  std::vector<std::string> gens_;
};

bool same_ring(const RingDesc& a, const RingDesc& b);
bool same_ring(const RingPtr& a, const RingPtr& b);

class RingElem {
 public:
  RingElem() = default;  // empty handle; using it throws

  static RingElem zero(RingPtr r);
  static RingElem one(RingPtr r);
  static RingElem from_int(RingPtr r, long v);
  static RingElem from_mpq(RingPtr r, const mpq_class& v);
  static RingElem gen(RingPtr r, const std::string& name);

  bool valid() const { return rep_ != nullptr; }
  const RingPtr& ring() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;
  std::optional<RingElem> try_invert() const;
  RingElem pow(long k) const;  // k < 0 requires a unit

  friend RingElem operator+(const RingElem& a, const RingElem& b);
  friend RingElem operator-(const RingElem& a, const RingElem& b);
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  RingElem operator-() const;

  bool operator==(const RingElem& o) const { return cmp(o) == 0; }
  bool operator!=(const RingElem& o) const { return cmp(o) != 0; }
  int cmp(const RingElem& o) const;  // deterministic total order, same ring only

  std::string to_string() const;

  // Introspection for the poly/laurent levels: leading-first term list as
  // (exponents over this level's gens, base-ring coefficient). Constants in
  // QQ report through rat_value after an is_rational check.
  bool is_rational() const;          // payload at the rationals level
  mpq_class rat_value() const;       // requires a constant all the way down
  std::vector<std::pair<std::vector<int32_t>, RingElem>> poly_terms() const;

  struct Rep;
  explicit RingElem(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  const Rep& rep() const { return *rep_; }

 private:
  std::shared_ptr<const Rep> rep_;
};

// true when the canonical rendering has top-level + or - joints (such values
// get parenthesized when used as coefficients of a monomial)
bool renders_as_sum(const RingElem& v);

// lift an element of a structural suffix of `top` into `top`
RingElem embed(const RingPtr& top, const RingElem& low);

// Ring endomorphism fixing QQ, given by generator images (any tower level may
// appear as a key; missing generators map to themselves). Field and Laurent
// generators must land on units or the application throws.
using GenImages = std::map<std::string, RingElem>;
RingElem apply_hom(const RingElem& v, const GenImages& images);

// sigma-derivation extension from generator images:
//   delta(ab) = sigma(a) delta(b) + delta(a) b, delta|QQ = 0,
//   delta(g^-1) = -sigma(g)^-1 delta(g) g^-1 on Laurent generators.
RingElem apply_sigma_deriv(const RingElem& v, const GenImages& sigma_images,
                           const GenImages& delta_images);

}  // namespace spbw

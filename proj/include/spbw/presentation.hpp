#pragma once

// A presentation of a skew PBW extension A = sigma(R)<x_1,...,x_n>:
//
//   x_i r   = sigma_i(r) x_i + delta_i(r)           r in R
//   x_j x_i = c_{i,j} x_i x_j + d_{ij}               i < j, c_{i,j} != 0
//
// with d_{ij} affine (an element of R + R x_1 + ... + R x_n). Coefficients
// live in a commutative tower ring, or, for nested presentations, in an
// inner extension given by nested_base; Coeff carries either payload.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <typeindex>
#include <utility>
#include <vector>

#include "spbw/ring.hpp"

namespace spbw {

class Presentation;
using PresPtr = std::shared_ptr<const Presentation>;
class SkewPoly;
using SkewPtr = std::shared_ptr<const SkewPoly>;

struct Coeff {
  RingElem scalar;  // engaged iff inner is null
  SkewPtr inner;    // element of the nested_base algebra
  bool boxed() const { return inner != nullptr; }
};

Coeff coeff_zero(const Presentation& p);
Coeff coeff_one(const Presentation& p);
Coeff coeff_from_int(const Presentation& p, long v);
Coeff coeff_from_ring(const Presentation& p, RingElem r);  // boxes scalars when nested
Coeff coeff_from_inner(const Presentation& p, SkewPoly f);

bool coeff_is_zero(const Coeff& a);
bool coeff_is_one(const Coeff& a);
bool coeff_eq(const Coeff& a, const Coeff& b);
int coeff_cmp(const Coeff& a, const Coeff& b);
Coeff coeff_add(const Coeff& a, const Coeff& b);
Coeff coeff_neg(const Coeff& a);
Coeff coeff_sub(const Coeff& a, const Coeff& b);
Coeff coeff_mul(const Coeff& a, const Coeff& b);  // inner product is the skew product
std::optional<Coeff> coeff_try_invert(const Coeff& a);
std::string coeff_to_string(const Coeff& a);
bool coeff_renders_as_sum(const Coeff& a);

// Endomorphism data: generator name -> image. Keys range over the tower
// generators and, for nested presentations, the inner variables; missing
// keys act as the identity. inverse_images present = bijectivity claimed,
// certified by validate through round-trips on every generator.
struct EndoSpec {
  std::map<std::string, Coeff> images;
  std::optional<std::map<std::string, Coeff>> inverse_images;
};

// sigma-derivation data; missing keys map to zero
struct DerivSpec {
  std::map<std::string, Coeff> images;
};

// d_{ij} = constant + sum linear[k] x_k
struct AffineTail {
  Coeff constant;
  std::map<int, Coeff> linear;
};

enum class Severity { error, warning, note };

struct Finding {
  Severity severity;
  std::string location;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Finding> findings;
  int confluence_degree = 0;

  void add(Severity s, std::string loc, std::string msg) {
    if (s == Severity::error) ok = false;
    findings.push_back({s, std::move(loc), std::move(msg)});
  }
  void merge(const ValidationReport& o) {
    if (!o.ok) ok = false;
    findings.insert(findings.end(), o.findings.begin(), o.findings.end());
  }
};

class Presentation : public std::enable_shared_from_this<Presentation> {
 public:
  struct Data {
    std::string name;
    RingPtr ring;       // coefficient tower; for nested: the inner tower
    PresPtr nested_base;
    std::vector<std::string> vars;
    std::vector<uint8_t> invertible;  // localized prefix flags (quantum module)
    std::vector<EndoSpec> sigma;
    std::vector<DerivSpec> delta;
    std::map<std::pair<int, int>, Coeff> c;  // i<j, missing entries mean 1
    std::map<std::pair<int, int>, AffineTail> tails;
  };

  // structural checks only (shape, ranges, nonzero c); deeper semantic
  // checks live in validate()
  static PresPtr make(Data d);

  const std::string& name() const { return d_.name; }
  const RingPtr& ring() const { return d_.ring; }
  const PresPtr& nested_base() const { return d_.nested_base; }
  bool is_nested() const { return d_.nested_base != nullptr; }
  size_t nvars() const { return d_.vars.size(); }
  const std::vector<std::string>& vars() const { return d_.vars; }
  int var_index(const std::string& name) const;
  bool invertible(size_t i) const { return d_.invertible[i] != 0; }
  size_t n_invertible() const { return n_invertible_; }

  const Coeff& c(size_t i, size_t j) const;          // i < j
  const AffineTail* tail(size_t i, size_t j) const;  // null when zero
  const EndoSpec& sigma(size_t i) const { return d_.sigma[i]; }
  const DerivSpec& delta(size_t i) const { return d_.delta[i]; }

  bool quasi_commutative() const { return quasi_commutative_; }
  bool bijective_claimed() const { return bijective_claimed_; }

  Coeff apply_sigma(size_t i, const Coeff& r) const;
  Coeff apply_sigma_inv(size_t i, const Coeff& r) const;  // needs inverse_images
  Coeff apply_delta(size_t i, const Coeff& r) const;

  // per-presentation memo slots, one per consumer type
  template <typename T>
  std::shared_ptr<T> cache() const {
    std::lock_guard<std::mutex> g(cache_mu_);
    auto& slot = cache_[std::type_index(typeid(T))];
    if (!slot) slot = std::make_shared<T>();
    return std::static_pointer_cast<T>(slot);
  }

 private:
  Presentation() = default;
  Data d_;
  Coeff one_;
  size_t n_invertible_ = 0;
  bool quasi_commutative_ = false;
  bool bijective_claimed_ = false;
  // flat fast path: ring-level image tables per variable
  std::vector<GenImages> sigma_ring_, sigma_inv_ring_, delta_ring_;
  mutable std::mutex cache_mu_;
  mutable std::map<std::type_index, std::shared_ptr<void>> cache_;

  friend struct PresAccess;
};

// the unique endomorphism extension of the image table applied to r
RingElem apply_endo(const EndoSpec& s, const RingElem& r);
// the sigma-Leibniz extension; twist is the EndoSpec the derivation pairs with
RingElem apply_deriv(const DerivSpec& d, const EndoSpec& twist, const RingElem& r);

// Definition-level checks: c nonzero, specs well formed, claimed inverses
// round-trip, nested homomorphism consistency on the inner relations.
ValidationReport validate(const PresPtr& p);

// Re-express a nested presentation over the innermost tower ring. Requires
// the inner presentation quasi-commutative and bijective with monomial
// sigma-images; anything else is an unsupported-nesting error.
PresPtr flatten(const PresPtr& p);

}  // namespace spbw

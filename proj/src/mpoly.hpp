#pragma once

// Dense-map multivariate polynomials over Q and Z, internal to the coefficient
// tower. Only what the rational-function field needs: ring ops, exact division,
// and a primitive-PRS gcd. Exponent vectors all share one arity per polynomial.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace spbw::detail {

using Expo = std::vector<int32_t>;

int64_t expo_deg(const Expo& e);
// Graded order: higher total degree first, ties broken at the leftmost
// differing entry, larger entry first. Returns -1/0/+1 for a <,=,> b.
int expo_cmp(const Expo& a, const Expo& b);

struct ExpoGreater {
  bool operator()(const Expo& a, const Expo& b) const { return expo_cmp(a, b) > 0; }
};

// Maps iterate leading term first; zero coefficients never stored.
using QPoly = std::map<Expo, mpq_class, ExpoGreater>;
using ZPoly = std::map<Expo, mpz_class, ExpoGreater>;

QPoly qp_zero();
QPoly qp_const(size_t arity, const mpq_class& c);
QPoly qp_gen(size_t arity, size_t idx);
bool qp_is_zero(const QPoly& p);
bool qp_is_const(const QPoly& p);
mpq_class qp_const_value(const QPoly& p);  // requires degree 0
QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_neg(const QPoly& a);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const mpq_class& c);
bool qp_eq(const QPoly& a, const QPoly& b);
int qp_cmp(const QPoly& a, const QPoly& b);

// Exact division; throws std::logic_error if b does not divide a.
QPoly qp_divexact(const QPoly& a, const QPoly& b);

// gcd up to a nonzero rational factor; result is primitive over Z with
// positive leading coefficient, or zero when both inputs are zero.
QPoly qp_gcd(const QPoly& a, const QPoly& b);

}  // namespace spbw::detail

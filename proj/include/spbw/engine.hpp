#pragma once

// The rewrite core. Normal forms are computed by pushing coefficients left
// through variables one at a time (x_i r -> sigma_i(r) x_i + delta_i(r)) and
// sorting variables by adjacent transpositions (x_j x_i -> c_{i,j} x_i x_j +
// d_{ij}), recursing on the spawned lower-degree terms. Terminates along the
// lexicographic measure (total degree, inversion count) for any presentation;
// uniqueness of the result is what check_confluence probes.

#include <cstdint>
#include <string>

#include "spbw/poly.hpp"

namespace spbw {

// x^alpha r = sigma_alpha_r x^alpha + remainder, deg(remainder) < |alpha|
struct PushResult {
  Coeff sigma_alpha_r;
  SkewPoly remainder;
};

// x^alpha x^beta = c_ab x^{alpha+beta} + remainder, deg(remainder) < |alpha+beta|
struct ReorderResult {
  Coeff c_ab;
  SkewPoly remainder;
};

// sigma^alpha = sigma_1^{a_1} o ... o sigma_n^{a_n}, rightmost applied first;
// negative entries use verified inverses and throw without them
Coeff sigma_power(const PresPtr& p, const ExpVec& alpha, const Coeff& r);

PushResult push_coeff(const PresPtr& p, const ExpVec& alpha, const Coeff& r);

// memoized per presentation
ReorderResult reorder(const PresPtr& p, const ExpVec& alpha, const ExpVec& beta);

// c_{alpha,beta} with x^alpha x^beta = c_{alpha,beta} x^{alpha+beta}; the
// presentation must be quasi-commutative, and signed exponents bijective
Coeff commutation_constant(const PresPtr& p, const ExpVec& alpha, const ExpVec& beta);

SkewPoly mul(const SkewPoly& f, const SkewPoly& g);
SkewPoly mul(const SkewPoly& f, const SkewPoly& g, const SkewPoly& h);

// both c_{alpha,beta} coherence identities on (theta, gamma, beta, c):
//   sigma^theta(c_{gamma,beta}) c_{theta,gamma+beta} = c_{theta,gamma} c_{theta+gamma,beta}
//   sigma^theta(sigma^gamma(c)) c_{theta,gamma}      = c_{theta,gamma} sigma^{theta+gamma}(c)
bool verify_identities(const PresPtr& p, const ExpVec& theta, const ExpVec& gamma,
                       const ExpVec& beta, const Coeff& c);

// r x^alpha expanded in the right basis: sum of x^beta * coeff with the
// coefficient written on the right
struct RightPoly {
  PresPtr pres;
  SkewPoly::Terms terms;

  bool is_zero() const { return terms.empty(); }
  std::string to_string() const;
};

RightPoly right_expand(const PresPtr& p, const Coeff& r, const ExpVec& alpha);

// left-normalize sum x^beta s_beta back into the standard basis
SkewPoly right_to_left(const RightPoly& rp);

// Bounded confluence evidence: for every word of length 3..degree_bound over
// the variables, and every shorter word followed by a coefficient generator,
// compare the fold-left and fold-right normal forms. Mismatches are error
// findings carrying both normal forms. A pass is evidence for the basis
// property, not a proof.
ValidationReport check_confluence(const PresPtr& p, int degree_bound);
ValidationReport check_confluence_serial(const PresPtr& p, int degree_bound);

}  // namespace spbw

#pragma once

// Skew quantum polynomials over a quasi-commutative bijective core: the first
// r variables are localized, elements live directly in the signed-exponent
// basis (no fractions), and the multiplicative set S = { units * x^alpha }
// admits constructive Ore witnesses.

#include <vector>

#include "spbw/engine.hpp"

namespace spbw {

struct QuantumPresentation {
  PresPtr core;                          // quasi-commutative, bijective, flat
  size_t r = 0;                          // localized prefix length
  std::vector<std::vector<RingElem>> q;  // q[i][j] with q_ii = 1, q_ij q_ji = 1
};

// derives r and the q matrix from the core's localized prefix and constants
QuantumPresentation make_quantum(const PresPtr& core);

// normal form of f g on the signed basis; single-term products stay single
SkewPoly qmul(const QuantumPresentation& qp, const SkewPoly& f, const SkewPoly& g);

// two-sided inverse of r x^alpha; r must be a unit and alpha supported on the
// localized prefix
SkewPoly invert_term(const QuantumPresentation& qp, const RingElem& r, const ExpVec& alpha);

// left Ore witness: g with g (r x^alpha) = x^alpha f, built coefficientwise
// as d_i = sigma^alpha(c_i) c_{alpha,beta_i} c_{beta_i,alpha}^{-1} sigma^{beta_i}(r^{-1})
SkewPoly ore_left_witness(const QuantumPresentation& qp, const SkewPoly& f, const RingElem& r,
                          const ExpVec& alpha);

// right Ore witness: g with (r x^alpha) g = f x^alpha, solved termwise and
// verified against the defining identity before returning
SkewPoly ore_right_witness(const QuantumPresentation& qp, const SkewPoly& f, const RingElem& r,
                           const ExpVec& alpha);

}  // namespace spbw

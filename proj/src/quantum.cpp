#include "spbw/quantum.hpp"

namespace spbw {

namespace {

void need_prefix_support(const ExpVec& alpha, size_t r, const char* what) {
  for (size_t i = 0; i < alpha.e.size(); ++i) {
    if (alpha.e[i] != 0 && i >= r)
      throw Error(std::string(what) + ": exponent outside the localized prefix");
  }
}

}  // namespace

QuantumPresentation make_quantum(const PresPtr& core) {
  if (core->is_nested()) throw Error("quantum core must be flat");
  if (!core->quasi_commutative()) throw Error("quantum core must be quasi-commutative");
  if (!core->bijective_claimed()) throw Error("quantum core must be bijective");
  const size_t n = core->nvars();
  QuantumPresentation qp;
  qp.core = core;
  qp.r = core->n_invertible();
  const RingElem one = RingElem::from_int(core->ring(), 1);
  qp.q.assign(n, std::vector<RingElem>(n, one));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const RingElem cij = core->c(i, j).scalar;
      auto inv = cij.try_invert();
      if (!inv) throw Error("quantum parameters must be units");
      qp.q[i][j] = cij;
      qp.q[j][i] = *inv;
    }
  }
  return qp;
}

SkewPoly qmul(const QuantumPresentation& qp, const SkewPoly& f, const SkewPoly& g) {
  if (f.pres() != qp.core || g.pres() != qp.core)
    throw Error("operands live in a different quantum presentation");
  return mul(f, g);
}

SkewPoly invert_term(const QuantumPresentation& qp, const RingElem& r, const ExpVec& alpha) {
  const PresPtr& p = qp.core;
  need_prefix_support(alpha, qp.r, "invert_term");
  auto ri = r.try_invert();
  if (!ri) throw Error("invert_term: coefficient is not a unit");
  // sigma^{-alpha}(r^{-1}) x^{-alpha}, then absorb the ordering constant
  const Coeff c0 = sigma_power(p, ev_neg(alpha), coeff_from_ring(*p, *ri));
  const SkewPoly g0 = SkewPoly::monomial(p, c0, ev_neg(alpha));
  const SkewPoly f = SkewPoly::monomial(p, coeff_from_ring(*p, r), alpha);
  const SkewPoly u = mul(g0, f);  // a unit constant
  const SkewPoly g = g0.scale(*coeff_try_invert(u.leading().second));
  const SkewPoly one = SkewPoly::constant(p, coeff_one(*p));
  if (!mul(g, f).eq(one) || !mul(f, g).eq(one))
    throw Error("invert_term: two-sided verification failed");
  return g;
}

SkewPoly ore_left_witness(const QuantumPresentation& qp, const SkewPoly& f, const RingElem& r,
                          const ExpVec& alpha) {
  const PresPtr& p = qp.core;
  if (f.pres() != p) throw Error("operand lives in a different quantum presentation");
  for (int32_t v : alpha.e)
    if (v < 0) throw Error("ore witness: the denominator exponent must be nonnegative");
  need_prefix_support(alpha, qp.r, "ore witness");
  auto ri = r.try_invert();
  if (!ri) throw Error("ore witness: coefficient is not a unit");

  SkewPoly g = SkewPoly::zero(p);
  for (const auto& [beta, ci] : f.terms()) {
    // d = sigma^alpha(c) c_{alpha,beta} c_{beta,alpha}^{-1} sigma^beta(r^{-1})
    Coeff d = sigma_power(p, alpha, ci);
    d = coeff_mul(d, commutation_constant(p, alpha, beta));
    d = coeff_mul(d, *coeff_try_invert(commutation_constant(p, beta, alpha)));
    d = coeff_mul(d, sigma_power(p, beta, coeff_from_ring(*p, *ri)));
    g = g.add(SkewPoly::monomial(p, d, beta));
  }
  const SkewPoly s = SkewPoly::monomial(p, coeff_from_ring(*p, r), alpha);
  const SkewPoly xa = SkewPoly::monomial(p, coeff_one(*p), alpha);
  if (!mul(g, s).eq(mul(xa, f))) throw Error("ore witness: identity verification failed");
  return g;
}

SkewPoly ore_right_witness(const QuantumPresentation& qp, const SkewPoly& f, const RingElem& r,
                           const ExpVec& alpha) {
  const PresPtr& p = qp.core;
  if (f.pres() != p) throw Error("operand lives in a different quantum presentation");
  for (int32_t v : alpha.e)
    if (v < 0) throw Error("ore witness: the denominator exponent must be nonnegative");
  need_prefix_support(alpha, qp.r, "ore witness");
  auto ri = r.try_invert();
  if (!ri) throw Error("ore witness: coefficient is not a unit");

  SkewPoly g = SkewPoly::zero(p);
  for (const auto& [beta, ci] : f.terms()) {
    // solve r sigma^alpha(d) c_{alpha,beta} = c c_{beta,alpha} termwise
    Coeff d = coeff_mul(coeff_from_ring(*p, *ri), ci);
    d = coeff_mul(d, commutation_constant(p, beta, alpha));
    d = coeff_mul(d, *coeff_try_invert(commutation_constant(p, alpha, beta)));
    d = sigma_power(p, ev_neg(alpha), d);
    g = g.add(SkewPoly::monomial(p, d, beta));
  }
  const SkewPoly s = SkewPoly::monomial(p, coeff_from_ring(*p, r), alpha);
  const SkewPoly xa = SkewPoly::monomial(p, coeff_one(*p), alpha);
  if (!mul(s, g).eq(mul(f, xa))) throw Error("ore witness: identity verification failed");
  return g;
}

}  // namespace spbw

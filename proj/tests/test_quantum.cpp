#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spbw/quantum.hpp"

#include "fixtures.hpp"

using namespace spbw;

namespace {

// three pairwise q-commuting variables, all localized
PresPtr torus3() {
  Presentation::Data d;
  d.name = "torus3";
  d.ring = RingDesc::rational_functions({"q"});
  d.vars = {"x1", "x2", "x3"};
  d.invertible = {1, 1, 1};
  d.sigma = {fx::identity_endo(), fx::identity_endo(), fx::identity_endo()};
  d.delta.resize(3);
  const RingElem q = RingElem::gen(d.ring, "q");
  d.c[{0, 1}] = fx::sc(q);
  d.c[{0, 2}] = fx::sc(q * q);
  d.c[{1, 2}] = fx::sc(q);
  return Presentation::make(std::move(d));
}

}  // namespace

TEST_CASE("quantum presentation construction") {
  auto qp = make_quantum(fx::torus2());
  CHECK(qp.r == 2);
  const RingElem q = RingElem::gen(qp.core->ring(), "q");
  CHECK(qp.q[0][0].is_one());
  CHECK(qp.q[1][1].is_one());
  CHECK(qp.q[0][1] == q);
  CHECK((qp.q[0][1] * qp.q[1][0]).is_one());

  CHECK_THROWS_AS(make_quantum(fx::weyl1()), Error);       // not quasi-commutative
  CHECK_THROWS_AS(make_quantum(fx::heis_nested()), Error);  // nested
  auto plain = make_quantum(fx::quantum_plane());
  CHECK(plain.r == 0);  // no localized prefix is fine
}

TEST_CASE("localized normal forms") {
  auto qp = make_quantum(fx::torus2());
  const PresPtr& p = qp.core;
  const RingElem q = RingElem::gen(p->ring(), "q");
  auto mono = [&](int32_t a, int32_t b) {
    return SkewPoly::monomial(p, coeff_one(*p), ExpVec{{a, b}, 2});
  };
  CHECK(qmul(qp, mono(-1, 0), mono(1, 0)).to_string() == "1");
  CHECK(qmul(qp, mono(0, 1), mono(-1, 0)).to_string() == "q^-1*x^-1*y");
  CHECK(qmul(qp, mono(0, 1), mono(1, 0)).to_string() == "q*x*y");
  // single-term products stay single terms
  CHECK(qmul(qp, mono(-2, 3), mono(1, -1)).nterms() == 1);
  // and products against ring scalars commute through sigma = id
  SkewPoly qc = SkewPoly::from_ring(p, q);
  CHECK(qmul(qp, mono(-1, 0), qc).to_string() == "q*x^-1");

  // associativity over a signed degree window
  std::vector<SkewPoly> sample = {mono(1, 0), mono(0, -1), mono(-2, 1),
                                  mono(1, 1).scale(fx::sc(q)), qc.add(mono(0, 2))};
  for (const auto& f : sample)
    for (const auto& g : sample)
      for (const auto& h : sample)
        CHECK(qmul(qp, qmul(qp, f, g), h).eq(qmul(qp, f, qmul(qp, g, h))));
}

TEST_CASE("inverses of single terms") {
  auto qp = make_quantum(fx::torus2());
  const PresPtr& p = qp.core;
  const RingElem q = RingElem::gen(p->ring(), "q");
  const RingElem one = RingElem::from_int(p->ring(), 1);

  CHECK(invert_term(qp, one, ev_zero(2, 2)).to_string() == "1");
  CHECK(invert_term(qp, q, ExpVec{{1, 0}, 2}).to_string() == "q^-1*x^-1");
  // (x y)^{-1} picks up the commutation constant
  CHECK(invert_term(qp, one, ExpVec{{1, 1}, 2}).to_string() == "q*x^-1*y^-1");

  SkewPoly g = invert_term(qp, q + one, ExpVec{{2, -1}, 2});
  SkewPoly f = SkewPoly::monomial(p, fx::sc(q + one), ExpVec{{2, -1}, 2});
  CHECK(qmul(qp, g, f).to_string() == "1");
  CHECK(qmul(qp, f, g).to_string() == "1");

  const RingElem t = RingElem::gen(fx::qdilation()->ring(), "t");
  (void)t;
  CHECK_THROWS_AS(invert_term(qp, RingElem::zero(p->ring()), ev_zero(2, 2)), Error);

  auto plain = make_quantum(fx::quantum_plane());
  CHECK_THROWS_AS(invert_term(plain, one, ExpVec{{1, 0}, 2}), Error);
}

TEST_CASE("ore witnesses") {
  auto qp = make_quantum(fx::torus2());
  const PresPtr& p = qp.core;
  const RingElem q = RingElem::gen(p->ring(), "q");
  const RingElem one = RingElem::from_int(p->ring(), 1);

  // f = y, s = x: g = q^{-1} y satisfies g x = x y
  SkewPoly f = SkewPoly::var(p, 1);
  SkewPoly g = ore_left_witness(qp, f, one, ExpVec{{1, 0}, 2});
  CHECK(g.to_string() == "q^-1*y");

  // alpha = 0 collapses to g = c r^{-1}
  SkewPoly c3 = SkewPoly::constant(p, coeff_from_int(*p, 3));
  CHECK(ore_left_witness(qp, c3, q, ev_zero(2, 2)).to_string() == "3*q^-1");

  auto qp3 = make_quantum(torus3());
  const PresPtr& p3 = qp3.core;
  const RingElem q3 = RingElem::gen(p3->ring(), "q");
  SkewPoly big = SkewPoly::monomial(p3, fx::sc(q3), ExpVec{{1, 0, 2}, 3})
                     .add(SkewPoly::monomial(p3, coeff_one(*p3), ExpVec{{-1, 1, 0}, 3}))
                     .add(SkewPoly::monomial(p3, fx::sc(q3 + q3), ExpVec{{0, -2, 1}, 3}))
                     .add(SkewPoly::constant(p3, coeff_one(*p3)));
  const ExpVec al{{1, 2, 0}, 3};
  const RingElem r = q3 * q3;
  SkewPoly w = ore_left_witness(qp3, big, r, al);
  SkewPoly s = SkewPoly::monomial(p3, fx::sc(r), al);
  SkewPoly xa = SkewPoly::monomial(p3, coeff_one(*p3), al);
  CHECK(qmul(qp3, w, s).eq(qmul(qp3, xa, big)));

  SkewPoly wr = ore_right_witness(qp3, big, r, al);
  CHECK(qmul(qp3, s, wr).eq(qmul(qp3, big, xa)));

  // nonzero elements never annihilate members of S
  CHECK(!qmul(qp3, big, s).is_zero());
  CHECK_THROWS_AS(ore_left_witness(qp, f, one, ExpVec{{-1, 0}, 2}), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"

using namespace spbw;

TEST_CASE("exponent vectors and the monomial order") {
  const ExpVec a = ev_unit(3, 0);
  const ExpVec b = ev_unit(3, 2);
  CHECK(ev_deg(ev_add(a, b)) == 2);
  CHECK(ev_sub(a, a).is_zero());
  CHECK(ev_deg(ExpVec{{-2, 3, 0}, 1}) == 5);

  // degree decides first, then the leftmost differing entry, larger first
  CHECK(cmp_mon(ev_add(a, b), ev_add(a, a)) < 0);            // x z < x^2
  CHECK(cmp_mon(ExpVec{{1, 0, 1}, 0}, ExpVec{{0, 2, 0}, 0}) > 0);  // x z > y^2
  CHECK(cmp_mon(a, a) == 0);
  CHECK(cmp_mon(ExpVec{{3}, 0}, ExpVec{{2}, 0}) > 0);
  CHECK_THROWS_AS(cmp_mon(a, ExpVec{{1}, 0}), Error);
}

TEST_CASE("construction and arithmetic") {
  auto p = fx::weyl1();
  const RingElem t = RingElem::gen(p->ring(), "t");
  SkewPoly x = SkewPoly::var(p, 0);
  SkewPoly f = SkewPoly::monomial(p, fx::sc(t), ev_unit(1, 0)).add(SkewPoly::constant(p, fx::sc(RingElem::from_int(p->ring(), 1))));
  CHECK(f.to_string() == "t*x + 1");
  CHECK(f.nterms() == 2);
  CHECK(f.degree().value() == 1);
  CHECK(!f.homogeneous());
  CHECK(f.leading().first == ev_unit(1, 0));
  CHECK(coeff_to_string(f.leading().second) == "t");

  CHECK(f.sub(f).is_zero());
  CHECK(!f.sub(f).degree().has_value());
  CHECK(f.neg().to_string() == "-t*x - 1");
  CHECK(f.hom_part(1).to_string() == "t*x");
  CHECK(f.hom_part(0).to_string() == "1");
  CHECK(f.hom_part(2).is_zero());
  CHECK(x.scale(fx::sc(t * t)).to_string() == "t^2*x");
  CHECK(f.add(f.neg()).is_zero());
  CHECK(f.eq(f));
  CHECK(!f.eq(x));
}

TEST_CASE("display conventions") {
  auto p = fx::qdilation();
  const RingElem q = RingElem::gen(p->ring(), "q");
  const RingElem one = RingElem::from_int(p->ring(), 1);
  // sums used as coefficients take parentheses, units are elided
  SkewPoly f = SkewPoly::monomial(p, fx::sc(q + one), ExpVec{{2}, 0});
  CHECK(f.to_string() == "(q + 1)*x^2");
  CHECK(SkewPoly::var(p, 0).to_string() == "x");
  CHECK(SkewPoly::var(p, 0).neg().to_string() == "-x");
  CHECK(SkewPoly::zero(p).to_string() == "0");
  CHECK(SkewPoly::constant(p, fx::sc(-one)).to_string() == "-1");
  SkewPoly g = SkewPoly::monomial(p, fx::sc(q), ExpVec{{3}, 0}).sub(f);
  CHECK(g.to_string() == "q*x^3 - (q + 1)*x^2");

  auto d = fx::dispin();
  SkewPoly h = SkewPoly::monomial(d, coeff_one(*d), ExpVec{{1, 0, 1}, 0})
                   .add(SkewPoly::monomial(d, coeff_one(*d), ExpVec{{0, 2, 0}, 0}));
  CHECK(h.to_string() == "x*z + y^2");
}

TEST_CASE("localized exponents") {
  auto tor = fx::torus2();
  SkewPoly m = SkewPoly::monomial(tor, coeff_one(*tor), ExpVec{{-1, 2}, 2});
  CHECK(m.to_string() == "x^-1*y^2");
  CHECK(m.degree().value() == 3);

  auto p = fx::weyl1();
  CHECK_THROWS_AS(SkewPoly::monomial(p, coeff_one(*p), ExpVec{{-1}, 0}), Error);
}

TEST_CASE("zero coefficients are dropped") {
  auto p = fx::weyl1();
  SkewPoly::Terms ts;
  ts.emplace(ev_unit(1, 0), coeff_zero(*p));
  ts.emplace(ev_zero(1), coeff_one(*p));
  SkewPoly f = SkewPoly::from_terms(p, std::move(ts));
  CHECK(f.nterms() == 1);
  CHECK(SkewPoly::monomial(p, coeff_zero(*p), ev_unit(1, 0)).is_zero());
}

TEST_CASE("boxed coefficients display inside the outer basis") {
  auto dq = fx::dq_plane_nested();
  PresPtr inner = dq->nested_base();
  const RingElem q = RingElem::gen(dq->ring(), "q");
  const Coeff qu = fx::bx(SkewPoly::monomial(inner, fx::sc(q), ev_unit(2, 0)));
  SkewPoly f = SkewPoly::monomial(dq, qu, ev_unit(1, 0));
  CHECK(f.to_string() == "q*u*w");
  const Coeff uv = fx::bx(SkewPoly::monomial(inner, fx::sc(q), ev_unit(2, 0))
                              .add(SkewPoly::var(inner, 1)));
  CHECK(SkewPoly::monomial(dq, uv, ev_unit(1, 0)).to_string() == "(q*u + v)*w");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spbw/graded.hpp"

#include "fixtures.hpp"

using namespace spbw;

TEST_CASE("the associated extension strips derivations and tails") {
  auto w = fx::weyl1();
  auto gw = assoc_algebra(w);
  CHECK(gw->quasi_commutative());
  CHECK(gw->bijective_claimed());
  CHECK(gw->vars() == std::vector<std::string>{"z1"});
  CHECK(validate(gw).ok);
  // the graded Weyl algebra is commutative
  const RingElem t = RingElem::gen(gw->ring(), "t");
  SkewPoly z = SkewPoly::var(gw, 0);
  CHECK(mul(z, SkewPoly::from_ring(gw, t)).to_string() == "t*z1");

  // same pointer on repeated calls, so graded elements share a presentation
  CHECK(assoc_algebra(w) == gw);

  auto d = fx::dispin();
  auto gd = assoc_algebra(d);
  CHECK(gd->quasi_commutative());
  CHECK(mul(SkewPoly::var(gd, 2), SkewPoly::var(gd, 0)).to_string() == "-z1*z3");
  CHECK(mul(SkewPoly::var(gd, 2), SkewPoly::var(gd, 1)).to_string() == "z2*z3");

  // quasi-commutative input keeps its constants (renamed variables)
  auto qp = fx::quantum_plane();
  auto gq = assoc_algebra(qp);
  CHECK(coeff_to_string(gq->c(0, 1)) == "q");
  auto ggq = assoc_algebra(gq);
  CHECK(ggq->nvars() == gq->nvars());
  CHECK(coeff_eq(ggq->c(0, 1), gq->c(0, 1)));
}

TEST_CASE("variable names avoid collisions") {
  Presentation::Data d;
  d.ring = RingDesc::poly(RingDesc::rationals(), {"z1"});
  d.vars = {"x"};
  d.sigma = {fx::identity_endo()};
  auto p = Presentation::make(std::move(d));
  CHECK(assoc_algebra(p)->vars() == std::vector<std::string>{"_z1"});
}

TEST_CASE("top components") {
  auto w = fx::weyl1();
  const RingElem t = RingElem::gen(w->ring(), "t");
  SkewPoly x = SkewPoly::var(w, 0);
  SkewPoly f = mul(x, SkewPoly::from_ring(w, t));  // t x + 1
  auto [m, top] = top_component(f);
  CHECK(m == 1);
  CHECK(top.to_string() == "t*z1");
  CHECK(top.pres() == assoc_algebra(w));

  auto d = fx::dispin();
  SkewPoly g = SkewPoly::monomial(d, coeff_one(*d), ExpVec{{1, 1, 0}, 0})
                   .add(SkewPoly::var(d, 0));
  auto [md, topd] = top_component(g);
  CHECK(md == 2);
  CHECK(topd.to_string() == "z1*z2");
  CHECK_THROWS_AS(top_component(SkewPoly::zero(w)), Error);
}

TEST_CASE("graded multiplicativity") {
  auto w = fx::weyl1();
  const RingElem t = RingElem::gen(w->ring(), "t");
  SkewPoly x = SkewPoly::var(w, 0);
  SkewPoly tc = SkewPoly::from_ring(w, t);
  CHECK(check_gr_mult(w, x, tc));
  CHECK(check_gr_mult(w, tc, x));
  CHECK(check_gr_mult(w, mul(x, x), mul(tc, tc)));
  CHECK_THROWS_AS(check_gr_mult(w, x.add(SkewPoly::constant(w, coeff_one(*w))), tc), Error);

  auto d = fx::dispin();
  std::vector<SkewPoly> homs = {
      SkewPoly::var(d, 0),
      SkewPoly::var(d, 2),
      SkewPoly::monomial(d, coeff_one(*d), ExpVec{{1, 1, 0}, 0}),
      SkewPoly::monomial(d, coeff_from_int(*d, -2), ExpVec{{0, 2, 1}, 0})
          .add(SkewPoly::monomial(d, coeff_one(*d), ExpVec{{1, 0, 2}, 0})),
  };
  for (const auto& a : homs)
    for (const auto& b : homs) CHECK(check_gr_mult(d, a, b));
}

TEST_CASE("filtration bound under products") {
  auto d = fx::dispin();
  SkewPoly f = mul(SkewPoly::var(d, 2), SkewPoly::var(d, 1));  // y z - z
  SkewPoly g = mul(SkewPoly::var(d, 1), SkewPoly::var(d, 0));
  CHECK(*mul(f, g).degree() <= *f.degree() + *g.degree());
}

TEST_CASE("tower decomposition") {
  // one step per variable, theta acting as sigma on the ring and by the
  // commutation constants on earlier variables
  auto qp = fx::quantum_plane();
  auto steps = tower(qp);
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].index == 0);
  CHECK(steps[0].theta_on_vars.empty());
  REQUIRE(steps[1].theta_on_vars.count(0) == 1);
  const RingElem q = RingElem::gen(qp->ring(), "q");
  CHECK(steps[1].theta_on_vars.at(0) == q);
  REQUIRE(steps[1].theta_on_vars_inverse.has_value());
  // theta round-trip: sigma_j(theta_inv) * c = 1
  const RingElem inv = steps[1].theta_on_vars_inverse->at(0);
  CHECK((apply_endo(steps[1].theta_on_ring, inv) * q).is_one());

  auto gw = assoc_algebra(fx::weyl1());
  auto wsteps = tower(gw);
  REQUIRE(wsteps.size() == 1);
  CHECK(wsteps[0].theta_on_ring.images.empty());

  CHECK_THROWS_AS(tower(fx::weyl1()), Error);
  CHECK_THROWS_AS(tower(fx::heis_nested()), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"

using namespace spbw;

TEST_CASE("structural checks at construction") {
  Presentation::Data d;
  d.ring = RingDesc::poly(RingDesc::rationals(), {"t"});
  d.vars = {"x", "x"};
  CHECK_THROWS_AS(Presentation::make(std::move(d)), Error);

  Presentation::Data d2;
  d2.ring = RingDesc::poly(RingDesc::rationals(), {"t"});
  d2.vars = {"t"};  // clashes with the ring generator
  CHECK_THROWS_AS(Presentation::make(std::move(d2)), Error);

  Presentation::Data d3;
  d3.ring = RingDesc::rationals();
  d3.vars = {"x", "y"};
  d3.invertible = {0, 1};  // not a prefix
  CHECK_THROWS_AS(Presentation::make(std::move(d3)), Error);

  Presentation::Data d4;
  d4.ring = RingDesc::rationals();
  d4.vars = {"x", "y"};
  d4.c[{0, 1}] = fx::sc(RingElem::zero(d4.ring));
  CHECK_THROWS_AS(Presentation::make(std::move(d4)), Error);
}

TEST_CASE("coefficient operations") {
  auto p = fx::qdilation();
  const RingElem q = RingElem::gen(p->ring(), "q");
  Coeff a = coeff_from_ring(*p, q);
  Coeff b = coeff_from_int(*p, 2);
  CHECK(coeff_to_string(coeff_add(a, b)) == "q + 2");
  CHECK(coeff_to_string(coeff_mul(a, a)) == "q^2");
  CHECK(coeff_is_one(coeff_mul(a, *coeff_try_invert(a))));
  CHECK(coeff_is_zero(coeff_sub(a, a)));
  CHECK(coeff_eq(coeff_neg(a), coeff_sub(coeff_zero(*p), a)));
  CHECK(coeff_cmp(a, b) != 0);
  CHECK(coeff_renders_as_sum(coeff_add(a, b)));
  CHECK(!coeff_renders_as_sum(a));
  const RingElem t = RingElem::gen(p->ring(), "t");
  CHECK(!coeff_try_invert(coeff_from_ring(*p, t)).has_value());
}

TEST_CASE("sigma and delta on flat presentations") {
  auto p = fx::qdilation();
  const RingElem t = RingElem::gen(p->ring(), "t");
  const RingElem q = RingElem::gen(p->ring(), "q");
  Coeff img = p->apply_sigma(0, fx::sc(t));
  CHECK(img.scalar == q * t);
  CHECK(p->apply_sigma_inv(0, img).scalar == t);
  CHECK(coeff_is_zero(p->apply_delta(0, fx::sc(t * t))));

  auto w = fx::weyl1();
  const RingElem wt = RingElem::gen(w->ring(), "t");
  CHECK(w->apply_delta(0, fx::sc(wt * wt)).scalar == wt + wt);  // usual derivative
  CHECK(w->apply_sigma(0, fx::sc(wt)).scalar == wt);
  CHECK(!w->quasi_commutative());
  CHECK(w->bijective_claimed());

  auto qp = fx::quantum_plane();
  CHECK(qp->quasi_commutative());
  CHECK(qp->bijective_claimed());
  CHECK(!coeff_is_one(qp->c(0, 1)));  // c(0,1) = q
}

TEST_CASE("endomorphism and derivation wrappers") {
  auto ring = RingDesc::poly(RingDesc::rational_functions({"q"}), {"t"});
  const RingElem t = RingElem::gen(ring, "t");
  const RingElem q = RingElem::gen(ring, "q");
  EndoSpec s;
  s.images["t"] = fx::sc(q * t);
  CHECK(apply_endo(s, t * t + t) == q * q * t * t + q * t);
  DerivSpec dl;
  dl.images["t"] = fx::sc(RingElem::from_int(ring, 1));
  // the q-twisted derivation maps t^2 to (q + 1) t
  CHECK(apply_deriv(dl, s, t * t) == (q + RingElem::from_int(ring, 1)) * t);
}

TEST_CASE("validation findings") {
  CHECK(validate(fx::weyl1()).ok);
  CHECK(validate(fx::dispin()).ok);
  auto rep = validate(fx::quantum_plane());
  CHECK(rep.ok);
  bool saw_qc = false, saw_bij = false;
  for (const auto& f : rep.findings) {
    if (f.message.find("quasi-commutative") != std::string::npos) saw_qc = true;
    if (f.message.find("bijective") != std::string::npos) saw_bij = true;
  }
  CHECK(saw_qc);
  CHECK(saw_bij);

  // a wrong inverse image fails the round-trip
  Presentation::Data d;
  d.ring = RingDesc::poly(RingDesc::rational_functions({"q"}), {"t"});
  const RingElem t = RingElem::gen(d.ring, "t");
  const RingElem q = RingElem::gen(d.ring, "q");
  d.vars = {"x"};
  EndoSpec s;
  s.images["t"] = fx::sc(q * t);
  s.inverse_images.emplace()["t"] = fx::sc(q * t);
  d.sigma = {s};
  auto bad = Presentation::make(std::move(d));
  auto brep = validate(bad);
  CHECK(!brep.ok);
  bool saw_rt = false;
  for (const auto& f : brep.findings)
    if (f.message.find("round-trip") != std::string::npos) saw_rt = true;
  CHECK(saw_rt);

  // images keyed on unknown generators are flagged
  Presentation::Data d2;
  d2.ring = RingDesc::rationals();
  d2.vars = {"x"};
  EndoSpec s2;
  s2.images["nope"] = fx::sc(RingElem::from_int(d2.ring, 1));
  d2.sigma = {s2};
  CHECK(!validate(Presentation::make(std::move(d2))).ok);
}

TEST_CASE("nested coefficients") {
  auto dq = fx::dq_plane_nested();
  PresPtr inner = dq->nested_base();
  CHECK(dq->is_nested());
  const RingElem q = RingElem::gen(dq->ring(), "q");

  Coeff u = coeff_from_inner(*dq, SkewPoly::var(inner, 0));
  Coeff v = coeff_from_inner(*dq, SkewPoly::var(inner, 1));
  // the coefficient product is the skew product of the inner algebra
  CHECK(coeff_to_string(coeff_mul(v, u)) == "q*u*v");
  CHECK(coeff_to_string(coeff_mul(u, v)) == "u*v");
  CHECK(coeff_eq(coeff_mul(coeff_from_ring(*dq, q), *coeff_try_invert(coeff_from_ring(*dq, q))),
                 coeff_one(*dq)));
  CHECK(!coeff_try_invert(u).has_value());
  CHECK(coeff_eq(coeff_from_int(*dq, 3), coeff_from_ring(*dq, RingElem::from_int(dq->ring(), 3))));

  // sigma scales, delta differentiates through inner products
  CHECK(coeff_to_string(dq->apply_sigma(0, u)) == "q*u");
  CHECK(coeff_to_string(dq->apply_delta(0, u)) == "1");
  Coeff uu = coeff_mul(u, u);
  CHECK(coeff_to_string(dq->apply_delta(0, uu)) == "(q + 1)*u");
  CHECK(coeff_to_string(dq->apply_sigma(0, coeff_mul(v, u))) == "q^3*u*v");
  CHECK(coeff_eq(dq->apply_sigma_inv(0, dq->apply_sigma(0, coeff_mul(v, v))), coeff_mul(v, v)));
}

TEST_CASE("nested consistency checks") {
  CHECK(validate(fx::heis_nested()).ok);
  CHECK(validate(fx::dq_plane_nested()).ok);

  // sigma(u) = q u with sigma(v) = v breaks the delta consistency on v u
  PresPtr inner = fx::quantum_plane();
  const RingElem q = RingElem::gen(inner->ring(), "q");
  Presentation::Data d;
  d.name = "bad";
  d.nested_base = inner;
  d.vars = {"w"};
  EndoSpec s;
  s.images["u"] = fx::bx(SkewPoly::monomial(inner, fx::sc(q), ev_unit(2, 0)));
  d.sigma = {s};
  DerivSpec dw;
  dw.images["u"] = fx::bx(SkewPoly::constant(inner, coeff_one(*inner)));
  d.delta = {dw};
  auto rep = validate(Presentation::make(std::move(d)));
  CHECK(!rep.ok);
  bool saw = false;
  for (const auto& f : rep.findings)
    if (f.message.find("delta is inconsistent") != std::string::npos) saw = true;
  CHECK(saw);
}

TEST_CASE("flatten") {
  auto dq = fx::dq_plane_nested();
  auto flat = flatten(dq);
  CHECK(!flat->is_nested());
  REQUIRE(flat->nvars() == 3);
  CHECK(flat->vars() == std::vector<std::string>{"u", "v", "w"});
  const RingElem q = RingElem::gen(flat->ring(), "q");
  CHECK(flat->c(0, 1).scalar == q);
  CHECK(flat->c(0, 2).scalar == q);
  CHECK(flat->c(1, 2).scalar == q);
  REQUIRE(flat->tail(0, 2) != nullptr);
  CHECK(flat->tail(0, 2)->constant.scalar.is_one());
  CHECK(flat->tail(0, 2)->linear.empty());
  CHECK(flat->tail(1, 2) == nullptr);
  CHECK(validate(flat).ok);
  CHECK(flatten(flat) == flat);

  auto h = flatten(fx::heis_nested());
  REQUIRE(h->nvars() == 3);
  REQUIRE(h->tail(0, 2) != nullptr);
  CHECK(coeff_is_zero(h->tail(0, 2)->constant));
  CHECK(h->tail(0, 2)->linear.at(1).scalar.is_one());

  // an inner presentation with derivations cannot be flattened
  PresPtr w = fx::weyl1();
  Presentation::Data d;
  d.nested_base = w;
  d.vars = {"s"};
  d.sigma = {fx::identity_endo()};
  CHECK_THROWS_AS(flatten(Presentation::make(std::move(d))), Error);
}

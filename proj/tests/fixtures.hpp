#pragma once

// Small presentations used across the test binaries.

#include "spbw/engine.hpp"

namespace fx {

using namespace spbw;

inline Coeff sc(const RingElem& v) { return Coeff{v, nullptr}; }
inline Coeff bx(SkewPoly f) { return Coeff{RingElem(), std::make_shared<SkewPoly>(std::move(f))}; }

inline EndoSpec identity_endo() {
  EndoSpec s;
  s.inverse_images.emplace();
  return s;
}

// x t = t x + 1 over QQ[t]
inline PresPtr weyl1() {
  Presentation::Data d;
  d.name = "weyl1";
  d.ring = RingDesc::poly(RingDesc::rationals(), {"t"});
  d.vars = {"x"};
  d.sigma = {identity_endo()};
  DerivSpec dl;
  dl.images["t"] = sc(RingElem::from_int(d.ring, 1));
  d.delta = {dl};
  return Presentation::make(std::move(d));
}

// x t = (t - h) x over QQ(h)[t]
inline PresPtr shift_h() {
  Presentation::Data d;
  d.name = "shift";
  d.ring = RingDesc::poly(RingDesc::rational_functions({"h"}), {"t"});
  const RingElem t = RingElem::gen(d.ring, "t");
  const RingElem h = RingElem::gen(d.ring, "h");
  d.vars = {"x"};
  EndoSpec s;
  s.images["t"] = sc(t - h);
  s.inverse_images.emplace()["t"] = sc(t + h);
  d.sigma = {s};
  d.delta = {{}};
  return Presentation::make(std::move(d));
}

// x t = q t x over QQ(q)[t]
inline PresPtr qdilation() {
  Presentation::Data d;
  d.name = "qdilation";
  d.ring = RingDesc::poly(RingDesc::rational_functions({"q"}), {"t"});
  const RingElem t = RingElem::gen(d.ring, "t");
  const RingElem q = RingElem::gen(d.ring, "q");
  d.vars = {"x"};
  EndoSpec s;
  s.images["t"] = sc(q * t);
  s.inverse_images.emplace()["t"] = sc(*q.try_invert() * t);
  d.sigma = {s};
  d.delta = {{}};
  return Presentation::make(std::move(d));
}

// y x = x y - x,  z x = -x z + y,  z y = y z - z over QQ
inline PresPtr dispin() {
  Presentation::Data d;
  d.name = "dispin";
  d.ring = RingDesc::rationals();
  d.vars = {"x", "y", "z"};
  d.sigma = {identity_endo(), identity_endo(), identity_endo()};
  d.delta.resize(3);
  const RingElem one = RingElem::from_int(d.ring, 1);
  d.tails[{0, 1}].linear[0] = sc(-one);
  d.c[{0, 2}] = sc(-one);
  d.tails[{0, 2}].linear[1] = sc(one);
  d.tails[{1, 2}].linear[2] = sc(-one);
  return Presentation::make(std::move(d));
}

// v u = q u v over QQ(q)
inline PresPtr quantum_plane() {
  Presentation::Data d;
  d.name = "qplane";
  d.ring = RingDesc::rational_functions({"q"});
  d.vars = {"u", "v"};
  d.sigma = {identity_endo(), identity_endo()};
  d.delta.resize(2);
  d.c[{0, 1}] = sc(RingElem::gen(d.ring, "q"));
  return Presentation::make(std::move(d));
}

// y x = q x y with both variables localized
inline PresPtr torus2() {
  Presentation::Data d;
  d.name = "torus2";
  d.ring = RingDesc::rational_functions({"q"});
  d.vars = {"x", "y"};
  d.invertible = {1, 1};
  d.sigma = {identity_endo(), identity_endo()};
  d.delta.resize(2);
  d.c[{0, 1}] = sc(RingElem::gen(d.ring, "q"));
  return Presentation::make(std::move(d));
}

// d1 t = t d1 + 1 and d2 t = t d2 + t with d2 d1 = d1 d2: the relations fail
// to close (the two reductions of d2 d1 t differ by 1)
inline PresPtr corrupted_weyl2() {
  Presentation::Data d;
  d.name = "corrupted";
  d.ring = RingDesc::poly(RingDesc::rationals(), {"t"});
  const RingElem t = RingElem::gen(d.ring, "t");
  d.vars = {"d1", "d2"};
  d.sigma = {identity_endo(), identity_endo()};
  DerivSpec d1, d2;
  d1.images["t"] = sc(RingElem::from_int(d.ring, 1));
  d2.images["t"] = sc(t);
  d.delta = {d1, d2};
  return Presentation::make(std::move(d));
}

// inner: commuting u, v over QQ; outer: w with delta(u) = v
inline PresPtr heis_nested() {
  Presentation::Data in;
  in.name = "plane";
  in.ring = RingDesc::rationals();
  in.vars = {"u", "v"};
  in.sigma = {identity_endo(), identity_endo()};
  in.delta.resize(2);
  PresPtr inner = Presentation::make(std::move(in));

  Presentation::Data d;
  d.name = "heis";
  d.nested_base = inner;
  d.vars = {"w"};
  d.sigma = {identity_endo()};
  DerivSpec dw;
  dw.images["u"] = bx(SkewPoly::var(inner, 1));
  d.delta = {dw};
  return Presentation::make(std::move(d));
}

// inner: quantum plane v u = q u v; outer: w with
//   sigma(u) = q u, sigma(v) = q v, delta(u) = 1
// so that w u = q u w + 1 and w v = q v w
inline PresPtr dq_plane_nested() {
  PresPtr inner = quantum_plane();
  const RingPtr R = inner->ring();
  const RingElem q = RingElem::gen(R, "q");
  const RingElem qi = *q.try_invert();

  Presentation::Data d;
  d.name = "dq-plane";
  d.nested_base = inner;
  d.vars = {"w"};
  EndoSpec s;
  s.images["u"] = bx(SkewPoly::monomial(inner, sc(q), ev_unit(2, 0)));
  s.images["v"] = bx(SkewPoly::monomial(inner, sc(q), ev_unit(2, 1)));
  s.inverse_images.emplace();
  (*s.inverse_images)["u"] = bx(SkewPoly::monomial(inner, sc(qi), ev_unit(2, 0)));
  (*s.inverse_images)["v"] = bx(SkewPoly::monomial(inner, sc(qi), ev_unit(2, 1)));
  d.sigma = {s};
  DerivSpec dw;
  dw.images["u"] = bx(SkewPoly::constant(inner, sc(RingElem::from_int(R, 1))));
  d.delta = {dw};
  return Presentation::make(std::move(d));
}

}  // namespace fx

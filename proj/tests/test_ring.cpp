#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spbw/ring.hpp"

using namespace spbw;

namespace {

RingPtr QQ() { return RingDesc::rationals(); }

RingElem q_of(const RingPtr& r) { return RingElem::gen(r, "q"); }

}  // namespace

TEST_CASE("ring descriptors") {
  auto k = RingDesc::rational_functions({"q", "h"});
  auto p = RingDesc::poly(k, {"t1", "t2"});
  auto l = RingDesc::laurent(k, {"z"});

  CHECK(QQ()->is_field());
  CHECK(k->is_field());
  CHECK_FALSE(p->is_field());
  CHECK(p->to_string() == "QQ(q,h)[t1,t2]");
  CHECK(l->to_string() == "QQ(q,h)[z^+-]");
  CHECK(p->all_gens() == std::vector<std::string>{"q", "h", "t1", "t2"});
  CHECK(p->has_gen("h"));
  CHECK_FALSE(p->has_gen("z"));

  auto p2 = RingDesc::poly(RingDesc::rational_functions({"q", "h"}), {"t1", "t2"});
  CHECK(same_ring(p, p2));
  CHECK_FALSE(same_ring(p, l));
}

TEST_CASE("rational arithmetic and printing") {
  auto r = QQ();
  auto a = RingElem::from_mpq(r, mpq_class(5, 6));
  auto b = RingElem::from_int(r, -3);
  CHECK((a + b).to_string() == "-13/6");
  CHECK((a * b).to_string() == "-5/2");
  CHECK((-a).to_string() == "-5/6");
  CHECK(b.pow(-2).to_string() == "1/9");
  CHECK(a.is_unit());
  CHECK(RingElem::zero(r).is_zero());
  CHECK_FALSE(RingElem::zero(r).is_unit());
  CHECK(a.cmp(b) > 0);
  CHECK(a == RingElem::from_mpq(r, mpq_class(10, 12)));
}

TEST_CASE("rational function field canonical forms") {
  auto k = RingDesc::rational_functions({"q", "h"});
  auto q = q_of(k);
  auto h = RingElem::gen(k, "h");
  auto one = RingElem::one(k);

  // (q^2 - h^2)/(q - h) reduces to q + h
  auto f = (q * q - h * h) * (q - h).try_invert().value();
  CHECK(f == q + h);
  CHECK(f.to_string() == "q + h");

  // (q^3 - 1)/(q - 1) = q^2 + q + 1
  auto g = (q.pow(3) - one) * (q - one).try_invert().value();
  CHECK(g.to_string() == "q^2 + q + 1");

  // monomial denominators display in Laurent form
  auto u = one * RingElem::from_int(k, 2) * q;          // 2q
  auto v = RingElem::from_int(k, 4) * q * q;            // 4q^2
  auto w = u * v.try_invert().value();                  // 1/(2q)
  CHECK(w.to_string() == "1/2*q^-1");
  CHECK(w * v == u);

  auto t = q - q.pow(-1);
  CHECK(t.to_string() == "q - q^-1");
  CHECK((q * h).pow(-1).to_string() == "q^-1*h^-1");
  CHECK((q + one) * q.pow(-1) == q.pow(-1) + one);
  CHECK(((q + one) * q.pow(-1)).to_string() == "1 + q^-1");

  // non-monomial denominators keep fraction form
  CHECK((q * (q * q - one).try_invert().value()).to_string() == "q/(q^2 - 1)");
}

TEST_CASE("polynomial and Laurent levels") {
  auto k = RingDesc::rational_functions({"q"});
  auto p = RingDesc::poly(k, {"t"});
  auto t = RingElem::gen(p, "t");
  auto q = q_of(p);  // inner generator reached through the tower
  CHECK(q.to_string() == "q");

  auto f = (t - RingElem::one(p)) * (t - RingElem::one(p));
  CHECK(f.to_string() == "t^2 - 2*t + 1");
  CHECK((q + RingElem::one(p)) * t == q * t + t);
  CHECK(((q + RingElem::one(p)) * t).to_string() == "(q + 1)*t");

  CHECK_FALSE(t.is_unit());
  CHECK(q.is_unit());
  CHECK_THROWS_AS(t.pow(-1), Error);

  auto l = RingDesc::laurent(k, {"z"});
  auto z = RingElem::gen(l, "z");
  auto zi = z.try_invert().value();
  CHECK(zi.to_string() == "z^-1");
  CHECK((z - zi).to_string() == "z - z^-1");
  CHECK((z * zi).is_one());
  auto m = q_of(l) * z.pow(2);
  CHECK(m.try_invert().value() * m == RingElem::one(l));
  CHECK_FALSE((z + RingElem::one(l)).is_unit());

  // a shared non-monomial denominator is pulled out of a multi-term value
  auto ql = q_of(l);
  auto c55 = (z - zi) * (ql - ql.pow(-1)).try_invert().value();
  CHECK(c55.to_string() == "(z - z^-1)/(q - q^-1)");
  CHECK(c55 * (ql - ql.pow(-1)) == z - zi);
  auto frac = (t + RingElem::one(p)) * (q - RingElem::one(p)).try_invert().value();
  CHECK(frac.to_string() == "(t + 1)/(q - 1)");
  // single terms keep the coefficient left of the monomial
  CHECK((q.pow(-2) * t).to_string() == "q^-2*t");
  CHECK((q * (q * q - RingElem::one(p)).try_invert().value() * t).to_string() ==
        "q/(q^2 - 1)*t");

  // graded term order: t1^2 > t1*t2 > t2^2 > t1
  auto p2 = RingDesc::poly(QQ(), {"t1", "t2"});
  auto t1 = RingElem::gen(p2, "t1");
  auto t2 = RingElem::gen(p2, "t2");
  auto s = t1 + t2 * t2 + t1 * t2 + t1 * t1;
  CHECK(s.to_string() == "t1^2 + t1*t2 + t2^2 + t1");
  auto terms = s.poly_terms();
  REQUIRE(terms.size() == 4);
  CHECK(terms[0].first == std::vector<int32_t>{2, 0});
  CHECK(terms[3].first == std::vector<int32_t>{1, 0});
  CHECK(terms[3].second.rat_value() == 1);
}

TEST_CASE("homomorphism application") {
  auto k = RingDesc::rational_functions({"q"});
  auto l = RingDesc::laurent(k, {"z"});
  auto z = RingElem::gen(l, "z");
  auto q = q_of(l);

  GenImages im;
  im["z"] = q.pow(2) * z;
  auto img = apply_hom(z.pow(-1) + z, im);
  CHECK(img == q.pow(-2) * z.pow(-1) + q.pow(2) * z);

  // images compose multiplicatively and additively
  auto a = z + q;
  auto b = z * z - q.pow(-1);
  CHECK(apply_hom(a * b, im) == apply_hom(a, im) * apply_hom(b, im));
  CHECK(apply_hom(a + b, im) == apply_hom(a, im) + apply_hom(b, im));

  // a Laurent generator must land on a unit
  GenImages bad;
  bad["z"] = z + RingElem::one(l);
  CHECK_THROWS_AS(apply_hom(z.pow(-1), bad), Error);

  // field generator image gets inverted where needed
  GenImages shift;
  auto kq = RingDesc::rational_functions({"q"});
  auto qq = q_of(kq);
  shift["q"] = qq + RingElem::one(kq);
  CHECK(apply_hom(qq.pow(-1), shift) == (qq + RingElem::one(kq)).try_invert().value());
}

TEST_CASE("sigma derivations") {
  // classical: sigma = id, delta(t) = t^2 gives delta(t^2) = 2t^3
  auto p = RingDesc::poly(QQ(), {"t"});
  auto t = RingElem::gen(p, "t");
  GenImages sig, del;
  del["t"] = t * t;
  CHECK(apply_sigma_deriv(t * t, sig, del) == RingElem::from_int(p, 2) * t.pow(3));

  // q-twisted: sigma(t) = qt, delta(t) = 1 gives the q-integers
  auto pq = RingDesc::poly(RingDesc::rational_functions({"q"}), {"t"});
  auto tq = RingElem::gen(pq, "t");
  auto q = q_of(pq);
  GenImages sq, dq;
  sq["t"] = q * tq;
  dq["t"] = RingElem::one(pq);
  CHECK(apply_sigma_deriv(tq.pow(2), sq, dq) == (q + RingElem::one(pq)) * tq);
  CHECK(apply_sigma_deriv(tq.pow(3), sq, dq) ==
        (q * q + q + RingElem::one(pq)) * tq.pow(2));

  // Leibniz rule on random-ish products
  auto a = tq.pow(2) + q * tq;
  auto b = q * tq.pow(3) - RingElem::from_int(pq, 7);
  auto dab = apply_sigma_deriv(a * b, sq, dq);
  CHECK(dab == apply_hom(a, sq) * apply_sigma_deriv(b, sq, dq) +
                   apply_sigma_deriv(a, sq, dq) * b);

  // Laurent: delta(z^-1) = -sigma(z)^-1 delta(z) z^-1
  auto lq = RingDesc::laurent(RingDesc::rational_functions({"q"}), {"z"});
  auto z = RingElem::gen(lq, "z");
  auto ql = q_of(lq);
  GenImages sz, dz;
  sz["z"] = ql * z;
  dz["z"] = RingElem::one(lq);
  CHECK(apply_sigma_deriv(z.pow(-1), sz, dz) == -(ql.pow(-1) * z.pow(-2)));
  // consistency: delta(z z^-1) = 0
  CHECK(apply_hom(z, sz) * apply_sigma_deriv(z.pow(-1), sz, dz) +
            apply_sigma_deriv(z, sz, dz) * z.pow(-1) ==
        RingElem::zero(lq));
}

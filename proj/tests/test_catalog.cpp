#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spbw/catalog.hpp"
#include "spbw/engine.hpp"

using namespace spbw;

namespace {

void dump_findings(const std::string& key, const ValidationReport& rep) {
  for (const auto& f : rep.findings)
    if (f.severity == Severity::error)
      MESSAGE(key << ": " << f.location << ": " << f.message);
}

}  // namespace

TEST_CASE("catalog listing is alphabetical and complete") {
  const auto& es = list_catalog();
  CHECK(es.size() == 35);
  for (size_t i = 1; i < es.size(); ++i) CHECK(es[i - 1].key < es[i].key);
  CHECK_THROWS_AS(catalog_entry("no-such-algebra"), Error);
}

TEST_CASE("every entry builds with defaults, validates, and the sweep closes") {
  for (const auto& e : list_catalog()) {
    CAPTURE(e.key);
    BuiltAlgebra a = instantiate(e.key);
    REQUIRE(a.pres != nullptr);
    auto rep = validate(a.pres);
    dump_findings(e.key, rep);
    CHECK(rep.ok);
    auto conf = check_confluence(a.pres, 3);
    dump_findings(e.key, conf);
    CHECK(conf.ok);
  }
}

TEST_CASE("weyl relations") {
  auto p = instantiate("weyl", {{"n", "2"}}).pres;
  SkewPoly d1 = SkewPoly::var(p, 0);
  SkewPoly t1 = SkewPoly::from_ring(p, RingElem::gen(p->ring(), "t1"));
  SkewPoly t2 = SkewPoly::from_ring(p, RingElem::gen(p->ring(), "t2"));
  CHECK(mul(d1, t1).to_string() == "t1*d1 + 1");
  CHECK(mul(d1, t2).to_string() == "t2*d1");
  SkewPoly d2 = SkewPoly::var(p, 1);
  CHECK(mul(d2, d1).eq(mul(d1, d2)));
}

TEST_CASE("dispin relations") {
  auto p = instantiate("dispin").pres;
  SkewPoly x = SkewPoly::var(p, 0), y = SkewPoly::var(p, 1), z = SkewPoly::var(p, 2);
  CHECK(mul(x, y).sub(mul(y, x)).to_string() == "x");
  CHECK(mul(y, z).sub(mul(z, y)).to_string() == "z");
  CHECK(mul(z, x).add(mul(x, z)).to_string() == "y");
}

TEST_CASE("uq-sl2 commutator lands in the Cartan part") {
  auto p = instantiate("uq-sl2").pres;
  SkewPoly x = SkewPoly::var(p, 0), y = SkewPoly::var(p, 1);
  CHECK(mul(x, y).sub(mul(y, x)).to_string() == "(z - z^-1)/(q - q^-1)");
}

TEST_CASE("quantum torus carries its localization") {
  BuiltAlgebra a = instantiate("quantum-torus", {{"n", "3"}, {"r", "2"}});
  REQUIRE(a.quantum.has_value());
  CHECK(a.quantum->r == 2);
  CHECK(a.pres->invertible(0));
  CHECK(a.pres->invertible(1));
  CHECK(!a.pres->invertible(2));
  const auto& q = a.quantum->q;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) CHECK((q[i][j] * q[j][i]).is_one());
  // plain quantum space has no localization
  CHECK(!instantiate("quantum-space").quantum.has_value());

  // multiparameter form: one independent constant per pair
  BuiltAlgebra m = instantiate("quantum-torus", {{"n", "3"}, {"multi", "1"}});
  REQUIRE(m.quantum.has_value());
  CHECK(m.pres->ring()->to_string() == "QQ(q21,q31,q32)");
  CHECK(m.quantum->q[0][1].to_string() == "q21");
  CHECK(m.quantum->q[2][1].to_string() == "q32^-1");
  REQUIRE(validate(m.pres).ok);
  CHECK(check_confluence(m.pres, 3).ok);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(instantiate("weyl", {{"n", "9"}}), Error);
  CHECK_THROWS_AS(instantiate("weyl", {{"n", "two"}}), Error);
  CHECK_THROWS_AS(instantiate("weyl", {{"bogus", "1"}}), Error);
  CHECK_THROWS_AS(instantiate("uq-sl2", {{"q", "0"}}), Error);
  CHECK_THROWS_AS(instantiate("uq-sl2", {{"q", "1"}}), Error);
  CHECK_THROWS_AS(instantiate("uq-sl2", {{"q", "-1"}}), Error);
  CHECK_THROWS_AS(instantiate("vq-sl3", {{"q", "1"}}), Error);
  CHECK_THROWS_AS(instantiate("dqh", {{"q", "x"}}), Error);
  CHECK_THROWS_AS(instantiate("dqh", {{"q", "1/0"}}), Error);
  CHECK_THROWS_AS(instantiate("shift-ops", {{"n", "2"}, {"m", "3"}}), Error);
  CHECK_THROWS_AS(instantiate("quantum-torus", {{"multi", "1"}, {"q", "2"}}), Error);
  CHECK_THROWS_AS(instantiate("enveloping", {{"preset", "so8"}}), Error);
}

TEST_CASE("bound scalar parameters produce rational specializations") {
  for (auto params : std::vector<ParamMap>{
           {{"q", "2"}},
           {{"q", "-3/5"}},
       }) {
    auto p = instantiate("uq-sl2", params).pres;
    CAPTURE(params.begin()->second);
    CHECK(p->ring()->to_string() == "QQ[z^+-]");
    auto rep = validate(p);
    CHECK(rep.ok);
    CHECK(check_confluence(p, 3).ok);
  }
  auto w = instantiate("witten", {{"q", "2"}, {"xi2", "1/3"}}).pres;
  CHECK(validate(w).ok);
  CHECK(check_confluence(w, 3).ok);
  auto q3 = instantiate("quadratic3", {{"a4", "1"}, {"a5", "2"}}).pres;
  CHECK(validate(q3).ok);
  CHECK(check_confluence(q3, 3).ok);
  auto dq = instantiate("dqh", {{"q", "5"}, {"h", "0"}}).pres;
  CHECK(validate(dq).ok);
  CHECK(dq->quasi_commutative());
}

TEST_CASE("enveloping presets and the Jacobi gate") {
  auto h = instantiate("enveloping", {{"preset", "heis3"}}).pres;
  SkewPoly x = SkewPoly::var(h, 0), y = SkewPoly::var(h, 1), z = SkewPoly::var(h, 2);
  CHECK(mul(x, y).sub(mul(y, x)).eq(z));
  CHECK(mul(x, z).eq(mul(z, x)));

  auto ab = instantiate("enveloping", {{"preset", "abelian"}, {"n", "2"}}).pres;
  CHECK(ab->quasi_commutative());

  LieTable bad;
  bad.n = 3;
  bad.bracket[{0, 1}] = {0, 0, 0, 1};  // [x,y] = z
  bad.bracket[{0, 2}] = {0, 1, 0, 0};  // [x,z] = x breaks Jacobi
  CHECK_THROWS_AS(build_enveloping("bad", {"x", "y", "z"}, bad), Error);

  LieTable shaped;
  shaped.n = 2;
  shaped.bracket[{0, 2}] = {0, 1};
  CHECK_THROWS_AS(build_enveloping("shaped", {"x", "y"}, shaped), Error);
}

TEST_CASE("catalog spot relations") {
  auto sk = instantiate("skew3d").pres;
  {
    SkewPoly x = SkewPoly::var(sk, 0), y = SkewPoly::var(sk, 1), z = SkewPoly::var(sk, 2);
    CHECK(mul(y, x).to_string() == "q*x*y + x");
    CHECK(mul(z, y).to_string() == "q*y*z + z");
    CHECK(mul(z, x).eq(mul(x, z)));
  }
  auto hs = instantiate("hayashi").pres;
  {
    SkewPoly x = SkewPoly::var(hs, 0), z = SkewPoly::var(hs, 1);
    CHECK(mul(z, x).to_string() == "q*x1*z1 + y1^-1");
  }
  auto aw = instantiate("additive-weyl", {{"n", "2"}}).pres;
  {
    SkewPoly x2 = SkewPoly::var(aw, 1), y2 = SkewPoly::var(aw, 3);
    CHECK(mul(y2, x2).to_string() == "q2*x2*y2 + 1");
    SkewPoly y1 = SkewPoly::var(aw, 2);
    CHECK(mul(y1, x2).eq(mul(x2, y1)));
  }
}

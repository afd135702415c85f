#include "spbw/catalog.hpp"

#include <algorithm>
#include <utility>

#include "spbw/engine.hpp"

namespace spbw {

namespace {

Coeff sc(RingElem v) { return Coeff{std::move(v), nullptr}; }

Coeff bx(SkewPoly f) { return Coeff{RingElem{}, std::make_shared<const SkewPoly>(std::move(f))}; }

EndoSpec id_endo() {
  EndoSpec e;
  e.inverse_images.emplace();
  return e;
}

RingElem inv_or_die(const RingElem& v, const std::string& what) {
  auto r = v.try_invert();
  if (!r) throw Error(what);
  return *r;
}

std::vector<std::string> seq(const std::string& stem, size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

int64_t int_param(const ParamMap& pm, const std::string& key, int64_t fallback, int64_t lo,
                  int64_t hi) {
  auto it = pm.find(key);
  if (it == pm.end()) return fallback;
  const std::string& s = it->second;
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw Error("parameter " + key + ": expected an integer, got '" + s + "'");
  }
  if (pos != s.size()) throw Error("parameter " + key + ": expected an integer, got '" + s + "'");
  if (v < lo || v > hi)
    throw Error("parameter " + key + ": value " + s + " outside [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "]");
  return v;
}

std::string choice_param(const ParamMap& pm, const std::string& key, const std::string& fallback,
                         const std::vector<std::string>& allowed) {
  auto it = pm.find(key);
  std::string v = it == pm.end() ? fallback : it->second;
  if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
    std::string opts;
    for (const auto& a : allowed) {
      if (!opts.empty()) opts += ", ";
      opts += a;
    }
    throw Error("parameter " + key + ": '" + v + "' is not one of " + opts);
  }
  return v;
}

// Scalar parameters stay symbolic, as generators of the coefficient field,
// unless bound to a rational literal like 2 or -3/5. Binding a parameter that
// must stay a unit to zero is rejected here; sharper admissibility conditions
// (q^2 != 1 and the like) are enforced by the individual builders.
struct ScalarSpec {
  std::string name;
  bool unit = false;
};

struct Scalars {
  std::vector<std::string> frees;
  std::map<std::string, std::optional<mpq_class>> value;

  Scalars(const ParamMap& pm, const std::vector<ScalarSpec>& specs) {
    for (const auto& spec : specs) {
      auto it = pm.find(spec.name);
      if (it == pm.end()) {
        value[spec.name] = std::nullopt;
        frees.push_back(spec.name);
        continue;
      }
      mpq_class v;
      try {
        v = mpq_class(it->second, 10);
      } catch (const std::exception&) {
        throw Error("parameter " + spec.name + ": expected a rational, got '" + it->second + "'");
      }
      if (v.get_den() == 0)
        throw Error("parameter " + spec.name + ": zero denominator in '" + it->second + "'");
      v.canonicalize();
      if (spec.unit && v == 0) throw Error("parameter " + spec.name + " must be nonzero");
      value[spec.name] = v;
    }
  }

  RingPtr field() const {
    if (frees.empty()) return RingDesc::rationals();
    return RingDesc::rational_functions(frees);
  }

  RingElem operator()(const RingPtr& ring, const std::string& name) const {
    const auto& v = value.at(name);
    if (v) return RingElem::from_mpq(ring, *v);
    return RingElem::gen(ring, name);
  }
};

// sigma acting on tower generators by gen -> factor * gen
EndoSpec scale_endo(const RingPtr& ring, const std::vector<std::pair<std::string, RingElem>>& fs) {
  EndoSpec e;
  e.inverse_images.emplace();
  for (const auto& [g, f] : fs) {
    RingElem x = RingElem::gen(ring, g);
    e.images[g] = sc(f * x);
    e.inverse_images->emplace(g, sc(inv_or_die(f, "scaling factor for " + g + " is not a unit") * x));
  }
  return e;
}

// nested sigma scaling the inner variable k by a unit factor
void box_scale(EndoSpec& e, const PresPtr& inner, size_t k, const RingElem& f) {
  const std::string& name = inner->vars()[k];
  SkewPoly x = SkewPoly::var(inner, k);
  e.images[name] = bx(x.scale(sc(f)));
  e.inverse_images->emplace(
      name, bx(x.scale(sc(inv_or_die(f, "scaling factor for " + name + " is not a unit")))));
}

BuiltAlgebra flat(PresPtr p) { return BuiltAlgebra{std::move(p), std::nullopt}; }

// ---- classical operator families ------------------------------------------

BuiltAlgebra build_polynomial(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 6));
  Presentation::Data d;
  d.name = "polynomial";
  d.ring = RingDesc::rationals();
  d.vars = seq("t", n);
  d.sigma.assign(n, id_endo());
  d.delta.resize(n);
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_ore_derivation(const ParamMap& pm) {
  const size_t m = static_cast<size_t>(int_param(pm, "m", 1, 1, 4));
  Presentation::Data d;
  d.name = "ore-derivation";
  d.ring = RingDesc::poly(RingDesc::rationals(), seq("t", m));
  d.vars = {"x"};
  d.sigma.assign(1, id_endo());
  d.delta.resize(1);
  for (size_t i = 1; i <= m; ++i) {
    std::string t = "t" + std::to_string(i);
    d.delta[0].images[t] = sc(RingElem::gen(d.ring, t));
  }
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_weyl(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 4));
  Presentation::Data d;
  d.name = "weyl";
  d.ring = RingDesc::poly(RingDesc::rationals(), seq("t", n));
  d.vars = seq("d", n);
  d.sigma.assign(n, id_endo());
  d.delta.resize(n);
  for (size_t j = 0; j < n; ++j)
    d.delta[j].images["t" + std::to_string(j + 1)] = sc(RingElem::one(d.ring));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_weyl_ring(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 1, 1, 3));
  const size_t m = static_cast<size_t>(int_param(pm, "m", 1, 1, 3));
  std::vector<std::string> gens = seq("u", m);
  std::vector<std::string> ts = seq("t", n);
  gens.insert(gens.end(), ts.begin(), ts.end());
  Presentation::Data d;
  d.name = "weyl-ring";
  d.ring = RingDesc::poly(RingDesc::rationals(), gens);
  d.vars = seq("d", n);
  d.sigma.assign(n, id_endo());
  d.delta.resize(n);
  for (size_t j = 0; j < n; ++j)
    d.delta[j].images["t" + std::to_string(j + 1)] = sc(RingElem::one(d.ring));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_enveloping_entry(const ParamMap& pm) {
  const std::string preset = choice_param(pm, "preset", "sl2", {"sl2", "heis3", "abelian"});
  LieTable t;
  std::vector<std::string> vars;
  if (preset == "sl2") {
    t.n = 3;
    vars = {"e", "f", "h"};
    t.bracket[{0, 1}] = {0, 0, 0, 1};   // [e,f] = h
    t.bracket[{0, 2}] = {0, -2, 0, 0};  // [e,h] = -2e
    t.bracket[{1, 2}] = {0, 0, 2, 0};   // [f,h] = 2f
  } else if (preset == "heis3") {
    t.n = 3;
    vars = {"x", "y", "z"};
    t.bracket[{0, 1}] = {0, 0, 0, 1};  // [x,y] = z central
  } else {
    t.n = static_cast<size_t>(int_param(pm, "n", 3, 1, 4));
    vars = seq("x", t.n);
  }
  return flat(build_enveloping("enveloping-" + preset, vars, t));
}

BuiltAlgebra build_dqh(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}, {"h", false}});
  Presentation::Data d;
  d.name = "dqh";
  d.ring = RingDesc::poly(s.field(), {"y"});
  d.vars = {"x"};
  d.sigma.push_back(scale_endo(d.ring, {{"y", s(d.ring, "q")}}));
  d.delta.resize(1);
  RingElem h = s(d.ring, "h");
  if (!h.is_zero()) d.delta[0].images["y"] = sc(h);
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_shift(const ParamMap& pm) {
  Scalars s(pm, {{"h", false}});
  Presentation::Data d;
  d.name = "shift";
  d.ring = RingDesc::poly(s.field(), {"t"});
  d.vars = {"x"};
  RingElem t = RingElem::gen(d.ring, "t");
  RingElem h = s(d.ring, "h");
  EndoSpec e;
  e.inverse_images.emplace();
  e.images["t"] = sc(t - h);
  e.inverse_images->emplace("t", sc(t + h));
  d.sigma.push_back(std::move(e));
  d.delta.resize(1);
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_mixed_dh(const ParamMap& pm) {
  Scalars s(pm, {{"h", false}});
  Presentation::Data d;
  d.name = "mixed-dh";
  d.ring = RingDesc::poly(s.field(), {"t"});
  d.vars = {"d", "s"};
  RingElem t = RingElem::gen(d.ring, "t");
  RingElem h = s(d.ring, "h");
  d.sigma.push_back(id_endo());
  EndoSpec e;
  e.inverse_images.emplace();
  e.images["t"] = sc(t - h);
  e.inverse_images->emplace("t", sc(t + h));
  d.sigma.push_back(std::move(e));
  d.delta.resize(2);
  d.delta[0].images["t"] = sc(RingElem::one(d.ring));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_discrete_linear(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 4));
  Presentation::Data d;
  d.name = "discrete-linear";
  d.ring = RingDesc::poly(RingDesc::rationals(), seq("t", n));
  d.vars = seq("x", n);
  for (size_t i = 0; i < n; ++i) {
    std::string t = "t" + std::to_string(i + 1);
    RingElem tg = RingElem::gen(d.ring, t);
    RingElem one = RingElem::one(d.ring);
    EndoSpec e;
    e.inverse_images.emplace();
    e.images[t] = sc(tg + one);
    e.inverse_images->emplace(t, sc(tg - one));
    d.sigma.push_back(std::move(e));
  }
  d.delta.resize(n);
  return flat(Presentation::make(std::move(d)));
}

// shift-ops / difference-ops / qdilation-ops / qdiff-ops share this kernel:
// m operators acting on k[t_1..t_n], the i-th one rescaling or translating t_i
BuiltAlgebra ops_family(const ParamMap& pm, const std::string& name, const std::string& stem,
                        bool qscale, bool with_delta) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 4));
  const size_t m = static_cast<size_t>(int_param(pm, "m", 1, 1, static_cast<int64_t>(n)));
  Scalars s(pm, qscale ? std::vector<ScalarSpec>{{"q", true}} : std::vector<ScalarSpec>{});
  Presentation::Data d;
  d.name = name;
  d.ring = RingDesc::poly(s.field(), seq("t", n));
  d.vars = seq(stem, m);
  for (size_t i = 0; i < m; ++i) {
    std::string t = "t" + std::to_string(i + 1);
    RingElem tg = RingElem::gen(d.ring, t);
    EndoSpec e;
    e.inverse_images.emplace();
    if (qscale) {
      RingElem q = s(d.ring, "q");
      e.images[t] = sc(q * tg);
      e.inverse_images->emplace(t, sc(inv_or_die(q, "parameter q must be nonzero") * tg));
    } else {
      RingElem one = RingElem::one(d.ring);
      e.images[t] = sc(tg + one);
      e.inverse_images->emplace(t, sc(tg - one));
    }
    d.sigma.push_back(std::move(e));
  }
  d.delta.resize(m);
  if (with_delta)
    for (size_t i = 0; i < m; ++i)
      d.delta[i].images["t" + std::to_string(i + 1)] = sc(RingElem::one(d.ring));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_diffusion(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 2, 2));
  std::vector<std::string> cnames;
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= n; ++j)
      if (i != j) cnames.push_back("c" + std::to_string(i) + std::to_string(j));
  Presentation::Data d;
  d.name = "diffusion";
  d.ring = RingDesc::poly(RingDesc::rational_functions(cnames), seq("x", n));
  d.vars = seq("D", n);
  d.sigma.assign(n, id_endo());
  d.delta.resize(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      RingElem cij = RingElem::gen(d.ring, "c" + std::to_string(i + 1) + std::to_string(j + 1));
      RingElem cji = RingElem::gen(d.ring, "c" + std::to_string(j + 1) + std::to_string(i + 1));
      RingElem cji_inv = inv_or_die(cji, "diffusion constants must be units");
      RingElem xi = RingElem::gen(d.ring, "x" + std::to_string(i + 1));
      RingElem xj = RingElem::gen(d.ring, "x" + std::to_string(j + 1));
      d.c[{static_cast<int>(i), static_cast<int>(j)}] = sc(cij * cji_inv);
      AffineTail t;
      t.linear[static_cast<int>(i)] = sc(-(xj * cji_inv));
      t.linear[static_cast<int>(j)] = sc(xi * cji_inv);
      d.tails[{static_cast<int>(i), static_cast<int>(j)}] = std::move(t);
    }
  return flat(Presentation::make(std::move(d)));
}

// ---- quantum deformations ---------------------------------------------------

BuiltAlgebra build_additive_weyl(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 1, 1, 3));
  Presentation::Data d;
  d.name = "additive-weyl";
  d.ring = RingDesc::rational_functions(seq("q", n));
  d.vars = seq("x", n);
  std::vector<std::string> ys = seq("y", n);
  d.vars.insert(d.vars.end(), ys.begin(), ys.end());
  d.sigma.assign(2 * n, id_endo());
  d.delta.resize(2 * n);
  for (size_t i = 0; i < n; ++i) {
    d.c[{static_cast<int>(i), static_cast<int>(n + i)}] =
        sc(RingElem::gen(d.ring, "q" + std::to_string(i + 1)));
    d.tails[{static_cast<int>(i), static_cast<int>(n + i)}].constant = sc(RingElem::one(d.ring));
  }
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_multiplicative_weyl(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 2, 4));
  std::vector<std::string> names;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      names.push_back("l" + std::to_string(j + 1) + std::to_string(i + 1));
  Presentation::Data d;
  d.name = "multiplicative-weyl";
  d.ring = RingDesc::rational_functions(names);
  d.vars = seq("x", n);
  d.sigma.assign(n, id_endo());
  d.delta.resize(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      d.c[{static_cast<int>(i), static_cast<int>(j)}] =
          sc(RingElem::gen(d.ring, "l" + std::to_string(j + 1) + std::to_string(i + 1)));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_uso3(const ParamMap& pm) {
  Scalars s(pm, {{"s", true}});
  Presentation::Data d;
  d.name = "uso3";
  d.ring = s.field();
  d.vars = {"I1", "I2", "I3"};
  d.sigma.assign(3, id_endo());
  d.delta.resize(3);
  RingElem sv = s(d.ring, "s");
  RingElem si = inv_or_die(sv, "parameter s must be nonzero");
  d.c[{0, 1}] = sc(sv * sv);
  d.tails[{0, 1}].linear[2] = sc(-sv);
  d.c[{0, 2}] = sc(si * si);
  d.tails[{0, 2}].linear[1] = sc(si);
  d.c[{1, 2}] = sc(sv * sv);
  d.tails[{1, 2}].linear[0] = sc(-sv);
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_skew3d(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}});
  Presentation::Data d;
  d.name = "skew3d";
  d.ring = s.field();
  d.vars = {"x", "y", "z"};
  d.sigma.assign(3, id_endo());
  d.delta.resize(3);
  RingElem q = s(d.ring, "q");
  RingElem one = RingElem::one(d.ring);
  d.c[{0, 1}] = sc(q);
  d.tails[{0, 1}].linear[0] = sc(one);
  d.c[{1, 2}] = sc(q);
  d.tails[{1, 2}].linear[2] = sc(one);
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_dispin(const ParamMap&) {
  Presentation::Data d;
  d.name = "dispin";
  d.ring = RingDesc::rationals();
  d.vars = {"x", "y", "z"};
  d.sigma.assign(3, id_endo());
  d.delta.resize(3);
  d.tails[{0, 1}].linear[0] = sc(RingElem::from_int(d.ring, -1));
  d.c[{0, 2}] = sc(RingElem::from_int(d.ring, -1));
  d.tails[{0, 2}].linear[1] = sc(RingElem::one(d.ring));
  d.tails[{1, 2}].linear[2] = sc(RingElem::from_int(d.ring, -1));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_woronowicz(const ParamMap& pm) {
  Scalars s(pm, {{"nu", true}});
  Presentation::Data d;
  d.name = "woronowicz";
  d.ring = s.field();
  d.vars = {"x", "y", "z"};
  d.sigma.assign(3, id_endo());
  d.delta.resize(3);
  RingElem nu = s(d.ring, "nu");
  RingElem ni = inv_or_die(nu, "parameter nu must be nonzero");
  RingElem nu2 = nu * nu;
  RingElem ni2 = ni * ni;
  RingElem ni4 = ni2 * ni2;
  RingElem onep = RingElem::one(d.ring) + nu2;
  d.c[{0, 1}] = sc(ni2);
  d.tails[{0, 1}].linear[2] = sc(-ni);
  d.c[{0, 2}] = sc(ni4);
  d.tails[{0, 2}].linear[0] = sc(-(ni4 * onep));
  d.c[{1, 2}] = sc(nu2 * nu2);
  d.tails[{1, 2}].linear[1] = sc(onep);
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_vq_sl3(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}});
  Presentation::Data d;
  d.name = "vq-sl3";
  d.ring = RingDesc::poly(s.field(), {"l1", "l2", "k1", "k2"});
  d.vars = {"e12", "e13", "e23", "f12", "f13", "f23"};
  RingElem q = s(d.ring, "q");
  RingElem w = q.pow(2) - q.pow(-2);
  RingElem winv = inv_or_die(w, "vq-sl3 needs q^4 != 1");
  const std::vector<std::string> gens = {"l1", "l2", "k1", "k2"};
  const int E[6][4] = {
      {2, -1, -2, 1},   // e12
      {1, 1, -1, -1},   // e13
      {-1, 2, 1, -2},   // e23
      {-2, 1, 2, -1},   // f12
      {-1, -1, 1, 1},   // f13
      {1, -2, -1, 2},   // f23
  };
  for (int v = 0; v < 6; ++v) {
    std::vector<std::pair<std::string, RingElem>> fs;
    for (int g = 0; g < 4; ++g)
      if (E[v][g] != 0) fs.emplace_back(gens[g], q.pow(E[v][g]));
    d.sigma.push_back(scale_endo(d.ring, fs));
  }
  d.delta.resize(6);
  RingElem l1 = RingElem::gen(d.ring, "l1");
  RingElem l2 = RingElem::gen(d.ring, "l2");
  RingElem k1 = RingElem::gen(d.ring, "k1");
  RingElem k2 = RingElem::gen(d.ring, "k2");
  RingElem l1s = l1 * l1, l2s = l2 * l2, k1s = k1 * k1, k2s = k2 * k2;
  d.c[{0, 1}] = sc(q.pow(-2));
  d.c[{1, 2}] = sc(q.pow(-2));
  d.c[{0, 2}] = sc(q.pow(2));
  d.tails[{0, 2}].linear[1] = sc(-q);
  d.c[{3, 4}] = sc(q.pow(-2));
  d.c[{4, 5}] = sc(q.pow(-2));
  d.c[{3, 5}] = sc(q.pow(2));
  d.tails[{3, 5}].linear[4] = sc(-q);
  d.tails[{0, 3}].constant = sc((l1s - k1s) * winv);
  d.tails[{1, 3}].linear[2] = sc(q.pow(-1) * l1s);
  d.tails[{0, 4}].linear[5] = sc(-(q.pow(-1) * k1s));
  d.tails[{1, 4}].constant = sc((k1s * k2s - l1s * l2s) * winv);
  d.tails[{2, 4}].linear[3] = sc(q * l2s);
  d.tails[{1, 5}].linear[0] = sc(-(q * k2s));
  d.tails[{2, 5}].constant = sc((l2s - k2s) * winv);
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_algebra_u(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}});
  const size_t n = static_cast<size_t>(int_param(pm, "n", 1, 1, 3));
  Presentation::Data d;
  d.name = "algebra-u";
  d.ring = RingDesc::poly(s.field(), seq("x", n));
  d.vars = seq("y", n);
  std::vector<std::string> zs = seq("z", n);
  d.vars.insert(d.vars.end(), zs.begin(), zs.end());
  RingElem q = s(d.ring, "q");
  RingElem qi = inv_or_die(q, "parameter q must be nonzero");
  for (size_t i = 0; i < n; ++i)
    d.sigma.push_back(scale_endo(d.ring, {{"x" + std::to_string(i + 1), q}}));
  for (size_t i = 0; i < n; ++i)
    d.sigma.push_back(scale_endo(d.ring, {{"x" + std::to_string(i + 1), qi}}));
  d.delta.resize(2 * n);
  for (size_t i = 0; i < n; ++i) {
    RingElem x = RingElem::gen(d.ring, "x" + std::to_string(i + 1));
    d.c[{static_cast<int>(i), static_cast<int>(n + i)}] = sc(q * q);
    d.tails[{static_cast<int>(i), static_cast<int>(n + i)}].constant = sc(-(q * q * x * x));
  }
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_oq_m2(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}});
  Presentation::Data d;
  d.name = "oq-m2";
  d.ring = RingDesc::poly(s.field(), {"u"});
  d.vars = {"x", "y", "v"};
  RingElem q = s(d.ring, "q");
  RingElem qi = inv_or_die(q, "parameter q must be nonzero");
  RingElem u = RingElem::gen(d.ring, "u");
  d.sigma.push_back(scale_endo(d.ring, {{"u", q}}));
  d.sigma.push_back(scale_endo(d.ring, {{"u", qi}}));
  d.sigma.push_back(id_endo());
  d.delta.resize(3);
  d.c[{0, 2}] = sc(qi);
  d.c[{1, 2}] = sc(q);
  d.tails[{0, 1}].linear[2] = sc(-((q - qi) * u));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_q_heisenberg(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}});
  const size_t n = static_cast<size_t>(int_param(pm, "n", 1, 1, 3));
  Presentation::Data d;
  d.name = "q-heisenberg";
  d.ring = s.field();
  d.vars = seq("x", n);
  std::vector<std::string> ys = seq("y", n), zs = seq("z", n);
  d.vars.insert(d.vars.end(), ys.begin(), ys.end());
  d.vars.insert(d.vars.end(), zs.begin(), zs.end());
  d.sigma.assign(3 * n, id_endo());
  d.delta.resize(3 * n);
  RingElem q = s(d.ring, "q");
  RingElem qi = inv_or_die(q, "parameter q must be nonzero");
  for (size_t i = 0; i < n; ++i) {
    const int x = static_cast<int>(i), y = static_cast<int>(n + i), z = static_cast<int>(2 * n + i);
    d.c[{x, y}] = sc(q);
    d.c[{x, z}] = sc(qi);
    d.tails[{x, z}].linear[y] = sc(RingElem::one(d.ring));
    d.c[{y, z}] = sc(q);
  }
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_uq_sl2(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}});
  Presentation::Data d;
  d.name = "uq-sl2";
  d.ring = RingDesc::laurent(s.field(), {"z"});
  d.vars = {"x", "y"};
  RingElem q = s(d.ring, "q");
  RingElem diff = q - q.pow(-1);
  RingElem dinv = inv_or_die(diff, "uq-sl2 needs q^2 != 1");
  RingElem z = RingElem::gen(d.ring, "z");
  d.sigma.push_back(scale_endo(d.ring, {{"z", q.pow(-2)}}));
  d.sigma.push_back(scale_endo(d.ring, {{"z", q.pow(2)}}));
  d.delta.resize(2);
  d.tails[{0, 1}].constant = sc(-((z - z.pow(-1)) * dinv));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_hayashi(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}});
  const size_t n = static_cast<size_t>(int_param(pm, "n", 1, 1, 3));
  Presentation::Data d;
  d.name = "hayashi";
  d.ring = RingDesc::laurent(s.field(), seq("y", n));
  d.vars = seq("x", n);
  std::vector<std::string> zs = seq("z", n);
  d.vars.insert(d.vars.end(), zs.begin(), zs.end());
  RingElem q = s(d.ring, "q");
  RingElem qi = inv_or_die(q, "parameter q must be nonzero");
  for (size_t i = 0; i < n; ++i)
    d.sigma.push_back(scale_endo(d.ring, {{"y" + std::to_string(i + 1), qi}}));
  for (size_t i = 0; i < n; ++i)
    d.sigma.push_back(scale_endo(d.ring, {{"y" + std::to_string(i + 1), q}}));
  d.delta.resize(2 * n);
  for (size_t i = 0; i < n; ++i) {
    RingElem y = RingElem::gen(d.ring, "y" + std::to_string(i + 1));
    d.c[{static_cast<int>(i), static_cast<int>(n + i)}] = sc(q);
    d.tails[{static_cast<int>(i), static_cast<int>(n + i)}].constant = sc(y.pow(-1));
  }
  return flat(Presentation::make(std::move(d)));
}

// quantum affine space; multi = 1 swaps the single q for independent
// constants q_ji, one per variable pair
Presentation::Data quantum_space_data(const ParamMap& pm, const std::string& name, size_t n) {
  const bool multi = int_param(pm, "multi", 0, 0, 1) != 0;
  Presentation::Data d;
  d.name = name;
  d.vars = seq("x", n);
  d.sigma.assign(n, id_endo());
  d.delta.resize(n);
  if (multi) {
    if (pm.count("q")) throw Error("parameter q conflicts with multi = 1");
    std::vector<std::string> names;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        names.push_back("q" + std::to_string(j + 1) + std::to_string(i + 1));
    d.ring = names.empty() ? RingDesc::rationals() : RingDesc::rational_functions(names);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        d.c[{static_cast<int>(i), static_cast<int>(j)}] =
            sc(RingElem::gen(d.ring, "q" + std::to_string(j + 1) + std::to_string(i + 1)));
  } else {
    Scalars s(pm, {{"q", true}});
    d.ring = s.field();
    RingElem q = s(d.ring, "q");
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) d.c[{static_cast<int>(i), static_cast<int>(j)}] = sc(q);
  }
  return d;
}

BuiltAlgebra build_quantum_space(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 4));
  return flat(Presentation::make(quantum_space_data(pm, "quantum-space", n)));
}

BuiltAlgebra build_quantum_torus(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 4));
  const size_t r = static_cast<size_t>(int_param(pm, "r", static_cast<int64_t>(n), 1,
                                                 static_cast<int64_t>(n)));
  Presentation::Data d = quantum_space_data(pm, "quantum-torus", n);
  d.invertible.assign(n, 0);
  for (size_t i = 0; i < r; ++i) d.invertible[i] = 1;
  PresPtr core = Presentation::make(std::move(d));
  return BuiltAlgebra{core, make_quantum(core)};
}

// ---- two-level towers -------------------------------------------------------

BuiltAlgebra build_dq_sq(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}});
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 3));
  Presentation::Data di;
  di.name = "dq-sq-space";
  di.ring = s.field();
  di.vars = seq("x", n);
  di.sigma.assign(n, id_endo());
  di.delta.resize(n);
  RingElem q = s(di.ring, "q");
  RingElem qi = inv_or_die(q, "parameter q must be nonzero");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) di.c[{static_cast<int>(i), static_cast<int>(j)}] = sc(q);
  PresPtr inner = Presentation::make(std::move(di));

  Presentation::Data d;
  d.name = "dq-sq";
  d.nested_base = inner;
  d.vars = seq("D", n);
  for (size_t i = 0; i < n; ++i) {
    EndoSpec e;
    e.inverse_images.emplace();
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      box_scale(e, inner, j, j > i ? q : qi);
    }
    d.sigma.push_back(std::move(e));
    DerivSpec dv;
    dv.images[inner->vars()[i]] = bx(SkewPoly::constant(inner, coeff_one(*inner)));
    d.delta.push_back(std::move(dv));
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      d.c[{static_cast<int>(i), static_cast<int>(j)}] = bx(SkewPoly::constant(inner, sc(q)));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_witten(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}, {"xi2", false}, {"xi5", true}, {"xi6", false}, {"xi7", false}});
  Presentation::Data di;
  di.name = "witten-core";
  di.ring = RingDesc::poly(s.field(), {"x"});
  di.vars = {"z"};
  RingElem q = s(di.ring, "q");
  RingElem qi = inv_or_die(q, "parameter q must be nonzero");
  RingElem xi2 = s(di.ring, "xi2");
  RingElem x = RingElem::gen(di.ring, "x");
  di.sigma.push_back(scale_endo(di.ring, {{"x", qi}}));
  di.delta.resize(1);
  RingElem dz = -(qi * xi2 * x);
  if (!dz.is_zero()) di.delta[0].images["x"] = sc(dz);
  PresPtr inner = Presentation::make(std::move(di));

  const RingPtr& F = inner->ring();
  RingElem xi5 = s(F, "xi5"), xi6 = s(F, "xi6"), xi7 = s(F, "xi7");
  Presentation::Data d;
  d.name = "witten";
  d.nested_base = inner;
  d.vars = {"y"};
  EndoSpec sy;
  sy.inverse_images.emplace();
  sy.images["x"] = sc(xi5 * x);
  sy.inverse_images->emplace("x", sc(inv_or_die(xi5, "parameter xi5 must be nonzero") * x));
  SkewPoly z = SkewPoly::var(inner, 0);
  // y z = q^{-1} (z - xi2) y
  sy.images["z"] = bx(z.scale(sc(qi)).add(SkewPoly::constant(inner, sc(-(qi * xi2)))));
  sy.inverse_images->emplace("z", bx(z.scale(sc(q)).add(SkewPoly::constant(inner, sc(xi2)))));
  d.sigma.push_back(std::move(sy));
  // y x = xi5 x y + xi6 z^2 + xi7 z
  DerivSpec dy;
  SkewPoly dyx = SkewPoly::monomial(inner, sc(xi6), ExpVec{{2}, 0})
                     .add(SkewPoly::monomial(inner, sc(xi7), ExpVec{{1}, 0}));
  if (!dyx.is_zero()) dy.images["x"] = bx(std::move(dyx));
  d.delta.push_back(std::move(dy));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_maltsiniotis(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 2));
  std::vector<ScalarSpec> specs = {{"lam", true}};
  if (n == 2) specs.push_back({"q", true});
  Scalars s(pm, specs);
  RingPtr F = s.field();
  Presentation::Data d1;
  d1.name = n == 1 ? "maltsiniotis" : "maltsiniotis-core";
  d1.ring = F;
  d1.vars = {"x1", "y1"};
  d1.sigma.assign(2, id_endo());
  d1.delta.resize(2);
  RingElem lam = s(F, "lam");
  RingElem li = inv_or_die(lam, "parameter lam must be nonzero");
  d1.c[{0, 1}] = sc(li);
  d1.tails[{0, 1}].constant = sc(-li);
  PresPtr inner = Presentation::make(std::move(d1));
  if (n == 1) return flat(inner);

  RingElem q = s(F, "q");
  RingElem qi = inv_or_die(q, "parameter q must be nonzero");
  Presentation::Data d;
  d.name = "maltsiniotis";
  d.nested_base = inner;
  d.vars = {"x2", "y2"};
  EndoSpec sx;
  sx.inverse_images.emplace();
  box_scale(sx, inner, 0, li * qi);
  box_scale(sx, inner, 1, lam * q);
  EndoSpec sy;
  sy.inverse_images.emplace();
  box_scale(sy, inner, 0, q);
  box_scale(sy, inner, 1, qi);
  d.sigma.push_back(std::move(sx));
  d.sigma.push_back(std::move(sy));
  d.delta.resize(2);
  d.c[{0, 1}] = bx(SkewPoly::constant(inner, sc(li)));
  // y2 x2 = lam^{-1} x2 y2 - lam^{-1} (1 + (lam - 1) y1 x1)
  SkewPoly y1x1 = mul(SkewPoly::var(inner, 1), SkewPoly::var(inner, 0));
  SkewPoly tail = SkewPoly::constant(inner, coeff_one(*inner))
                      .add(y1x1.scale(sc(lam - RingElem::one(F))))
                      .scale(sc(-li));
  d.tails[{0, 1}].constant = bx(std::move(tail));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_an_qpij(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 2));
  std::vector<ScalarSpec> specs = {{"q", true}};
  if (n == 2) specs.push_back({"p", true});
  Scalars s(pm, specs);
  RingPtr F = s.field();
  RingElem q = s(F, "q");
  Presentation::Data d1;
  d1.name = n == 1 ? "an-qpij" : "an-qpij-core";
  d1.ring = F;
  d1.vars = n == 1 ? std::vector<std::string>{"x1", "d1"} : std::vector<std::string>{"x2", "d2"};
  d1.sigma.assign(2, id_endo());
  d1.delta.resize(2);
  d1.c[{0, 1}] = sc(q * q);
  d1.tails[{0, 1}].constant = sc(RingElem::one(F));
  PresPtr inner = Presentation::make(std::move(d1));
  if (n == 1) return flat(inner);

  RingElem qi = inv_or_die(q, "parameter q must be nonzero");
  RingElem p = s(F, "p");
  RingElem pi = inv_or_die(p, "parameter p must be nonzero");
  Presentation::Data d;
  d.name = "an-qpij";
  d.nested_base = inner;
  d.vars = {"x1", "d1"};
  EndoSpec sx;
  sx.inverse_images.emplace();
  box_scale(sx, inner, 0, p * q);
  box_scale(sx, inner, 1, pi * qi);
  EndoSpec sd;
  sd.inverse_images.emplace();
  box_scale(sd, inner, 0, pi * q);
  box_scale(sd, inner, 1, p * qi);
  d.sigma.push_back(std::move(sx));
  d.sigma.push_back(std::move(sd));
  d.delta.resize(2);
  d.c[{0, 1}] = bx(SkewPoly::constant(inner, sc(q * q)));
  // d1 x1 = q^2 x1 d1 + 1 + (q^2 - 1) x2 d2
  SkewPoly x2d2 = SkewPoly::monomial(inner, coeff_one(*inner), ExpVec{{1, 1}, 0});
  SkewPoly tail = SkewPoly::constant(inner, coeff_one(*inner))
                      .add(x2d2.scale(sc(q * q - RingElem::one(F))));
  d.tails[{0, 1}].constant = bx(std::move(tail));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_an_qgamma(const ParamMap& pm) {
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 2));
  std::vector<ScalarSpec> specs = {{"q1", true}};
  if (n == 2) {
    specs.push_back({"q2", true});
    specs.push_back({"ga", true});
  }
  Scalars s(pm, specs);
  RingPtr F = s.field();
  RingElem q1 = s(F, "q1");
  RingElem q1i = inv_or_die(q1, "parameter q1 must be nonzero");
  Presentation::Data d1;
  d1.name = n == 1 ? "an-qgamma" : "an-qgamma-core";
  d1.ring = F;
  d1.vars = {"x1", "y1"};
  d1.sigma.assign(2, id_endo());
  d1.delta.resize(2);
  d1.c[{0, 1}] = sc(q1i);
  d1.tails[{0, 1}].constant = sc(-q1i);
  PresPtr inner = Presentation::make(std::move(d1));
  if (n == 1) return flat(inner);

  RingElem q2 = s(F, "q2");
  RingElem q2i = inv_or_die(q2, "parameter q2 must be nonzero");
  RingElem ga = s(F, "ga");
  RingElem gi = inv_or_die(ga, "parameter ga must be nonzero");
  Presentation::Data d;
  d.name = "an-qgamma";
  d.nested_base = inner;
  d.vars = {"x2", "y2"};
  EndoSpec sx;
  sx.inverse_images.emplace();
  box_scale(sx, inner, 0, q1i * gi);
  box_scale(sx, inner, 1, q1 * ga);
  EndoSpec sy;
  sy.inverse_images.emplace();
  box_scale(sy, inner, 0, ga);
  box_scale(sy, inner, 1, gi);
  d.sigma.push_back(std::move(sx));
  d.sigma.push_back(std::move(sy));
  d.delta.resize(2);
  d.c[{0, 1}] = bx(SkewPoly::constant(inner, sc(q2i)));
  // y2 x2 = q2^{-1} x2 y2 - q2^{-1} (1 + (q1 - 1) y1 x1)
  SkewPoly y1x1 = mul(SkewPoly::var(inner, 1), SkewPoly::var(inner, 0));
  SkewPoly tail = SkewPoly::constant(inner, coeff_one(*inner))
                      .add(y1x1.scale(sc(q1 - RingElem::one(F))))
                      .scale(sc(-q2i));
  d.tails[{0, 1}].constant = bx(std::move(tail));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_oq_sp(const ParamMap& pm) {
  Scalars s(pm, {{"q", true}});
  const size_t n = static_cast<size_t>(int_param(pm, "n", 2, 1, 2));
  RingPtr F = s.field();
  RingElem q = s(F, "q");
  RingElem qi = inv_or_die(q, "parameter q must be nonzero");
  Presentation::Data d1;
  d1.name = n == 1 ? "oq-sp" : "oq-sp-core";
  d1.ring = F;
  d1.vars = {"x1", "y1"};
  d1.sigma.assign(2, id_endo());
  d1.delta.resize(2);
  d1.c[{0, 1}] = sc(qi * qi);
  PresPtr inner = Presentation::make(std::move(d1));
  if (n == 1) return flat(inner);

  Presentation::Data d;
  d.name = "oq-sp";
  d.nested_base = inner;
  d.vars = {"x2", "y2"};
  EndoSpec sx;
  sx.inverse_images.emplace();
  box_scale(sx, inner, 0, qi);
  box_scale(sx, inner, 1, q);
  EndoSpec sy;
  sy.inverse_images.emplace();
  box_scale(sy, inner, 0, qi);
  box_scale(sy, inner, 1, q);
  d.sigma.push_back(std::move(sx));
  d.sigma.push_back(std::move(sy));
  d.delta.resize(2);
  d.c[{0, 1}] = bx(SkewPoly::constant(inner, sc(qi * qi)));
  // y2 x2 = q^{-2} x2 y2 - (q^2 - 1) q^{-3} x1 y1
  SkewPoly x1y1 = SkewPoly::monomial(inner, coeff_one(*inner), ExpVec{{1, 1}, 0});
  RingElem coef = -((q * q - RingElem::one(F)) * qi.pow(3));
  d.tails[{0, 1}].constant = bx(x1y1.scale(sc(coef)));
  return flat(Presentation::make(std::move(d)));
}

BuiltAlgebra build_quadratic3(const ParamMap& pm) {
  Scalars s(pm, {{"a1", false}, {"a4", false}, {"a5", false}, {"a6", false}, {"xi1", false}});
  Presentation::Data di;
  di.name = "quadratic3-core";
  di.ring = RingDesc::poly(s.field(), {"z"});
  di.vars = {"y"};
  di.sigma.assign(1, id_endo());
  di.delta.resize(1);
  RingElem a4 = s(di.ring, "a4");
  RingElem z = RingElem::gen(di.ring, "z");
  RingElem dz = -(a4 * z * z);
  if (!dz.is_zero()) di.delta[0].images["z"] = sc(dz);
  PresPtr inner = Presentation::make(std::move(di));

  const RingPtr& R = inner->ring();
  RingElem a1 = s(R, "a1"), a5 = s(R, "a5"), a6 = s(R, "a6"), xi1 = s(R, "xi1");
  // the associative slice of the quadratic family: the remaining coefficients
  // are forced by the derivation conditions on x
  RingElem a2 = RingElem::from_mpq(R, mpq_class(1, 2)) * a5;
  Presentation::Data d;
  d.name = "quadratic3";
  d.nested_base = inner;
  d.vars = {"x"};
  d.sigma.assign(1, id_endo());
  d.delta.resize(1);
  // x z = z x - (a5 y z + a6 z^2)
  SkewPoly t1 = SkewPoly::monomial(inner, sc(a5 * z), ExpVec{{1}, 0})
                    .add(SkewPoly::constant(inner, sc(a6 * z * z)));
  if (!t1.is_zero()) d.delta[0].images["z"] = bx(t1.neg());
  // x y = y x - (a1 z + a2 y^2 + xi1 z^2)
  SkewPoly t2 = SkewPoly::constant(inner, sc(a1 * z + xi1 * z * z))
                    .add(SkewPoly::monomial(inner, sc(a2), ExpVec{{2}, 0}));
  if (!t2.is_zero()) d.delta[0].images["y"] = bx(t2.neg());
  return flat(Presentation::make(std::move(d)));
}

ParamSpec ip(std::string name, std::string fallback, std::string constraint) {
  return {std::move(name), ParamSpec::Kind::integer, std::move(fallback), std::move(constraint)};
}

ParamSpec sp(std::string name, std::string constraint) {
  return {std::move(name), ParamSpec::Kind::scalar, "symbolic", std::move(constraint)};
}

ParamSpec cp(std::string name, std::string fallback, std::string constraint) {
  return {std::move(name), ParamSpec::Kind::choice, std::move(fallback), std::move(constraint)};
}

std::vector<CatalogEntry> make_entries() {
  std::vector<CatalogEntry> es;

  es.push_back({"additive-weyl",
                "deformed Weyl algebra on n pairs with y_i x_i - q_i x_i y_i = 1",
                {ip("n", "1", "1..3")},
                {"the constants q_1..q_n stay symbolic"},
                build_additive_weyl});
  es.push_back({"algebra-u",
                "operators over k[x_1..x_n] with z_i y_i - q^2 y_i z_i = -q^2 x_i^2",
                {sp("q", "unit"), ip("n", "1", "1..3")},
                {},
                build_algebra_u});
  es.push_back({"an-qgamma",
                "multiparameter quantized Weyl algebra with inter-level twist gamma",
                {ip("n", "2", "1..2"), sp("q1", "unit"), sp("q2", "unit, level 2 only"),
                 sp("ga", "unit, level 2 only")},
                {"towers deeper than two levels are not representable; n is capped at 2"},
                build_an_qgamma});
  es.push_back({"an-qpij",
                "quantized Weyl algebra with coupled levels: d1 x1 = q^2 x1 d1 + 1 + (q^2-1) x2 d2",
                {ip("n", "2", "1..2"), sp("q", "unit"), sp("p", "unit, level 2 only")},
                {"towers deeper than two levels are not representable; n is capped at 2"},
                build_an_qpij});
  es.push_back({"difference-ops",
                "forward difference operators on k[t_1..t_n]: F_i t_i = (t_i + 1) F_i + 1",
                {ip("n", "2", "1..4"), ip("m", "1", "1..n")},
                {},
                [](const ParamMap& pm) { return ops_family(pm, "difference-ops", "F", false, true); }});
  es.push_back({"diffusion",
                "diffusion algebra: c_ij D_i D_j - c_ji D_j D_i = x_j D_i - x_i D_j over k[x]",
                {ip("n", "2", "2 only")},
                {"the constants c_ij stay symbolic; generic constants do not close for n >= 3"},
                build_diffusion});
  es.push_back({"discrete-linear",
                "shift operators of discrete linear systems: x_i t_i = (t_i + 1) x_i",
                {ip("n", "2", "1..4")},
                {},
                build_discrete_linear});
  es.push_back({"dispin",
                "three-dimensional algebra with xy - yx = x, yz - zy = z, zx + xz = y",
                {},
                {},
                build_dispin});
  es.push_back({"dq-sq",
                "q-differential operators on quantum affine n-space",
                {sp("q", "unit"), ip("n", "2", "1..3")},
                {},
                build_dq_sq});
  es.push_back({"dqh",
                "one-variable deformation x y = q y x + h over k[y]",
                {sp("q", "unit"), sp("h", "free")},
                {},
                build_dqh});
  es.push_back({"enveloping",
                "universal enveloping algebra from an affine bracket table",
                {cp("preset", "sl2", "sl2 | heis3 | abelian"), ip("n", "3", "abelian rank, 1..4")},
                {"custom bracket tables go through build_enveloping, which checks Jacobi"},
                build_enveloping_entry});
  es.push_back({"hayashi",
                "q-oscillator algebra: z_i x_i = q x_i z_i + y_i^{-1} over Laurent weights",
                {sp("q", "unit"), ip("n", "1", "1..3")},
                {},
                build_hayashi});
  es.push_back({"maltsiniotis",
                "two-level quantum Weyl algebra with scaling twists between the levels",
                {ip("n", "2", "1..2"), sp("lam", "unit"), sp("q", "unit, level 2 only")},
                {"towers deeper than two levels are not representable; n is capped at 2"},
                build_maltsiniotis});
  es.push_back({"mixed-dh",
                "differential operator d and h-shift s acting on k[t]",
                {sp("h", "free")},
                {},
                build_mixed_dh});
  es.push_back({"multiplicative-weyl",
                "multiplicative Weyl algebra: x_j x_i = l_ji x_i x_j",
                {ip("n", "2", "2..4")},
                {"the constants l_ji stay symbolic"},
                build_multiplicative_weyl});
  es.push_back({"oq-m2",
                "quantum 2x2 matrix patch over k[u]: yx = xy - (q - q^{-1}) u v",
                {sp("q", "unit")},
                {},
                build_oq_m2});
  es.push_back({"oq-sp",
                "quantum symplectic 4-space as a two-level extension",
                {sp("q", "unit"), ip("n", "2", "1..2")},
                {"towers deeper than two levels are not representable; n is capped at 2"},
                build_oq_sp});
  es.push_back({"ore-derivation",
                "Ore extension k[t_1..t_m][x; delta] with delta(t_i) = t_i",
                {ip("m", "1", "1..4")},
                {},
                build_ore_derivation});
  es.push_back({"polynomial",
                "commutative polynomial ring in n variables",
                {ip("n", "2", "1..6")},
                {},
                build_polynomial});
  es.push_back({"q-heisenberg",
                "q-Heisenberg algebra on n triples (x_i, y_i, z_i)",
                {sp("q", "unit"), ip("n", "1", "1..3")},
                {},
                build_q_heisenberg});
  es.push_back({"qdiff-ops",
                "Jackson q-difference operators: D_i t_i = q t_i D_i + 1",
                {sp("q", "unit"), ip("n", "2", "1..4"), ip("m", "1", "1..n")},
                {},
                [](const ParamMap& pm) { return ops_family(pm, "qdiff-ops", "D", true, true); }});
  es.push_back({"qdilation-ops",
                "q-dilation operators: H_i t_i = q t_i H_i",
                {sp("q", "unit"), ip("n", "2", "1..4"), ip("m", "1", "1..n")},
                {},
                [](const ParamMap& pm) { return ops_family(pm, "qdilation-ops", "H", true, false); }});
  es.push_back({"quadratic3",
                "quadratic algebra on three generators x, y, z with derivation tails",
                {sp("a1", "free"), sp("a4", "free"), sp("a5", "free"), sp("a6", "free"),
                 sp("xi1", "free")},
                {"restricted to the associative slice xi2 = 0, a2 = a5 / 2, a3 = 0"},
                build_quadratic3});
  es.push_back({"quantum-space",
                "coordinate ring of quantum affine n-space: x_j x_i = q x_i x_j",
                {sp("q", "unit"), ip("n", "2", "1..4"), ip("multi", "0", "0..1")},
                {"multi = 1 gives independent constants q_ji over QQ(q21, ...)"},
                build_quantum_space});
  es.push_back({"quantum-torus",
                "quantum affine n-space with the first r variables inverted",
                {sp("q", "unit"), ip("n", "2", "1..4"), ip("r", "n", "1..n"),
                 ip("multi", "0", "0..1")},
                {"multi = 1 gives independent constants q_ji over QQ(q21, ...)"},
                build_quantum_torus});
  es.push_back({"shift",
                "shift operator algebra: x t = (t - h) x",
                {sp("h", "free")},
                {},
                build_shift});
  es.push_back({"shift-ops",
                "coordinate shifts in m of n directions: E_i t_i = (t_i + 1) E_i",
                {ip("n", "2", "1..4"), ip("m", "1", "1..n")},
                {},
                [](const ParamMap& pm) { return ops_family(pm, "shift-ops", "E", false, false); }});
  es.push_back({"skew3d",
                "three-dimensional skew polynomial algebra: yx = q xy + x, zy = q yz + z, zx = xz",
                {sp("q", "unit")},
                {"both deformation constants must coincide; independent constants fail the "
                 "overlap conditions"},
                build_skew3d});
  es.push_back({"uq-sl2",
                "quantum sl(2) with invertible Cartan part: xy - yx = (z - z^{-1})/(q - q^{-1})",
                {sp("q", "unit, q^2 != 1")},
                {},
                build_uq_sl2});
  es.push_back({"uso3",
                "nonstandard q-deformation of so(3) on I1, I2, I3",
                {sp("s", "unit")},
                {},
                build_uso3});
  es.push_back({"vq-sl3",
                "six quantum root vectors of sl(3) over the weight coordinates k[l1,l2,k1,k2]",
                {sp("q", "unit, q^4 != 1")},
                {},
                build_vq_sl3});
  es.push_back({"weyl",
                "Weyl algebra of polynomial differential operators: d_j t_i = t_i d_j + delta_ij",
                {ip("n", "2", "1..4")},
                {},
                build_weyl});
  es.push_back({"weyl-ring",
                "differential operators in t_1..t_n over the enlarged base k[u_1..u_m]",
                {ip("n", "1", "1..3"), ip("m", "1", "1..3")},
                {},
                build_weyl_ring});
  es.push_back({"witten",
                "three-generator deformation of sl(2) with quadratic tails",
                {sp("q", "unit"), sp("xi2", "free"), sp("xi5", "unit"), sp("xi6", "free"),
                 sp("xi7", "free")},
                {"the seven-constant family is associative only on this five-parameter slice"},
                build_witten});
  es.push_back({"woronowicz",
                "deformation of sl(2) twisted by nu^2 and nu^4",
                {sp("nu", "unit")},
                {"module theory downstream assumes nu is not a root of unity; the"
                 " presentation itself only needs nu invertible"},
                build_woronowicz});

  std::sort(es.begin(), es.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) { return a.key < b.key; });
  for (size_t i = 1; i < es.size(); ++i)
    if (es[i - 1].key == es[i].key) throw Error("duplicate catalog key " + es[i].key);
  return es;
}

std::vector<mpq_class> lie_bracket(const LieTable& t, size_t a, size_t b) {
  std::vector<mpq_class> out(t.n + 1);
  if (a == b) return out;
  const bool flip = a > b;
  auto it = t.bracket.find(flip ? std::make_pair(b, a) : std::make_pair(a, b));
  if (it == t.bracket.end()) return out;
  for (size_t k = 0; k < it->second.size(); ++k) out[k] = flip ? mpq_class(-it->second[k]) : it->second[k];
  return out;
}

}  // namespace

PresPtr build_enveloping(const std::string& name, const std::vector<std::string>& vars,
                         const LieTable& table) {
  const size_t n = table.n;
  if (n == 0 || vars.size() != n)
    throw Error("enveloping: variable list does not match the table rank");
  for (const auto& [key, vec] : table.bracket) {
    if (key.first >= key.second || key.second >= n)
      throw Error("enveloping: bracket index pair out of range");
    if (vec.size() > n + 1) throw Error("enveloping: bracket vector longer than rank + 1");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        std::vector<mpq_class> acc(n + 1);
        auto add_term = [&](size_t a, size_t b, size_t c) {
          auto ab = lie_bracket(table, a, b);
          for (size_t m = 0; m < n; ++m) {
            if (ab[m + 1] == 0) continue;
            auto mc = lie_bracket(table, m, c);
            for (size_t u = 0; u <= n; ++u) acc[u] += ab[m + 1] * mc[u];
          }
        };
        add_term(i, j, k);
        add_term(j, k, i);
        add_term(k, i, j);
        for (const auto& v : acc)
          if (v != 0)
            throw Error("enveloping: structure constants fail the Jacobi identity at (" +
                        std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                        ")");
      }

  Presentation::Data d;
  d.name = name;
  d.ring = RingDesc::rationals();
  d.vars = vars;
  d.sigma.assign(n, id_endo());
  d.delta.resize(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      auto br = lie_bracket(table, i, j);
      // x_j x_i = x_i x_j - [x_i, x_j]
      AffineTail tail;
      bool any = false;
      if (br[0] != 0) {
        tail.constant = sc(RingElem::from_mpq(d.ring, -br[0]));
        any = true;
      }
      for (size_t k = 0; k < n; ++k)
        if (br[k + 1] != 0) {
          tail.linear[static_cast<int>(k)] = sc(RingElem::from_mpq(d.ring, -br[k + 1]));
          any = true;
        }
      if (any) d.tails[{static_cast<int>(i), static_cast<int>(j)}] = std::move(tail);
    }
  return Presentation::make(std::move(d));
}

const std::vector<CatalogEntry>& list_catalog() {
  static const std::vector<CatalogEntry> entries = make_entries();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& key) {
  for (const auto& e : list_catalog())
    if (e.key == key) return e;
  throw Error("unknown catalog key: " + key);
}

BuiltAlgebra instantiate(const std::string& key, const ParamMap& params) {
  const CatalogEntry& e = catalog_entry(key);
  for (const auto& [k, v] : params) {
    (void)v;
    bool known = false;
    for (const auto& p : e.params) known = known || p.name == k;
    if (!known) throw Error("catalog entry " + key + " has no parameter '" + k + "'");
  }
  return e.build(params);
}

}  // namespace spbw

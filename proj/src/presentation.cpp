#include "spbw/presentation.hpp"

#include <algorithm>
#include <set>

#include "spbw/engine.hpp"
#include "spbw/poly.hpp"

namespace spbw {

// ------------------------------------------------------------------- Coeff

namespace {

SkewPtr box(SkewPoly f) { return std::make_shared<SkewPoly>(std::move(f)); }

void need_same_kind(const Coeff& a, const Coeff& b) {
  if (a.boxed() != b.boxed()) throw Error("mixed coefficient domains");
}

}  // namespace

Coeff coeff_zero(const Presentation& p) {
  if (p.is_nested()) return {RingElem(), box(SkewPoly::zero(p.nested_base()))};
  return {RingElem::zero(p.ring()), nullptr};
}

Coeff coeff_one(const Presentation& p) { return coeff_from_int(p, 1); }

Coeff coeff_from_int(const Presentation& p, long v) {
  return coeff_from_ring(p, RingElem::from_int(p.ring(), v));
}

Coeff coeff_from_ring(const Presentation& p, RingElem r) {
  if (!same_ring(r.ring(), p.ring())) throw Error("coefficient from wrong ring");
  if (p.is_nested()) return {RingElem(), box(SkewPoly::from_ring(p.nested_base(), r))};
  return {std::move(r), nullptr};
}

Coeff coeff_from_inner(const Presentation& p, SkewPoly f) {
  if (!p.is_nested() || f.pres() != p.nested_base())
    throw Error("inner coefficient for a non-matching presentation");
  return {RingElem(), box(std::move(f))};
}

bool coeff_is_zero(const Coeff& a) {
  return a.boxed() ? a.inner->is_zero() : a.scalar.is_zero();
}

bool coeff_is_one(const Coeff& a) {
  if (!a.boxed()) return a.scalar.is_one();
  return a.inner->nterms() == 1 && a.inner->leading().first.is_zero() &&
         coeff_is_one(a.inner->leading().second);
}

bool coeff_eq(const Coeff& a, const Coeff& b) {
  need_same_kind(a, b);
  return a.boxed() ? a.inner->eq(*b.inner) : a.scalar == b.scalar;
}

int coeff_cmp(const Coeff& a, const Coeff& b) {
  need_same_kind(a, b);
  if (!a.boxed()) return a.scalar.cmp(b.scalar);
  auto ia = a.inner->terms().begin();
  auto ib = b.inner->terms().begin();
  for (; ia != a.inner->terms().end() && ib != b.inner->terms().end(); ++ia, ++ib) {
    const int ce = cmp_mon(ia->first, ib->first);
    if (ce != 0) return ce;
    const int cc = coeff_cmp(ia->second, ib->second);
    if (cc != 0) return cc;
  }
  if (ia != a.inner->terms().end()) return 1;
  if (ib != b.inner->terms().end()) return -1;
  return 0;
}

Coeff coeff_add(const Coeff& a, const Coeff& b) {
  need_same_kind(a, b);
  if (a.boxed()) return {RingElem(), box(a.inner->add(*b.inner))};
  return {a.scalar + b.scalar, nullptr};
}

Coeff coeff_neg(const Coeff& a) {
  if (a.boxed()) return {RingElem(), box(a.inner->neg())};
  return {-a.scalar, nullptr};
}

Coeff coeff_sub(const Coeff& a, const Coeff& b) { return coeff_add(a, coeff_neg(b)); }

Coeff coeff_mul(const Coeff& a, const Coeff& b) {
  need_same_kind(a, b);
  if (a.boxed()) return {RingElem(), box(mul(*a.inner, *b.inner))};
  return {a.scalar * b.scalar, nullptr};
}

std::optional<Coeff> coeff_try_invert(const Coeff& a) {
  if (!a.boxed()) {
    auto i = a.scalar.try_invert();
    if (!i) return std::nullopt;
    return Coeff{std::move(*i), nullptr};
  }
  // units of the extension are the units of the innermost ring (degree
  // argument over a domain): only constants can invert
  if (a.inner->nterms() != 1 || !a.inner->leading().first.is_zero()) return std::nullopt;
  auto ci = coeff_try_invert(a.inner->leading().second);
  if (!ci) return std::nullopt;
  return Coeff{RingElem(), box(SkewPoly::constant(a.inner->pres(), std::move(*ci)))};
}

std::string coeff_to_string(const Coeff& a) {
  return a.boxed() ? a.inner->to_string() : a.scalar.to_string();
}

bool coeff_renders_as_sum(const Coeff& a) {
  if (!a.boxed()) return renders_as_sum(a.scalar);
  if (a.inner->nterms() > 1) return true;
  if (a.inner->nterms() == 1 && a.inner->leading().first.is_zero())
    return coeff_renders_as_sum(a.inner->leading().second);
  return false;
}

// ---------------------------------------------------------- image helpers

namespace {

// scalar-only view of an image table, for application on tower elements
GenImages scalar_images(const std::map<std::string, Coeff>& m, const RingPtr& ring,
                        const char* what) {
  GenImages out;
  for (const auto& [name, img] : m) {
    if (!ring->has_gen(name)) continue;  // inner-variable keys handled elsewhere
    if (img.boxed())
      throw Error(std::string(what) + ": image of ring generator " + name +
                  " must stay in the coefficient ring");
    out.emplace(name, img.scalar);
  }
  return out;
}

// apply an endomorphism image table to an inner-algebra element (depth-one
// nesting: the inner presentation itself is flat)
SkewPoly map_inner_poly(const PresPtr& inner, const std::map<std::string, Coeff>& images,
                        const GenImages& ring_images, const SkewPoly& f) {
  if (inner->is_nested()) throw Error("unsupported nesting depth");
  SkewPoly acc = SkewPoly::zero(inner);
  for (const auto& [beta, cb] : f.terms()) {
    SkewPoly term = SkewPoly::from_ring(inner, apply_hom(cb.scalar, ring_images));
    for (size_t k = 0; k < beta.e.size(); ++k) {
      if (beta.e[k] < 0) throw Error("endomorphism on a localized inner variable");
      if (beta.e[k] == 0) continue;
      auto it = images.find(inner->vars()[k]);
      SkewPoly img = it == images.end() ? SkewPoly::var(inner, k) : *it->second.inner;
      for (int32_t t = 0; t < beta.e[k]; ++t) term = mul(term, img);
    }
    acc = acc.add(term);
  }
  return acc;
}

// sigma-derivation of a tower scalar, valued in the inner algebra; sigma
// images of tower generators are scalars, delta images may be inner elements
SkewPoly derive_tower_scalar(const PresPtr& inner, const std::map<std::string, Coeff>& dimages,
                             const GenImages& ring_sigma, const RingPtr& level,
                             const RingElem& c) {
  const RingPtr top = inner->ring();
  switch (level->kind()) {
    case RingKind::rationals:
    case RingKind::rational_functions:
      // validate() rejects derivations on field generators of nested
      // presentations, so constants at these levels derive to zero
      return SkewPoly::zero(inner);
    default: {
      SkewPoly acc = SkewPoly::zero(inner);
      const auto& gens = level->gens();
      for (const auto& [e, cb] : embed(level, c).poly_terms()) {
        SkewPoly res = derive_tower_scalar(inner, dimages, ring_sigma, level->base(), cb);
        RingElem sig = apply_hom(embed(top, cb), ring_sigma);
        for (size_t k = 0; k < e.size(); ++k) {
          if (e[k] == 0) continue;
          RingElem g = embed(top, RingElem::gen(level, gens[k]));
          RingElem sg = apply_hom(g, ring_sigma);
          auto dit = dimages.find(gens[k]);
          SkewPoly dg = dit == dimages.end() || !dit->second.boxed()
                            ? (dit == dimages.end()
                                   ? SkewPoly::zero(inner)
                                   : SkewPoly::from_ring(inner, dit->second.scalar))
                            : *dit->second.inner;
          int32_t ee = e[k];
          if (ee < 0) {
            auto gi = g.try_invert();
            auto sgi = sg.try_invert();
            if (!gi || !sgi) throw Error("derivation on non-invertible generator power");
            dg = dg.scale(coeff_from_ring(*inner, -*sgi));
            dg = mul(dg, SkewPoly::from_ring(inner, *gi));
            g = *gi;
            sg = *sgi;
            ee = -ee;
          }
          // delta(g^e) = sum_t sigma(g)^t delta(g) g^{e-1-t}
          SkewPoly dge = SkewPoly::zero(inner);
          if (!dg.is_zero()) {
            for (int32_t t = 0; t < ee; ++t) {
              SkewPoly part = dg.scale(coeff_from_ring(*inner, sg.pow(t)));
              part = mul(part, SkewPoly::from_ring(inner, g.pow(ee - 1 - t)));
              dge = dge.add(part);
            }
          }
          // delta(prefix g^e) = sigma(prefix) delta(g^e) + delta(prefix) g^e
          res = dge.scale(coeff_from_ring(*inner, sig))
                    .add(mul(res, SkewPoly::from_ring(inner, g.pow(ee))));
          sig = sig * sg.pow(ee);
        }
        acc = acc.add(res);
      }
      return acc;
    }
  }
}

}  // namespace

// ---------------------------------------------------------- Presentation

struct PresAccess {
  static std::shared_ptr<Presentation> create() {
    return std::shared_ptr<Presentation>(new Presentation());
  }
  static Presentation::Data& data(Presentation& p) { return p.d_; }
  static void finish(Presentation& p);
};

void PresAccess::finish(Presentation& p) {
  auto& d = p.d_;
  const size_t n = d.vars.size();
  if (n == 0) throw Error("a presentation needs at least one variable");
  if (d.nested_base) {
    if (!d.ring) d.ring = d.nested_base->ring();
    if (!same_ring(d.ring, d.nested_base->ring()))
      throw Error("nested presentation must share the inner tower ring");
  }
  if (!d.ring) throw Error("presentation needs a coefficient ring");

  std::set<std::string> names;
  for (const auto& g : d.ring->all_gens()) names.insert(g);
  for (PresPtr q = d.nested_base; q; q = q->nested_base()) {
    for (const auto& v : q->vars()) {
      if (!names.insert(v).second) throw Error("duplicate name in tower: " + v);
    }
  }
  for (const auto& v : d.vars) {
    if (v.empty()) throw Error("empty variable name");
    if (!names.insert(v).second) throw Error("duplicate name: " + v);
  }

  d.invertible.resize(n, 0);
  d.sigma.resize(n);
  d.delta.resize(n);
  p.n_invertible_ = 0;
  for (size_t i = 0; i < n; ++i) {
    if (d.invertible[i]) {
      if (i != p.n_invertible_)
        throw Error("localized variables must form a prefix of the variable list");
      ++p.n_invertible_;
    }
  }

  if (p.n_invertible_ > 0 && d.nested_base)
    throw Error("localized variables in nested presentations are unsupported");

  const bool nested = d.nested_base != nullptr;
  auto payload_ok = [nested](const Coeff& cc) { return cc.boxed() == nested; };
  for (const auto& [ij, cc] : d.c) {
    const auto [i, j] = ij;
    if (i < 0 || j <= i || size_t(j) >= n) throw Error("constant index out of range");
    if (!payload_ok(cc)) throw Error("coefficient payload does not match the presentation");
    if (coeff_is_zero(cc)) throw Error("c constant must be nonzero");
  }
  // drop zero tail parts; drop empty tails
  for (auto it = d.tails.begin(); it != d.tails.end();) {
    const auto [i, j] = it->first;
    if (i < 0 || j <= i || size_t(j) >= n) throw Error("tail index out of range");
    auto& t = it->second;
    if (!t.constant.scalar.valid() && !t.constant.inner) t.constant = coeff_zero(p);
    if (!payload_ok(t.constant)) throw Error("tail payload does not match the presentation");
    for (auto lt = t.linear.begin(); lt != t.linear.end();) {
      if (lt->first < 0 || size_t(lt->first) >= n) throw Error("tail variable out of range");
      if (!payload_ok(lt->second)) throw Error("tail payload does not match the presentation");
      lt = coeff_is_zero(lt->second) ? t.linear.erase(lt) : std::next(lt);
    }
    if (coeff_is_zero(t.constant) && t.linear.empty()) {
      it = d.tails.erase(it);
    } else {
      ++it;
    }
  }
  // drop zero derivation images
  for (auto& ds : d.delta) {
    for (auto it = ds.images.begin(); it != ds.images.end();) {
      it = coeff_is_zero(it->second) ? ds.images.erase(it) : std::next(it);
    }
  }

  p.one_ = coeff_one(p);
  p.quasi_commutative_ = d.tails.empty() &&
                         std::all_of(d.delta.begin(), d.delta.end(),
                                     [](const DerivSpec& s) { return s.images.empty(); });
  p.bijective_claimed_ = std::all_of(d.sigma.begin(), d.sigma.end(), [](const EndoSpec& s) {
    return s.inverse_images.has_value();
  });
  if (p.bijective_claimed_) {
    for (const auto& [ij, cc] : d.c) {
      if (!coeff_try_invert(cc)) p.bijective_claimed_ = false;
    }
  }

  if (!d.nested_base) {
    p.sigma_ring_.resize(n);
    p.sigma_inv_ring_.resize(n);
    p.delta_ring_.resize(n);
    for (size_t i = 0; i < n; ++i) {
      p.sigma_ring_[i] = scalar_images(d.sigma[i].images, d.ring, "sigma");
      if (d.sigma[i].inverse_images)
        p.sigma_inv_ring_[i] = scalar_images(*d.sigma[i].inverse_images, d.ring, "sigma inverse");
      p.delta_ring_[i] = scalar_images(d.delta[i].images, d.ring, "delta");
    }
  }
}

PresPtr Presentation::make(Data d) {
  auto p = PresAccess::create();
  PresAccess::data(*p) = std::move(d);
  PresAccess::finish(*p);
  return p;
}

int Presentation::var_index(const std::string& name) const {
  for (size_t i = 0; i < d_.vars.size(); ++i) {
    if (d_.vars[i] == name) return int(i);
  }
  return -1;
}

const Coeff& Presentation::c(size_t i, size_t j) const {
  if (j >= nvars() || i >= j) throw Error("c(i,j) needs i < j < nvars");
  auto it = d_.c.find({int(i), int(j)});
  return it == d_.c.end() ? one_ : it->second;
}

const AffineTail* Presentation::tail(size_t i, size_t j) const {
  if (j >= nvars() || i >= j) throw Error("tail(i,j) needs i < j < nvars");
  auto it = d_.tails.find({int(i), int(j)});
  return it == d_.tails.end() ? nullptr : &it->second;
}

Coeff Presentation::apply_sigma(size_t i, const Coeff& r) const {
  const EndoSpec& s = d_.sigma.at(i);
  if (!is_nested()) return {apply_hom(r.scalar, sigma_ring_[i]), nullptr};
  GenImages ri = scalar_images(s.images, d_.ring, "sigma");
  return {RingElem(), box(map_inner_poly(d_.nested_base, s.images, ri, *r.inner))};
}

Coeff Presentation::apply_sigma_inv(size_t i, const Coeff& r) const {
  const EndoSpec& s = d_.sigma.at(i);
  if (!s.inverse_images) throw Error("no verified inverse for sigma of " + d_.vars.at(i));
  if (!is_nested()) return {apply_hom(r.scalar, sigma_inv_ring_[i]), nullptr};
  GenImages ri = scalar_images(*s.inverse_images, d_.ring, "sigma inverse");
  return {RingElem(), box(map_inner_poly(d_.nested_base, *s.inverse_images, ri, *r.inner))};
}

Coeff Presentation::apply_delta(size_t i, const Coeff& r) const {
  if (!is_nested()) {
    if (d_.delta[i].images.empty()) return {RingElem::zero(d_.ring), nullptr};
    return {apply_sigma_deriv(r.scalar, sigma_ring_[i], delta_ring_[i]), nullptr};
  }
  const auto& simg = d_.sigma[i].images;
  const auto& dimg = d_.delta[i].images;
  const PresPtr& inner = d_.nested_base;
  if (dimg.empty()) return coeff_zero(*this);
  GenImages ring_sigma = scalar_images(simg, d_.ring, "sigma");
  SkewPoly acc = SkewPoly::zero(inner);
  for (const auto& [beta, cb] : r.inner->terms()) {
    // delta(c y^beta) = sigma(c) delta(y^beta) + delta(c) y^beta
    SkewPoly res = derive_tower_scalar(inner, dimg, ring_sigma, d_.ring, cb.scalar);
    SkewPoly sig = SkewPoly::from_ring(inner, apply_hom(cb.scalar, ring_sigma));
    for (size_t k = 0; k < beta.e.size(); ++k) {
      if (beta.e[k] < 0) throw Error("derivation on a localized inner variable");
      for (int32_t t = 0; t < beta.e[k]; ++t) {
        const std::string& yk = inner->vars()[k];
        SkewPoly y = SkewPoly::var(inner, k);
        auto sit = simg.find(yk);
        SkewPoly sy = sit == simg.end() ? y : *sit->second.inner;
        auto dit = dimg.find(yk);
        SkewPoly dy = dit == dimg.end() ? SkewPoly::zero(inner) : *dit->second.inner;
        res = mul(sig, dy).add(mul(res, y));
        sig = mul(sig, sy);
      }
    }
    acc = acc.add(res);
  }
  return {RingElem(), box(std::move(acc))};
}

RingElem apply_endo(const EndoSpec& s, const RingElem& r) {
  GenImages im = scalar_images(s.images, r.ring(), "endomorphism");
  return apply_hom(r, im);
}

RingElem apply_deriv(const DerivSpec& d, const EndoSpec& twist, const RingElem& r) {
  GenImages sm = scalar_images(twist.images, r.ring(), "endomorphism");
  GenImages dm = scalar_images(d.images, r.ring(), "derivation");
  return apply_sigma_deriv(r, sm, dm);
}

// ---------------------------------------------------------------- validate

namespace {

// every generator the image tables may key on
std::vector<std::string> image_domain(const Presentation& p) {
  std::vector<std::string> names = p.ring()->all_gens();
  for (PresPtr q = p.nested_base(); q; q = q->nested_base()) {
    names.insert(names.end(), q->vars().begin(), q->vars().end());
  }
  return names;
}

Coeff generator_coeff(const Presentation& p, const std::string& name) {
  if (p.ring()->has_gen(name)) return coeff_from_ring(p, RingElem::gen(p.ring(), name));
  if (p.is_nested()) {
    const int k = p.nested_base()->var_index(name);
    if (k >= 0) return coeff_from_inner(p, SkewPoly::var(p.nested_base(), size_t(k)));
  }
  throw Error("unknown generator: " + name);
}

void check_image_keys(const Presentation& p, const std::map<std::string, Coeff>& images,
                      const std::string& loc, ValidationReport& rep) {
  const auto dom = image_domain(p);
  for (const auto& [name, img] : images) {
    if (std::find(dom.begin(), dom.end(), name) == dom.end()) {
      rep.add(Severity::error, loc, "image given for unknown generator " + name);
    } else if (!img.boxed() && !same_ring(img.scalar.ring(), p.ring())) {
      rep.add(Severity::error, loc, "image of " + name + " lives in the wrong ring");
    }
  }
}

}  // namespace

ValidationReport validate(const PresPtr& pp) {
  const Presentation& p = *pp;
  ValidationReport rep;
  const size_t n = p.nvars();

  for (size_t i = 0; i < n; ++i) {
    const std::string loc = "sigma " + p.vars()[i];
    check_image_keys(p, p.sigma(i).images, loc, rep);
    if (p.sigma(i).inverse_images)
      check_image_keys(p, *p.sigma(i).inverse_images, loc + " inverse", rep);
    check_image_keys(p, p.delta(i).images, "delta " + p.vars()[i], rep);

    // field and Laurent generators must land on units
    for (const auto& [name, img] : p.sigma(i).images) {
      if (img.boxed() || !p.ring()->has_gen(name)) continue;
      if (!RingElem::gen(p.ring(), name).is_unit()) continue;
      if (!img.scalar.is_unit())
        rep.add(Severity::error, loc, "image of invertible generator " + name + " is not a unit");
    }
    if (p.is_nested()) {
      for (const auto& [name, img] : p.delta(i).images) {
        if (p.ring()->has_gen(name) && RingElem::gen(p.ring(), name).is_unit() &&
            !coeff_is_zero(img))
          rep.add(Severity::error, "delta " + p.vars()[i],
                  "derivations on field generators of nested presentations are unsupported");
      }
    }
  }
  if (!rep.ok) return rep;

  // claimed inverses must round-trip on every generator
  for (size_t i = 0; i < n; ++i) {
    if (!p.sigma(i).inverse_images) continue;
    for (const auto& name : image_domain(p)) {
      Coeff g = generator_coeff(p, name);
      bool ok = true;
      try {
        ok = coeff_eq(p.apply_sigma(i, p.apply_sigma_inv(i, g)), g) &&
             coeff_eq(p.apply_sigma_inv(i, p.apply_sigma(i, g)), g);
      } catch (const Error& e) {
        rep.add(Severity::error, "sigma " + p.vars()[i], e.what());
        continue;
      }
      if (!ok)
        rep.add(Severity::error, "sigma " + p.vars()[i],
                "inverse images do not round-trip on " + name);
    }
  }

  // unit constants back the bijectivity claim
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (!coeff_try_invert(p.c(i, j)))
        rep.add(Severity::note, "c(" + p.vars()[i] + "," + p.vars()[j] + ")",
                "constant is not a unit; the extension is not bijective");
    }
  }

  // localized variables need the quasi-commutative bijective shape
  if (p.n_invertible() > 0) {
    if (!p.quasi_commutative())
      rep.add(Severity::error, "vars", "localized variables require a quasi-commutative core");
    if (!p.bijective_claimed())
      rep.add(Severity::error, "vars", "localized variables require a bijective core");
  }

  // nested consistency: each outer sigma must be a ring homomorphism of the
  // inner algebra and each outer delta a sigma-twisted derivation of it, as
  // probed on the inner defining relations
  if (p.is_nested() && rep.ok) {
    const PresPtr& in = p.nested_base();
    const size_t m = in->nvars();
    auto var_coeff = [&](size_t k) { return coeff_from_inner(p, SkewPoly::var(in, k)); };
    for (size_t i = 0; i < n; ++i) {
      const std::string loc = p.vars()[i] + " over " + in->name();
      for (size_t l = 0; l < m; ++l) {
        for (size_t mm = l + 1; mm < m; ++mm) {
          Coeff nf = coeff_from_inner(p, mul(SkewPoly::var(in, mm), SkewPoly::var(in, l)));
          Coeff lhs = p.apply_sigma(i, nf);
          Coeff rhs = coeff_mul(p.apply_sigma(i, var_coeff(mm)), p.apply_sigma(i, var_coeff(l)));
          if (!coeff_eq(lhs, rhs))
            rep.add(Severity::error, loc,
                    "sigma is not a homomorphism on the relation for (" + in->vars()[l] + "," +
                        in->vars()[mm] + ")");
          // delta consistency via the two-factor Leibniz split
          Coeff word =
              coeff_add(coeff_mul(p.apply_sigma(i, var_coeff(mm)), p.apply_delta(i, var_coeff(l))),
                        coeff_mul(p.apply_delta(i, var_coeff(mm)), var_coeff(l)));
          Coeff rewritten = p.apply_delta(i, nf);
          if (!coeff_eq(word, rewritten))
            rep.add(Severity::error, loc,
                    "delta is inconsistent on the relation for (" + in->vars()[l] + "," +
                        in->vars()[mm] + ")");
        }
        for (const auto& g : in->ring()->all_gens()) {
          Coeff gc = coeff_from_ring(p, RingElem::gen(p.ring(), g));
          Coeff nf = coeff_mul(var_coeff(l), gc);  // y_l g in normal form
          Coeff lhs = p.apply_sigma(i, nf);
          Coeff rhs = coeff_mul(p.apply_sigma(i, var_coeff(l)), p.apply_sigma(i, gc));
          if (!coeff_eq(lhs, rhs))
            rep.add(Severity::error, loc,
                    "sigma is not a homomorphism on " + in->vars()[l] + "*" + g);
          Coeff word =
              coeff_add(coeff_mul(p.apply_sigma(i, var_coeff(l)), p.apply_delta(i, gc)),
                        coeff_mul(p.apply_delta(i, var_coeff(l)), gc));
          if (!coeff_eq(word, p.apply_delta(i, nf)))
            rep.add(Severity::error, loc,
                    "delta is inconsistent on " + in->vars()[l] + "*" + g);
        }
      }
    }
  }

  if (p.quasi_commutative())
    rep.add(Severity::note, "presentation", "quasi-commutative: all derivations and tails vanish");
  if (p.bijective_claimed())
    rep.add(Severity::note, "presentation", "bijective: verified inverses and unit constants");
  return rep;
}

// ----------------------------------------------------------------- flatten

namespace {

// sigma image of an inner variable must be unit * the same variable
std::optional<Coeff> unit_times_var(const SkewPoly& img, size_t k) {
  if (img.nterms() != 1) return std::nullopt;
  const auto& [a, c] = *img.terms().begin();
  if (ev_deg(a) != 1 || a.e[k] != 1) return std::nullopt;
  if (!coeff_try_invert(c)) return std::nullopt;
  return c;
}

// split an inner-algebra element into (ring constant, linear coefficients);
// fails when any term has degree > 1
bool split_affine(const SkewPoly& f, RingElem& constant, std::map<int, RingElem>& linear) {
  constant = RingElem::zero(f.pres()->ring());
  linear.clear();
  for (const auto& [a, c] : f.terms()) {
    if (c.boxed()) return false;
    const int64_t d = ev_deg(a);
    if (d == 0) {
      constant = c.scalar;
    } else if (d == 1) {
      for (size_t k = 0; k < a.e.size(); ++k) {
        if (a.e[k] == 1) linear[int(k)] = c.scalar;
      }
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

PresPtr flatten(const PresPtr& pp) {
  const Presentation& p = *pp;
  if (!p.is_nested()) return pp;
  const PresPtr& in = p.nested_base();
  if (in->is_nested()) throw Error("unsupported nesting: inner presentation is itself nested");
  if (!in->quasi_commutative() || !in->bijective_claimed())
    throw Error("unsupported nesting: inner presentation must be quasi-commutative and bijective");
  if (p.n_invertible() > 0 || in->n_invertible() > 0)
    throw Error("unsupported nesting: localized variables cannot be flattened");

  const size_t m = in->nvars();
  const size_t n = p.nvars();
  Presentation::Data d;
  d.name = p.name() + "-flat";
  d.ring = in->ring();
  d.vars = in->vars();
  d.vars.insert(d.vars.end(), p.vars().begin(), p.vars().end());
  d.sigma.resize(m + n);
  d.delta.resize(m + n);

  auto as_scalar = [&](const Coeff& c, const char* what) {
    if (!c.boxed()) return c.scalar;
    if (c.inner->is_zero()) return RingElem::zero(in->ring());
    if (c.inner->nterms() == 1 && c.inner->leading().first.is_zero() &&
        !c.inner->leading().second.boxed())
      return c.inner->leading().second.scalar;
    throw Error(std::string("unsupported nesting: ") + what + " does not flatten to the ring");
  };

  // inner data carries over verbatim
  for (size_t i = 0; i < m; ++i) {
    d.sigma[i] = in->sigma(i);
    d.delta[i] = in->delta(i);
  }
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      if (!coeff_is_one(in->c(i, j))) d.c[{int(i), int(j)}] = in->c(i, j);
    }
  }

  for (size_t k = 0; k < n; ++k) {
    const size_t jk = m + k;
    EndoSpec& sk = d.sigma[jk];
    DerivSpec& dk = d.delta[jk];
    // ring part of sigma/delta
    for (const auto& [name, img] : p.sigma(k).images) {
      if (in->var_index(name) >= 0) continue;
      sk.images[name] = Coeff{as_scalar(img, "a sigma image"), nullptr};
    }
    if (p.sigma(k).inverse_images) {
      sk.inverse_images.emplace();
      for (const auto& [name, img] : *p.sigma(k).inverse_images) {
        if (in->var_index(name) >= 0) continue;
        (*sk.inverse_images)[name] = Coeff{as_scalar(img, "a sigma inverse image"), nullptr};
      }
    }
    for (const auto& [name, img] : p.delta(k).images) {
      if (in->var_index(name) >= 0) continue;
      dk.images[name] = Coeff{as_scalar(img, "a delta image"), nullptr};
    }
    // variable part: x_outer y_l = sigma(y_l) x_outer + delta(y_l) becomes a
    // (y_l, x_outer) relation with constant from the unit and an affine tail
    for (size_t l = 0; l < m; ++l) {
      const auto& yname = in->vars()[l];
      Coeff u = coeff_one(*in);
      auto sit = p.sigma(k).images.find(yname);
      if (sit != p.sigma(k).images.end()) {
        auto uu = unit_times_var(*sit->second.inner, l);
        if (!uu)
          throw Error("unsupported nesting: sigma(" + yname +
                      ") is not a unit multiple of the variable");
        u = *uu;
      }
      if (!coeff_is_one(u)) d.c[{int(l), int(jk)}] = Coeff{u.scalar, nullptr};
      auto dit = p.delta(k).images.find(yname);
      if (dit != p.delta(k).images.end() && !coeff_is_zero(dit->second)) {
        RingElem cst;
        std::map<int, RingElem> lin;
        if (!split_affine(*dit->second.inner, cst, lin))
          throw Error("unsupported nesting: delta(" + yname + ") is not affine");
        AffineTail t;
        t.constant = Coeff{cst, nullptr};
        for (auto& [idx, v] : lin) t.linear[idx] = Coeff{v, nullptr};
        d.tails[{int(l), int(jk)}] = std::move(t);
      }
    }
  }

  // outer pair relations
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const Coeff& cc = p.c(i, j);
      RingElem cs = as_scalar(cc, "a pair constant");
      if (!cs.is_one()) d.c[{int(m + i), int(m + j)}] = Coeff{cs, nullptr};
      if (const AffineTail* t = p.tail(i, j)) {
        AffineTail ft;
        RingElem cst;
        std::map<int, RingElem> lin;
        if (t->constant.boxed()) {
          if (!split_affine(*t->constant.inner, cst, lin))
            throw Error("unsupported nesting: a tail constant is not affine");
        } else {
          cst = t->constant.scalar;
        }
        ft.constant = Coeff{cst, nullptr};
        for (auto& [idx, v] : lin) ft.linear[idx] = Coeff{v, nullptr};
        for (const auto& [idx, v] : t->linear) {
          ft.linear[int(m) + idx] = Coeff{as_scalar(v, "a tail coefficient"), nullptr};
        }
        d.tails[{int(m + i), int(m + j)}] = std::move(ft);
      }
    }
  }

  return Presentation::make(std::move(d));
}

}  // namespace spbw

#include "spbw/ring.hpp"

#include <algorithm>
#include <sstream>

#include "mpoly.hpp"

namespace spbw {

using detail::Expo;
using detail::ExpoGreater;
using detail::QPoly;

// ---------------------------------------------------------------- RingDesc

RingDesc::RingDesc(RingKind k, RingPtr base, std::vector<std::string> gens)
    : kind_(k), base_(std::move(base)), gens_(std::move(gens)) {}

RingPtr RingDesc::rationals() {
  static const RingPtr q(new RingDesc(RingKind::rationals, nullptr, {}));
  return q;
}

RingPtr RingDesc::rational_functions(std::vector<std::string> gens) {
  if (gens.empty()) throw Error("rational-function field needs at least one generator");
  return RingPtr(new RingDesc(RingKind::rational_functions, nullptr, std::move(gens)));
}

RingPtr RingDesc::poly(RingPtr base, std::vector<std::string> gens) {
  if (!base) throw Error("polynomial ring needs a base");
  if (gens.empty()) throw Error("polynomial ring needs at least one generator");
  return RingPtr(new RingDesc(RingKind::poly, std::move(base), std::move(gens)));
}

RingPtr RingDesc::laurent(RingPtr base, std::vector<std::string> gens) {
  if (!base) throw Error("Laurent ring needs a base");
  if (gens.empty()) throw Error("Laurent ring needs at least one generator");
  return RingPtr(new RingDesc(RingKind::laurent, std::move(base), std::move(gens)));
}

std::vector<std::string> RingDesc::all_gens() const {
  std::vector<std::string> out;
  if (base_) out = base_->all_gens();
  out.insert(out.end(), gens_.begin(), gens_.end());
  return out;
}

bool RingDesc::has_gen(const std::string& name) const {
  if (std::find(gens_.begin(), gens_.end(), name) != gens_.end()) return true;
  return base_ && base_->has_gen(name);
}

std::string RingDesc::to_string() const {
  switch (kind_) {
    case RingKind::rationals:
      return "QQ";
    case RingKind::rational_functions: {
      std::string s = "QQ(";
      for (size_t i = 0; i < gens_.size(); ++i) {
        if (i) s += ",";
        s += gens_[i];
      }
      return s + ")";
    }
    case RingKind::poly:
    case RingKind::laurent: {
      std::string s = base_->to_string() + "[";
      for (size_t i = 0; i < gens_.size(); ++i) {
        if (i) s += ",";
        s += gens_[i];
        if (kind_ == RingKind::laurent) s += "^+-";
      }
      return s + "]";
    }
  }
  return {};
}

bool same_ring(const RingDesc& a, const RingDesc& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind() || a.gens() != b.gens()) return false;
  if (!a.base() != !b.base()) return false;
  return !a.base() || same_ring(*a.base(), *b.base());
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_ring(*a, *b);
}

// ---------------------------------------------------------------- RingElem

struct RingElem::Rep {
  RingPtr ring;
  mpq_class rat;                                 // rationals
  QPoly num, den;                                // rational_functions
  std::map<Expo, RingElem, ExpoGreater> terms;   // poly / laurent
};

namespace {

RingElem make_rat(RingPtr r, mpq_class v) {
  auto rep = std::make_shared<RingElem::Rep>();
  rep->ring = std::move(r);
  v.canonicalize();
  rep->rat = std::move(v);
  return RingElem(std::move(rep));
}

// canonical fraction: coprime, denominator graded-lex-monic
RingElem make_ratfunc(RingPtr r, QPoly num, QPoly den) {
  if (detail::qp_is_zero(den)) throw Error("zero denominator");
  if (detail::qp_is_zero(num)) {
    den = detail::qp_const(r->gens().size(), 1);
  } else {
    QPoly g = detail::qp_gcd(num, den);
    if (!detail::qp_is_const(g) || detail::qp_const_value(g) != 1) {
      num = detail::qp_divexact(num, g);
      den = detail::qp_divexact(den, g);
    }
    const mpq_class lc = den.begin()->second;
    if (lc != 1) {
      const mpq_class inv = 1 / lc;
      num = detail::qp_scale(num, inv);
      den = detail::qp_scale(den, inv);
    }
  }
  auto rep = std::make_shared<RingElem::Rep>();
  rep->ring = std::move(r);
  rep->num = std::move(num);
  rep->den = std::move(den);
  return RingElem(std::move(rep));
}

RingElem make_terms(RingPtr r, std::map<Expo, RingElem, ExpoGreater> terms) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero()) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
  auto rep = std::make_shared<RingElem::Rep>();
  rep->ring = std::move(r);
  rep->terms = std::move(terms);
  return RingElem(std::move(rep));
}

const RingPtr& require(const RingElem& v) {
  if (!v.valid()) throw Error("empty ring element");
  return v.ring();
}

}  // namespace

const RingPtr& RingElem::ring() const {
  if (!rep_) throw Error("empty ring element");
  return rep_->ring;
}

RingElem RingElem::zero(RingPtr r) { return from_mpq(std::move(r), mpq_class(0)); }
RingElem RingElem::one(RingPtr r) { return from_mpq(std::move(r), mpq_class(1)); }
RingElem RingElem::from_int(RingPtr r, long v) { return from_mpq(std::move(r), mpq_class(v)); }

RingElem RingElem::from_mpq(RingPtr r, const mpq_class& v) {
  if (!r) throw Error("null ring");
  switch (r->kind()) {
    case RingKind::rationals:
      return make_rat(std::move(r), v);
    case RingKind::rational_functions: {
      const size_t a = r->gens().size();
      return make_ratfunc(std::move(r), detail::qp_const(a, v), detail::qp_const(a, 1));
    }
    case RingKind::poly:
    case RingKind::laurent: {
      std::map<Expo, RingElem, ExpoGreater> t;
      if (v != 0) t.emplace(Expo(r->gens().size(), 0), from_mpq(r->base(), v));
      return make_terms(std::move(r), std::move(t));
    }
  }
  throw Error("bad ring kind");
}

RingElem RingElem::gen(RingPtr r, const std::string& name) {
  if (!r) throw Error("null ring");
  const auto& gs = r->gens();
  const auto it = std::find(gs.begin(), gs.end(), name);
  switch (r->kind()) {
    case RingKind::rationals:
      throw Error("unknown generator: " + name);
    case RingKind::rational_functions: {
      if (it == gs.end()) throw Error("unknown generator: " + name);
      const size_t a = gs.size();
      return make_ratfunc(std::move(r), detail::qp_gen(a, size_t(it - gs.begin())),
                          detail::qp_const(a, 1));
    }
    case RingKind::poly:
    case RingKind::laurent: {
      std::map<Expo, RingElem, ExpoGreater> t;
      if (it != gs.end()) {
        Expo e(gs.size(), 0);
        e[size_t(it - gs.begin())] = 1;
        t.emplace(std::move(e), one(r->base()));
      } else {
        t.emplace(Expo(gs.size(), 0), gen(r->base(), name));  // throws if absent
      }
      return make_terms(std::move(r), std::move(t));
    }
  }
  throw Error("bad ring kind");
}

bool RingElem::is_zero() const {
  if (!rep_) throw Error("empty ring element");
  switch (rep_->ring->kind()) {
    case RingKind::rationals:
      return rep_->rat == 0;
    case RingKind::rational_functions:
      return detail::qp_is_zero(rep_->num);
    default:
      return rep_->terms.empty();
  }
}

bool RingElem::is_one() const {
  if (!rep_) throw Error("empty ring element");
  switch (rep_->ring->kind()) {
    case RingKind::rationals:
      return rep_->rat == 1;
    case RingKind::rational_functions:
      return detail::qp_is_const(rep_->num) && detail::qp_const_value(rep_->num) == 1 &&
             detail::qp_is_const(rep_->den);
    default:
      return rep_->terms.size() == 1 && detail::expo_deg(rep_->terms.begin()->first) == 0 &&
             rep_->terms.begin()->first == Expo(rep_->terms.begin()->first.size(), 0) &&
             rep_->terms.begin()->second.is_one();
  }
}

RingElem operator+(const RingElem& a, const RingElem& b) {
  const RingPtr& r = require(a);
  if (!same_ring(r, require(b))) throw Error("ring mismatch in +");
  switch (r->kind()) {
    case RingKind::rationals:
      return make_rat(r, a.rep().rat + b.rep().rat);
    case RingKind::rational_functions: {
      // a.n/a.d + b.n/b.d
      QPoly n = detail::qp_add(detail::qp_mul(a.rep().num, b.rep().den),
                               detail::qp_mul(b.rep().num, a.rep().den));
      QPoly d = detail::qp_mul(a.rep().den, b.rep().den);
      return make_ratfunc(r, std::move(n), std::move(d));
    }
    default: {
      auto t = a.rep().terms;
      for (const auto& [e, c] : b.rep().terms) {
        auto it = t.find(e);
        if (it == t.end()) {
          t.emplace(e, c);
        } else {
          RingElem s = it->second + c;
          if (s.is_zero()) {
            t.erase(it);
          } else {
            it->second = std::move(s);
          }
        }
      }
      return make_terms(r, std::move(t));
    }
  }
}

RingElem RingElem::operator-() const {
  const RingPtr& r = require(*this);
  switch (r->kind()) {
    case RingKind::rationals:
      return make_rat(r, -rep().rat);
    case RingKind::rational_functions:
      return make_ratfunc(r, detail::qp_neg(rep().num), rep().den);
    default: {
      auto t = rep().terms;
      for (auto& [e, c] : t) c = -c;
      return make_terms(r, std::move(t));
    }
  }
}

RingElem operator-(const RingElem& a, const RingElem& b) { return a + (-b); }

RingElem operator*(const RingElem& a, const RingElem& b) {
  const RingPtr& r = require(a);
  if (!same_ring(r, require(b))) throw Error("ring mismatch in *");
  switch (r->kind()) {
    case RingKind::rationals:
      return make_rat(r, a.rep().rat * b.rep().rat);
    case RingKind::rational_functions:
      return make_ratfunc(r, detail::qp_mul(a.rep().num, b.rep().num),
                          detail::qp_mul(a.rep().den, b.rep().den));
    default: {
      std::map<Expo, RingElem, ExpoGreater> t;
      for (const auto& [ea, ca] : a.rep().terms) {
        for (const auto& [eb, cb] : b.rep().terms) {
          Expo e(std::max(ea.size(), eb.size()), 0);
          for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
          for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
          RingElem c = ca * cb;
          auto it = t.find(e);
          if (it == t.end()) {
            t.emplace(std::move(e), std::move(c));
          } else {
            it->second = it->second + c;
          }
        }
      }
      return make_terms(r, std::move(t));
    }
  }
}

std::optional<RingElem> RingElem::try_invert() const {
  const RingPtr& r = require(*this);
  if (is_zero()) return std::nullopt;
  switch (r->kind()) {
    case RingKind::rationals:
      return make_rat(r, 1 / rep().rat);
    case RingKind::rational_functions:
      return make_ratfunc(r, rep().den, rep().num);
    case RingKind::poly: {
      if (rep().terms.size() != 1) return std::nullopt;
      const auto& [e, c] = *rep().terms.begin();
      if (detail::expo_deg(e) != 0) return std::nullopt;
      auto ci = c.try_invert();
      if (!ci) return std::nullopt;
      std::map<Expo, RingElem, ExpoGreater> t;
      t.emplace(e, std::move(*ci));
      return make_terms(r, std::move(t));
    }
    case RingKind::laurent: {
      if (rep().terms.size() != 1) return std::nullopt;
      const auto& [e, c] = *rep().terms.begin();
      auto ci = c.try_invert();
      if (!ci) return std::nullopt;
      Expo ne = e;
      for (auto& x : ne) x = -x;
      std::map<Expo, RingElem, ExpoGreater> t;
      t.emplace(std::move(ne), std::move(*ci));
      return make_terms(r, std::move(t));
    }
  }
  return std::nullopt;
}

bool RingElem::is_unit() const { return try_invert().has_value(); }

RingElem RingElem::pow(long k) const {
  const RingPtr& r = require(*this);
  if (k == 0) return one(r);
  RingElem base = *this;
  if (k < 0) {
    auto inv = try_invert();
    if (!inv) throw Error("pow: not a unit");
    base = *inv;
    k = -k;
  }
  RingElem acc = one(r);
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = (k >>= 1) ? base * base : base;
  }
  return acc;
}

int RingElem::cmp(const RingElem& o) const {
  const RingPtr& r = require(*this);
  if (!same_ring(r, require(o))) throw Error("ring mismatch in cmp");
  switch (r->kind()) {
    case RingKind::rationals: {
      const int c = ::cmp(rep().rat, o.rep().rat);
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    case RingKind::rational_functions: {
      const int c = detail::qp_cmp(rep().num, o.rep().num);
      if (c != 0) return c;
      return detail::qp_cmp(rep().den, o.rep().den);
    }
    default: {
      auto ia = rep().terms.begin();
      auto ib = o.rep().terms.begin();
      for (; ia != rep().terms.end() && ib != o.rep().terms.end(); ++ia, ++ib) {
        const int ce = detail::expo_cmp(ia->first, ib->first);
        if (ce != 0) return ce;
        const int cc = ia->second.cmp(ib->second);
        if (cc != 0) return cc;
      }
      if (ia != rep().terms.end()) return 1;
      if (ib != o.rep().terms.end()) return -1;
      return 0;
    }
  }
}

bool RingElem::is_rational() const {
  return require(*this)->kind() == RingKind::rationals;
}

mpq_class RingElem::rat_value() const {
  const RingPtr& r = require(*this);
  switch (r->kind()) {
    case RingKind::rationals:
      return rep().rat;
    case RingKind::rational_functions:
      if (!detail::qp_is_const(rep().num) || !detail::qp_is_const(rep().den))
        throw Error("rat_value: not a constant");
      return detail::qp_const_value(rep().num) / detail::qp_const_value(rep().den);
    default: {
      if (rep().terms.empty()) return mpq_class(0);
      if (rep().terms.size() != 1 || detail::expo_deg(rep().terms.begin()->first) != 0 ||
          rep().terms.begin()->first != Expo(rep().terms.begin()->first.size(), 0))
        throw Error("rat_value: not a constant");
      return rep().terms.begin()->second.rat_value();
    }
  }
}

std::vector<std::pair<std::vector<int32_t>, RingElem>> RingElem::poly_terms() const {
  const RingPtr& r = require(*this);
  if (r->kind() != RingKind::poly && r->kind() != RingKind::laurent)
    throw Error("poly_terms: not a polynomial level");
  std::vector<std::pair<std::vector<int32_t>, RingElem>> out;
  out.reserve(rep().terms.size());
  for (const auto& [e, c] : rep().terms) {
    Expo e2 = e;
    e2.resize(r->gens().size(), 0);
    out.emplace_back(std::move(e2), c);
  }
  return out;
}

// ---------------------------------------------------------------- rendering

namespace {

std::string rat_str(const mpq_class& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string mono_str(const std::vector<std::string>& gens, const Expo& e) {
  std::string s;
  for (size_t i = 0; i < e.size() && i < gens.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += gens[i];
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string join_terms(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& t : parts) {
    if (s.empty()) {
      s = t;
    } else if (!t.empty() && t[0] == '-') {
      s += " - " + t.substr(1);
    } else {
      s += " + " + t;
    }
  }
  return s;
}

std::string qpoly_str(const QPoly& p, const std::vector<std::string>& gens) {
  if (p.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& [e, c] : p) {
    const std::string m = mono_str(gens, e);
    if (m.empty()) {
      parts.push_back(rat_str(c));
    } else if (c == 1) {
      parts.push_back(m);
    } else if (c == -1) {
      parts.push_back("-" + m);
    } else {
      parts.push_back(rat_str(c) + "*" + m);
    }
  }
  return join_terms(parts);
}

// A fraction with a pure-monomial denominator displays in Laurent form:
// the denominator's exponents distribute into the numerator's terms, so
// (q^2 - 1)/q renders as q - q^-1.
bool qp_is_monomial(const QPoly& p) { return p.size() == 1; }

std::string laurent_form_str(const QPoly& num, const Expo& shift,
                             const std::vector<std::string>& gens) {
  std::vector<std::string> parts;
  for (const auto& [e, c] : num) {
    Expo d(std::max(e.size(), shift.size()), 0);
    for (size_t i = 0; i < e.size(); ++i) d[i] += e[i];
    for (size_t i = 0; i < shift.size(); ++i) d[i] -= shift[i];
    const std::string m = mono_str(gens, d);
    if (m.empty()) {
      parts.push_back(rat_str(c));
    } else if (c == 1) {
      parts.push_back(m);
    } else if (c == -1) {
      parts.push_back("-" + m);
    } else {
      parts.push_back(rat_str(c) + "*" + m);
    }
  }
  return join_terms(parts);
}

// render shape drives parenthesization: sums need parens as coefficients,
// quotients and products bind tighter than the surrounding sum
enum class Shape { atom, sum, quotient };

// common-denominator extraction for a poly/Laurent value over a
// rational-function base: v = w / lam with lam the shared non-monomial
// denominator, printed "(w)/(lam)". Returns false when inapplicable.
struct Extraction {
  std::map<Expo, QPoly, ExpoGreater> w;  // numerator coefficients, primitive
  QPoly lam_num, lam_den;                // lam as canonical fraction
};

bool extract_common_fraction(const RingElem& v, Extraction& out) {
  const auto& r = v.ring();
  if (r->kind() != RingKind::poly && r->kind() != RingKind::laurent) return false;
  if (!r->base() || r->base()->kind() != RingKind::rational_functions) return false;
  if (v.rep().terms.size() < 2) return false;

  // common denominator D = lcm of the coefficient denominators
  QPoly D = detail::qp_const(r->base()->gens().size(), 1);
  bool monomial_only = true;
  for (const auto& [e, c] : v.rep().terms) {
    const QPoly& d = c.rep().den;
    if (!detail::qp_is_const(d)) {
      if (!qp_is_monomial(d)) monomial_only = false;
      QPoly g = detail::qp_gcd(D, d);
      D = detail::qp_mul(detail::qp_divexact(D, g), d);
    }
  }
  if (detail::qp_is_const(D) || monomial_only) return false;  // Laurent form covers these

  // numerators over the common denominator, then strip shared content
  std::map<Expo, QPoly, ExpoGreater> w;
  QPoly g;
  for (const auto& [e, c] : v.rep().terms) {
    QPoly n = detail::qp_mul(c.rep().num, detail::qp_divexact(D, c.rep().den));
    g = g.empty() ? n : detail::qp_gcd(g, n);
    w.emplace(e, std::move(n));
  }
  mpz_class content_num = 0, content_den = 1;
  for (auto& [e, n] : w) {
    n = detail::qp_divexact(n, g);
    for (const auto& [me, mc] : n) {
      content_num = gcd(content_num, mc.get_num());
      content_den = lcm(content_den, mc.get_den());
    }
  }
  mpq_class content(content_num, content_den);
  content.canonicalize();
  if (w.begin()->second.begin()->second < 0) content = -content;
  const mpq_class inv = 1 / content;
  for (auto& [e, n] : w) n = detail::qp_scale(n, inv);

  // lam = content * g / D, reduced with a monic denominator
  QPoly lnum = detail::qp_scale(g, content);
  QPoly lden = D;
  QPoly gg = detail::qp_gcd(lnum, lden);
  if (!detail::qp_is_const(gg) || detail::qp_const_value(gg) != 1) {
    lnum = detail::qp_divexact(lnum, gg);
    lden = detail::qp_divexact(lden, gg);
  }
  const mpq_class lc = lden.begin()->second;
  if (lc != 1) {
    lnum = detail::qp_scale(lnum, 1 / lc);
    lden = detail::qp_scale(lden, 1 / lc);
  }
  // the interesting case has lam = 1/(something non-monomial); require the
  // inverse to display cleanly, i.e. lam's numerator a monomial
  if (!qp_is_monomial(lnum)) return false;
  out.w = std::move(w);
  out.lam_num = std::move(lnum);
  out.lam_den = std::move(lden);
  return true;
}

std::string elem_str(const RingElem& v);
Shape elem_shape(const RingElem& v);

Shape elem_shape(const RingElem& v) {
  switch (v.ring()->kind()) {
    case RingKind::rationals:
      return Shape::atom;
    case RingKind::rational_functions: {
      const QPoly& den = v.rep().den;
      if (detail::qp_is_const(den))
        return v.rep().num.size() > 1 ? Shape::sum : Shape::atom;
      if (qp_is_monomial(den))  // Laurent display
        return v.rep().num.size() > 1 ? Shape::sum : Shape::atom;
      return Shape::quotient;
    }
    default: {
      Extraction ex;
      if (extract_common_fraction(v, ex)) return Shape::quotient;
      if (v.rep().terms.size() > 1) return Shape::sum;
      if (v.rep().terms.size() == 1 && detail::expo_deg(v.rep().terms.begin()->first) == 0 &&
          v.rep().terms.begin()->first == Expo(v.rep().terms.begin()->first.size(), 0))
        return elem_shape(v.rep().terms.begin()->second);
      return Shape::atom;
    }
  }
}

std::string coeff_mono_str(const std::string& c, Shape cs, const std::string& mono) {
  if (mono.empty()) return c;
  if (c == "1") return mono;
  if (c == "-1") return "-" + mono;
  return (cs == Shape::sum ? "(" + c + ")" : c) + "*" + mono;
}

std::string elem_str(const RingElem& v) {
  switch (v.ring()->kind()) {
    case RingKind::rationals:
      return rat_str(v.rep().rat);
    case RingKind::rational_functions: {
      const auto& gens = v.ring()->gens();
      if (detail::qp_is_const(v.rep().den))
        return qpoly_str(v.rep().num, gens);  // den is 1 by canonicity
      if (qp_is_monomial(v.rep().den))
        return laurent_form_str(v.rep().num, v.rep().den.begin()->first, gens);
      std::string n = qpoly_str(v.rep().num, gens);
      if (v.rep().num.size() > 1) n = "(" + n + ")";
      return n + "/(" + qpoly_str(v.rep().den, gens) + ")";
    }
    default: {
      if (v.rep().terms.empty()) return "0";
      const auto& gens = v.ring()->gens();
      Extraction ex;
      if (extract_common_fraction(v, ex)) {
        const auto& bgens = v.ring()->base()->gens();
        std::vector<std::string> parts;
        for (const auto& [e, n] : ex.w) {
          const std::string m = mono_str(gens, e);
          std::string c = qpoly_str(n, bgens);
          Shape cs = n.size() > 1 ? Shape::sum : Shape::atom;
          parts.push_back(coeff_mono_str(c, cs, m));
        }
        std::string w = join_terms(parts);
        if (ex.w.size() > 1) w = "(" + w + ")";
        // lam^-1 = lam_den/lam_num with lam_num a monomial: Laurent display
        const auto& [lshift, lcoef] = *ex.lam_num.begin();
        const QPoly lden = detail::qp_scale(ex.lam_den, 1 / lcoef);
        std::string lam = laurent_form_str(lden, lshift, bgens);
        if (lden.size() > 1) lam = "(" + lam + ")";
        return w + "/" + lam;
      }
      std::vector<std::string> parts;
      for (const auto& [e, c] : v.rep().terms) {
        parts.push_back(coeff_mono_str(elem_str(c), elem_shape(c), mono_str(gens, e)));
      }
      return join_terms(parts);
    }
  }
}

}  // namespace

std::string RingElem::to_string() const {
  require(*this);
  return elem_str(*this);
}

bool renders_as_sum(const RingElem& v) { return elem_shape(v) == Shape::sum; }

// ------------------------------------------------- homomorphism application

RingElem embed(const RingPtr& top, const RingElem& low) {
  if (same_ring(top, low.ring())) return low;
  if (top->kind() != RingKind::poly && top->kind() != RingKind::laurent)
    throw Error("embed: not a structural suffix");
  std::map<Expo, RingElem, ExpoGreater> t;
  RingElem inner = embed(top->base(), low);
  if (!inner.is_zero()) t.emplace(Expo(top->gens().size(), 0), std::move(inner));
  return make_terms(top, std::move(t));
}

namespace {

struct HomCtx {
  RingPtr top;
  const GenImages* sigma;
  const GenImages* delta;  // null for plain homomorphism application

  RingElem sigma_of_gen(const std::string& name) const {
    auto it = sigma->find(name);
    if (it != sigma->end()) {
      if (!same_ring(it->second.ring(), top)) throw Error("image ring mismatch for " + name);
      return it->second;
    }
    return RingElem::gen(top, name);
  }
  RingElem delta_of_gen(const std::string& name) const {
    if (!delta) return RingElem::zero(top);
    auto it = delta->find(name);
    if (it != delta->end()) {
      if (!same_ring(it->second.ring(), top)) throw Error("image ring mismatch for " + name);
      return it->second;
    }
    return RingElem::zero(top);
  }
};

RingElem hom_pow(const HomCtx& cx, const std::string& gname, int32_t e) {
  RingElem img = cx.sigma_of_gen(gname);
  if (e >= 0) return img.pow(e);
  auto inv = img.try_invert();
  if (!inv) throw Error("endomorphism image of " + gname + " is not a unit");
  return inv->pow(-e);
}

RingElem hom_rec(const HomCtx& cx, const RingElem& v);

RingElem hom_qpoly(const HomCtx& cx, const QPoly& p, const std::vector<std::string>& gens) {
  RingElem acc = RingElem::zero(cx.top);
  for (const auto& [e, c] : p) {
    RingElem t = RingElem::from_mpq(cx.top, c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) t = t * hom_pow(cx, gens[i], e[i]);
    }
    acc = acc + t;
  }
  return acc;
}

RingElem hom_rec(const HomCtx& cx, const RingElem& v) {
  switch (v.ring()->kind()) {
    case RingKind::rationals:
      return RingElem::from_mpq(cx.top, v.rep().rat);
    case RingKind::rational_functions: {
      const auto& gens = v.ring()->gens();
      RingElem n = hom_qpoly(cx, v.rep().num, gens);
      if (detail::qp_is_const(v.rep().den)) return n;
      RingElem d = hom_qpoly(cx, v.rep().den, gens);
      auto di = d.try_invert();
      if (!di) throw Error("endomorphism denominator image is not a unit");
      return n * *di;
    }
    default: {
      const auto& gens = v.ring()->gens();
      RingElem acc = RingElem::zero(cx.top);
      for (const auto& [e, c] : v.rep().terms) {
        RingElem t = hom_rec(cx, c);
        for (size_t i = 0; i < e.size(); ++i) {
          if (e[i] != 0) t = t * hom_pow(cx, gens[i], e[i]);
        }
        acc = acc + t;
      }
      return acc;
    }
  }
}

// delta of a power of one generator, sigma-Leibniz:
//   delta(g^e) = delta(g) * sum_{t<e} sigma(g)^t g^{e-1-t}          (e > 0)
//   delta(g^-1) = -sigma(g)^-1 delta(g) g^-1, then the power rule.
RingElem deriv_gen_pow(const HomCtx& cx, const std::string& gname, int32_t e) {
  if (e == 0) return RingElem::zero(cx.top);
  RingElem g = RingElem::gen(cx.top, gname);
  RingElem sg = cx.sigma_of_gen(gname);
  RingElem dg = cx.delta_of_gen(gname);
  if (e < 0) {
    auto gi = g.try_invert();
    auto sgi = sg.try_invert();
    if (!gi || !sgi) throw Error("derivation on non-invertible power of " + gname);
    dg = -(*sgi * dg * *gi);
    g = *gi;
    sg = *sgi;
    e = -e;
  }
  if (dg.is_zero()) return dg;
  RingElem sum = RingElem::zero(cx.top);
  for (int32_t t = 0; t < e; ++t) sum = sum + sg.pow(t) * g.pow(e - 1 - t);
  return dg * sum;
}

// raw value of one generator power inside the top ring
RingElem raw_gen_pow(const RingPtr& top, const std::string& gname, int32_t e) {
  RingElem g = RingElem::gen(top, gname);
  if (e >= 0) return g.pow(e);
  auto gi = g.try_invert();
  if (!gi) throw Error("negative power of non-invertible generator " + gname);
  return gi->pow(-e);
}

// product rule across a term c * g1^e1 * ... * gk^ek; sc/dc are sigma/delta of c
RingElem deriv_term(const HomCtx& cx, const RingElem& sc, const RingElem& dc,
                    const std::vector<std::string>& gens, const Expo& e) {
  RingElem res = dc;  // delta of the prefix
  RingElem sig = sc;  // sigma of the prefix
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    // delta(prefix * f) = sigma(prefix) delta(f) + delta(prefix) f
    res = sig * deriv_gen_pow(cx, gens[i], e[i]) + res * raw_gen_pow(cx.top, gens[i], e[i]);
    sig = sig * hom_pow(cx, gens[i], e[i]);
  }
  return res;
}

RingElem deriv_qpoly(const HomCtx& cx, const QPoly& p, const std::vector<std::string>& gens) {
  RingElem acc = RingElem::zero(cx.top);
  for (const auto& [e, c] : p) {
    const RingElem cv = RingElem::from_mpq(cx.top, c);
    acc = acc + deriv_term(cx, cv, RingElem::zero(cx.top), gens, e);
  }
  return acc;
}

RingElem deriv_rec(const HomCtx& cx, const RingElem& v) {
  switch (v.ring()->kind()) {
    case RingKind::rationals:
      return RingElem::zero(cx.top);
    case RingKind::rational_functions: {
      const auto& gens = v.ring()->gens();
      const RingElem dn = deriv_qpoly(cx, v.rep().num, gens);
      if (detail::qp_is_const(v.rep().den)) {
        const mpq_class dc = detail::qp_const_value(v.rep().den);
        return dn * RingElem::from_mpq(cx.top, 1 / dc);
      }
      // delta(n/d) = (delta(n) - sigma(n/d) delta(d)) / d
      const RingElem dd = deriv_qpoly(cx, v.rep().den, gens);
      const RingElem sv = hom_rec(cx, v);
      const GenImages id_images;
      const HomCtx idcx{cx.top, &id_images, nullptr};
      const RingElem dval = hom_qpoly(idcx, v.rep().den, gens);
      auto di = dval.try_invert();
      if (!di) throw Error("derivation: denominator not invertible");
      return (dn - sv * dd) * *di;
    }
    default: {
      const auto& gens = v.ring()->gens();
      RingElem acc = RingElem::zero(cx.top);
      for (const auto& [e, c] : v.rep().terms) {
        acc = acc + deriv_term(cx, hom_rec(cx, c), deriv_rec(cx, c), gens, e);
      }
      return acc;
    }
  }
}

}  // namespace

RingElem apply_hom(const RingElem& v, const GenImages& images) {
  HomCtx cx{v.ring(), &images, nullptr};
  return hom_rec(cx, v);
}

RingElem apply_sigma_deriv(const RingElem& v, const GenImages& sigma_images,
                           const GenImages& delta_images) {
  HomCtx cx{v.ring(), &sigma_images, &delta_images};
  return deriv_rec(cx, v);
}

}  // namespace spbw

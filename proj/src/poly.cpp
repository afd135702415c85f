#include "spbw/poly.hpp"

#include <algorithm>

namespace spbw {

bool ExpVec::is_zero() const {
  return std::all_of(e.begin(), e.end(), [](int32_t x) { return x == 0; });
}

ExpVec ev_zero(size_t n, int32_t signed_prefix) {
  return {std::vector<int32_t>(n, 0), signed_prefix};
}

ExpVec ev_unit(size_t n, size_t i, int32_t signed_prefix) {
  ExpVec a = ev_zero(n, signed_prefix);
  a.e.at(i) = 1;
  return a;
}

int64_t ev_deg(const ExpVec& a) {
  int64_t d = 0;
  for (int32_t x : a.e) d += x < 0 ? -int64_t(x) : int64_t(x);
  return d;
}

ExpVec ev_add(const ExpVec& a, const ExpVec& b) {
  if (a.e.size() != b.e.size()) throw Error("exponent length mismatch");
  ExpVec r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
  return r;
}

ExpVec ev_sub(const ExpVec& a, const ExpVec& b) {
  if (a.e.size() != b.e.size()) throw Error("exponent length mismatch");
  ExpVec r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= b.e[i];
  return r;
}

ExpVec ev_neg(const ExpVec& a) {
  ExpVec r = a;
  for (auto& x : r.e) x = -x;
  return r;
}

int cmp_mon(const ExpVec& a, const ExpVec& b) {
  if (a.e.size() != b.e.size() || a.signed_prefix != b.signed_prefix)
    throw Error("monomial comparison across different shapes");
  const int64_t da = ev_deg(a), db = ev_deg(b);
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = 0; i < a.e.size(); ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  }
  return 0;
}

SkewPoly SkewPoly::zero(PresPtr p) { return SkewPoly(std::move(p), {}); }

SkewPoly SkewPoly::constant(PresPtr p, Coeff c) {
  Terms t;
  if (!coeff_is_zero(c))
    t.emplace(ev_zero(p->nvars(), int32_t(p->n_invertible())), std::move(c));
  return SkewPoly(std::move(p), std::move(t));
}

SkewPoly SkewPoly::from_ring(PresPtr p, const RingElem& r) {
  return constant(p, coeff_from_ring(*p, r));
}

SkewPoly SkewPoly::var(PresPtr p, size_t i) {
  if (i >= p->nvars()) throw Error("variable index out of range");
  Terms t;
  t.emplace(ev_unit(p->nvars(), i, int32_t(p->n_invertible())), coeff_one(*p));
  return SkewPoly(std::move(p), std::move(t));
}

SkewPoly SkewPoly::monomial(PresPtr p, Coeff c, ExpVec a) {
  if (a.e.size() != p->nvars()) throw Error("exponent length mismatch");
  for (size_t i = 0; i < a.e.size(); ++i) {
    if (a.e[i] < 0 && !p->invertible(i))
      throw Error("negative exponent on non-invertible variable " + p->vars()[i]);
  }
  a.signed_prefix = int32_t(p->n_invertible());
  Terms t;
  if (!coeff_is_zero(c)) t.emplace(std::move(a), std::move(c));
  return SkewPoly(std::move(p), std::move(t));
}

SkewPoly SkewPoly::from_terms(PresPtr p, Terms t) {
  for (auto it = t.begin(); it != t.end();) {
    it = coeff_is_zero(it->second) ? t.erase(it) : std::next(it);
  }
  return SkewPoly(std::move(p), std::move(t));
}

std::optional<int64_t> SkewPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return ev_deg(terms_.begin()->first);  // leading term has maximal degree
}

std::pair<ExpVec, Coeff> SkewPoly::leading() const {
  if (terms_.empty()) throw Error("zero polynomial has no leading term");
  return *terms_.begin();
}

bool SkewPoly::homogeneous() const {
  if (terms_.empty()) return true;
  const int64_t d = ev_deg(terms_.begin()->first);
  for (const auto& [a, c] : terms_) {
    if (ev_deg(a) != d) return false;
  }
  return true;
}

SkewPoly SkewPoly::add(const SkewPoly& g) const {
  if (pres_ != g.pres_) throw Error("presentation mismatch in add");
  Terms t = terms_;
  for (const auto& [a, c] : g.terms_) {
    auto it = t.find(a);
    if (it == t.end()) {
      t.emplace(a, c);
    } else {
      Coeff s = coeff_add(it->second, c);
      if (coeff_is_zero(s)) {
        t.erase(it);
      } else {
        it->second = std::move(s);
      }
    }
  }
  return SkewPoly(pres_, std::move(t));
}

SkewPoly SkewPoly::neg() const {
  Terms t = terms_;
  for (auto& [a, c] : t) c = coeff_neg(c);
  return SkewPoly(pres_, std::move(t));
}

SkewPoly SkewPoly::sub(const SkewPoly& g) const { return add(g.neg()); }

SkewPoly SkewPoly::scale(const Coeff& c) const {
  if (coeff_is_zero(c)) return zero(pres_);
  Terms t;
  for (const auto& [a, v] : terms_) {
    Coeff s = coeff_mul(c, v);
    if (!coeff_is_zero(s)) t.emplace(a, std::move(s));
  }
  return SkewPoly(pres_, std::move(t));
}

SkewPoly SkewPoly::hom_part(int64_t d) const {
  Terms t;
  for (const auto& [a, c] : terms_) {
    if (ev_deg(a) == d) t.emplace(a, c);
  }
  return SkewPoly(pres_, std::move(t));
}

bool SkewPoly::eq(const SkewPoly& g) const {
  if (pres_ != g.pres_) throw Error("presentation mismatch in eq");
  if (terms_.size() != g.terms_.size()) return false;
  auto ia = terms_.begin();
  auto ib = g.terms_.begin();
  for (; ia != terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first) || !coeff_eq(ia->second, ib->second)) return false;
  }
  return true;
}

std::string mono_to_string(const Presentation& p, const ExpVec& a) {
  std::string s;
  for (size_t i = 0; i < a.e.size(); ++i) {
    if (a.e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += p.vars()[i];
    if (a.e[i] != 1) s += "^" + std::to_string(a.e[i]);
  }
  return s;
}

std::string SkewPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [a, c] : terms_) {
    const std::string m = mono_to_string(*pres_, a);
    std::string t;
    if (m.empty()) {
      t = coeff_to_string(c);
    } else if (coeff_is_one(c)) {
      t = m;
    } else if (coeff_is_one(coeff_neg(c))) {
      t = "-" + m;
    } else {
      std::string cs = coeff_to_string(c);
      const bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs = coeff_to_string(coeff_neg(c));
      if (coeff_renders_as_sum(c)) cs = "(" + cs + ")";
      t = (neg ? "-" : "") + cs + "*" + m;
    }
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

}  // namespace spbw

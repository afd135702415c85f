#include "mpoly.hpp"

#include <stdexcept>

namespace spbw::detail {

int64_t expo_deg(const Expo& e) {
  int64_t d = 0;
  for (int32_t v : e) d += v;
  return d;
}

int expo_cmp(const Expo& a, const Expo& b) {
  const int64_t da = expo_deg(a), db = expo_deg(b);
  if (da != db) return da < db ? -1 : 1;
  const size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    const int32_t x = i < a.size() ? a[i] : 0;
    const int32_t y = i < b.size() ? b[i] : 0;
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

QPoly qp_zero() { return {}; }

QPoly qp_const(size_t arity, const mpq_class& c) {
  QPoly p;
  if (c != 0) p.emplace(Expo(arity, 0), c);
  return p;
}

QPoly qp_gen(size_t arity, size_t idx) {
  Expo e(arity, 0);
  e.at(idx) = 1;
  QPoly p;
  p.emplace(std::move(e), mpq_class(1));
  return p;
}

bool qp_is_zero(const QPoly& p) { return p.empty(); }

bool qp_is_const(const QPoly& p) {
  return p.empty() || (p.size() == 1 && expo_deg(p.begin()->first) == 0 &&
                       p.begin()->first == Expo(p.begin()->first.size(), 0));
}

mpq_class qp_const_value(const QPoly& p) {
  if (p.empty()) return mpq_class(0);
  if (!qp_is_const(p)) throw std::logic_error("qp_const_value: not constant");
  return p.begin()->second;
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
  QPoly r = a;
  for (const auto& [e, c] : b) {
    auto it = r.find(e);
    if (it == r.end()) {
      r.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

QPoly qp_neg(const QPoly& a) {
  QPoly r = a;
  for (auto& [e, c] : r) c = -c;
  return r;
}

QPoly qp_sub(const QPoly& a, const QPoly& b) { return qp_add(a, qp_neg(b)); }

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  QPoly r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Expo e(std::max(ea.size(), eb.size()), 0);
      for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      mpq_class c = ca * cb;
      auto it = r.find(e);
      if (it == r.end()) {
        if (c != 0) r.emplace(std::move(e), std::move(c));
      } else {
        it->second += c;
        if (it->second == 0) r.erase(it);
      }
    }
  }
  return r;
}

QPoly qp_scale(const QPoly& a, const mpq_class& c) {
  if (c == 0) return {};
  QPoly r = a;
  for (auto& [e, v] : r) v *= c;
  return r;
}

bool qp_eq(const QPoly& a, const QPoly& b) { return qp_cmp(a, b) == 0; }

int qp_cmp(const QPoly& a, const QPoly& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    const int ce = expo_cmp(ia->first, ib->first);
    if (ce != 0) return ce;
    const int cc = cmp(ia->second, ib->second);
    if (cc != 0) return cc < 0 ? -1 : 1;
  }
  if (ia != a.end()) return 1;
  if (ib != b.end()) return -1;
  return 0;
}

namespace {

bool expo_divides(const Expo& d, const Expo& e) {
  for (size_t i = 0; i < d.size(); ++i) {
    const int32_t x = d[i];
    const int32_t y = i < e.size() ? e[i] : 0;
    if (x > y) return false;
  }
  return true;
}

Expo expo_sub(const Expo& e, const Expo& d) {
  Expo r(std::max(e.size(), d.size()), 0);
  for (size_t i = 0; i < e.size(); ++i) r[i] += e[i];
  for (size_t i = 0; i < d.size(); ++i) r[i] -= d[i];
  return r;
}

// --- integer polynomial layer for gcd ---

ZPoly zp_neg(const ZPoly& a) {
  ZPoly r = a;
  for (auto& [e, c] : r) c = -c;
  return r;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r = a;
  for (const auto& [e, c] : b) {
    auto it = r.find(e);
    if (it == r.end()) {
      r.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Expo e(std::max(ea.size(), eb.size()), 0);
      for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      mpz_class c = ca * cb;
      auto it = r.find(e);
      if (it == r.end()) {
        if (c != 0) r.emplace(std::move(e), std::move(c));
      } else {
        it->second += c;
        if (it->second == 0) r.erase(it);
      }
    }
  }
  return r;
}

// Exact division by a monomial c*x^d.
ZPoly zp_div_term(const ZPoly& a, const Expo& d, const mpz_class& c) {
  ZPoly r;
  for (const auto& [e, v] : a) {
    if (!expo_divides(d, e)) throw std::logic_error("zp_div_term: monomial");
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    if (rem != 0) throw std::logic_error("zp_div_term: coefficient");
    r.emplace(expo_sub(e, d), std::move(q));
  }
  return r;
}

ZPoly zp_divexact(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw std::logic_error("zp_divexact: zero divisor");
  if (b.size() == 1) return zp_div_term(a, b.begin()->first, b.begin()->second);
  ZPoly q, r = a;
  const auto& [lbe, lbc] = *b.begin();
  while (!r.empty()) {
    const auto& [lre, lrc] = *r.begin();
    if (!expo_divides(lbe, lre)) throw std::logic_error("zp_divexact: not divisible");
    mpz_class qc, rem;
    mpz_fdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), lrc.get_mpz_t(), lbc.get_mpz_t());
    if (rem != 0) throw std::logic_error("zp_divexact: not divisible");
    ZPoly t;
    t.emplace(expo_sub(lre, lbe), qc);
    q = zp_add(q, t);
    r = zp_add(r, zp_neg(zp_mul(t, b)));
  }
  return q;
}

int32_t zp_deg_in(const ZPoly& p, size_t x) {
  int32_t d = 0;
  for (const auto& [e, c] : p) d = std::max(d, x < e.size() ? e[x] : 0);
  return d;
}

// Coefficient of x^k, as a polynomial with the x slot zeroed.
ZPoly zp_coef_in(const ZPoly& p, size_t x, int32_t k) {
  ZPoly r;
  for (const auto& [e, c] : p) {
    if ((x < e.size() ? e[x] : 0) != k) continue;
    Expo e2 = e;
    if (x < e2.size()) e2[x] = 0;
    r.emplace(std::move(e2), c);
  }
  return r;
}

ZPoly zp_shift(const ZPoly& p, size_t x, int32_t k) {
  ZPoly r;
  for (const auto& [e, c] : p) {
    Expo e2 = e;
    if (e2.size() <= x) e2.resize(x + 1, 0);
    e2[x] += k;
    r.emplace(std::move(e2), c);
  }
  return r;
}

bool zp_uses_var(const ZPoly& p, size_t x) { return zp_deg_in(p, x) > 0; }

size_t zp_arity(const ZPoly& p) {
  size_t n = 0;
  for (const auto& [e, c] : p) n = std::max(n, e.size());
  return n;
}

ZPoly zp_gcd(const ZPoly& a, const ZPoly& b);

ZPoly zp_sign_norm(const ZPoly& a) {
  if (a.empty() || a.begin()->second > 0) return a;
  return zp_neg(a);
}

ZPoly zp_content_in(const ZPoly& p, size_t x) {
  ZPoly c;
  for (int32_t k = 0; k <= zp_deg_in(p, x); ++k) {
    ZPoly ck = zp_coef_in(p, x, k);
    if (!ck.empty()) c = zp_gcd(c, ck);
  }
  return c;
}

// Pseudo remainder of f by g with respect to variable x.
ZPoly zp_prem(ZPoly f, const ZPoly& g, size_t x) {
  const int32_t dg = zp_deg_in(g, x);
  const ZPoly lcg = zp_coef_in(g, x, dg);
  while (!f.empty()) {
    const int32_t df = zp_deg_in(f, x);
    if (df < dg) break;
    const ZPoly lcf = zp_coef_in(f, x, df);
    f = zp_add(zp_mul(f, lcg), zp_neg(zp_mul(zp_shift(lcf, x, df - dg), g)));
  }
  return f;
}

ZPoly zp_gcd(const ZPoly& a, const ZPoly& b) {
  if (a.empty()) return zp_sign_norm(b);
  if (b.empty()) return zp_sign_norm(a);
  // constants
  const size_t arity = std::max(zp_arity(a), zp_arity(b));
  size_t x = arity;
  for (size_t i = 0; i < arity; ++i) {
    if (zp_uses_var(a, i) || zp_uses_var(b, i)) {
      x = i;
      break;
    }
  }
  if (x == arity) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.begin()->second.get_mpz_t(), b.begin()->second.get_mpz_t());
    ZPoly r;
    r.emplace(Expo(arity, 0), std::move(g));
    return r;
  }
  const ZPoly ca = zp_content_in(a, x);
  const ZPoly cb = zp_content_in(b, x);
  const ZPoly d = zp_gcd(ca, cb);
  ZPoly f = zp_divexact(a, ca);
  ZPoly g = zp_divexact(b, cb);
  if (zp_deg_in(f, x) < zp_deg_in(g, x)) std::swap(f, g);
  // primitive PRS
  while (true) {
    ZPoly r = zp_prem(f, g, x);
    if (r.empty()) break;
    if (zp_deg_in(r, x) == 0) {
      // nonzero remainder free of x: the x-parts are coprime
      return zp_sign_norm(d);
    }
    f = g;
    g = zp_divexact(r, zp_content_in(r, x));
  }
  return zp_sign_norm(zp_mul(d, g));
}

// Scale to a primitive integer polynomial (content and denominators removed).
ZPoly qp_to_prim_z(const QPoly& a) {
  if (a.empty()) return {};
  mpz_class l(1);
  for (const auto& [e, c] : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly z;
  mpz_class g(0);
  for (const auto& [e, c] : a) {
    mpz_class v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    z.emplace(e, std::move(v));
  }
  if (g > 1) {
    for (auto& [e, c] : z) c /= g;
  }
  return zp_sign_norm(z);
}

QPoly zp_to_qp(const ZPoly& a) {
  QPoly r;
  for (const auto& [e, c] : a) r.emplace(e, mpq_class(c));
  return r;
}

}  // namespace

QPoly qp_divexact(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw std::logic_error("qp_divexact: zero divisor");
  QPoly q, r = a;
  const auto& [lbe, lbc] = *b.begin();
  while (!r.empty()) {
    const auto& [lre, lrc] = *r.begin();
    if (!expo_divides(lbe, lre)) throw std::logic_error("qp_divexact: not divisible");
    QPoly t;
    t.emplace(expo_sub(lre, lbe), mpq_class(lrc / lbc));
    q = qp_add(q, t);
    r = qp_sub(r, qp_mul(t, b));
  }
  return q;
}

QPoly qp_gcd(const QPoly& a, const QPoly& b) {
  return zp_to_qp(zp_gcd(qp_to_prim_z(a), qp_to_prim_z(b)));
}

}  // namespace spbw::detail

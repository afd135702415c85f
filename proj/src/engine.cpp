#include "spbw/engine.hpp"

#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spbw {

namespace {

struct EngineCache {
  std::mutex mu;
  std::map<std::pair<std::vector<int32_t>, std::vector<int32_t>>, ReorderResult> reorder;
};

void need_unsigned(const ExpVec& a, const char* what) {
  for (int32_t v : a.e) {
    if (v < 0) throw Error(std::string(what) + ": negative exponent outside the quantum path");
  }
}

}  // namespace

Coeff sigma_power(const PresPtr& p, const ExpVec& alpha, const Coeff& r) {
  Coeff acc = r;
  for (size_t i = alpha.e.size(); i-- > 0;) {
    int32_t e = alpha.e[i];
    for (; e > 0; --e) acc = p->apply_sigma(i, acc);
    for (; e < 0; ++e) acc = p->apply_sigma_inv(i, acc);
  }
  return acc;
}

PushResult push_coeff(const PresPtr& p, const ExpVec& alpha, const Coeff& r) {
  need_unsigned(alpha, "push_coeff");
  if (coeff_is_zero(r) || alpha.is_zero()) return {r, SkewPoly::zero(p)};
  size_t k = 0;
  for (size_t i = alpha.e.size(); i-- > 0;) {
    if (alpha.e[i] > 0) {
      k = i;
      break;
    }
  }
  const ExpVec ap = ev_sub(alpha, ev_unit(alpha.e.size(), k, alpha.signed_prefix));
  PushResult a = push_coeff(p, ap, p->apply_sigma(k, r));
  SkewPoly rem = mul(a.remainder, SkewPoly::var(p, k));
  const Coeff d1 = p->apply_delta(k, r);
  if (!coeff_is_zero(d1)) {
    PushResult b = push_coeff(p, ap, d1);
    if (!coeff_is_zero(b.sigma_alpha_r)) rem = rem.add(SkewPoly::monomial(p, b.sigma_alpha_r, ap));
    rem = rem.add(b.remainder);
  }
  return {std::move(a.sigma_alpha_r), std::move(rem)};
}

namespace {

// normal form of x_k x^beta; recursion strictly decreases (degree, inversions)
SkewPoly var_times_mono(const PresPtr& p, size_t k, const ExpVec& beta) {
  const size_t n = p->nvars();
  size_t j = n;
  for (size_t i = 0; i < n; ++i) {
    if (beta.e[i] != 0) {
      j = i;
      break;
    }
  }
  if (j == n || k <= j)
    return SkewPoly::monomial(p, coeff_one(*p), ev_add(beta, ev_unit(n, k, beta.signed_prefix)));

  // x_k x^beta = (c_{j,k} x_j x_k + d_{jk}) x^{beta - e_j}
  const ExpVec bp = ev_sub(beta, ev_unit(n, j, beta.signed_prefix));
  const SkewPoly h = var_times_mono(p, k, bp);
  SkewPoly res = SkewPoly::zero(p);
  for (const auto& [g, cg] : h.terms()) {
    res = res.add(var_times_mono(p, j, g).scale(p->apply_sigma(j, cg)));
    const Coeff dc = p->apply_delta(j, cg);
    if (!coeff_is_zero(dc)) res = res.add(SkewPoly::monomial(p, dc, g));
  }
  res = res.scale(p->c(j, k));
  if (const AffineTail* t = p->tail(j, k)) {
    if (!coeff_is_zero(t->constant)) res = res.add(SkewPoly::monomial(p, t->constant, bp));
    for (const auto& [mi, a] : t->linear) res = res.add(var_times_mono(p, size_t(mi), bp).scale(a));
  }
  return res;
}

}  // namespace

ReorderResult reorder(const PresPtr& p, const ExpVec& alpha, const ExpVec& beta) {
  need_unsigned(alpha, "reorder");
  need_unsigned(beta, "reorder");
  if (alpha.is_zero() || beta.is_zero()) return {coeff_one(*p), SkewPoly::zero(p)};
  auto cache = p->cache<EngineCache>();
  const std::pair<std::vector<int32_t>, std::vector<int32_t>> key{alpha.e, beta.e};
  {
    std::lock_guard<std::mutex> lk(cache->mu);
    auto it = cache->reorder.find(key);
    if (it != cache->reorder.end()) return it->second;
  }
  size_t k = 0;
  for (size_t i = alpha.e.size(); i-- > 0;) {
    if (alpha.e[i] > 0) {
      k = i;
      break;
    }
  }
  const ExpVec ap = ev_sub(alpha, ev_unit(alpha.e.size(), k, alpha.signed_prefix));
  SkewPoly full =
      mul(SkewPoly::monomial(p, coeff_one(*p), ap), var_times_mono(p, k, beta));
  const ExpVec tot = ev_add(alpha, beta);
  Coeff cab = coeff_zero(*p);
  auto it = full.terms().find(tot);
  if (it != full.terms().end()) cab = it->second;
  SkewPoly rem = full.sub(SkewPoly::monomial(p, cab, tot));
  ReorderResult rr{std::move(cab), std::move(rem)};
  {
    std::lock_guard<std::mutex> lk(cache->mu);
    cache->reorder.emplace(key, rr);
  }
  return rr;
}

namespace {

// ---- signed quasi-commutative path (localized quantum presentations) ----

bool has_negative(const ExpVec& a) {
  for (int32_t v : a.e) {
    if (v < 0) return true;
  }
  return false;
}

// K with x_m^a x_j^b = K x_j^b x_m^a for j < m and signed a, b
Coeff cross_constant(const PresPtr& p, size_t m, int32_t a, size_t j, int32_t b) {
  const size_t n = p->nvars();
  Coeff q = p->c(j, m);
  if ((a > 0) != (b > 0)) {
    auto qi = coeff_try_invert(q);
    if (!qi) throw Error("localized product needs unit constants");
    q = *qi;
  }
  Coeff acc = coeff_one(*p);
  ExpVec tw = ev_zero(n, int32_t(p->n_invertible()));
  const int32_t sa = a > 0 ? 1 : -1;
  const int32_t sb = b > 0 ? 1 : -1;
  for (int32_t s = 0; s < (a > 0 ? a : -a); ++s) {
    for (int32_t t = 0; t < (b > 0 ? b : -b); ++t) {
      tw.e[m] = sa > 0 ? s : -(s + 1);
      tw.e[j] = sb > 0 ? t : -(t + 1);
      acc = coeff_mul(acc, sigma_power(p, tw, q));
    }
  }
  return acc;
}

// K with x^alpha x^beta = K x^{alpha+beta}, all derivations and tails zero
Coeff ordering_constant(const PresPtr& p, const ExpVec& alpha, const ExpVec& beta) {
  const size_t n = p->nvars();
  size_t k = n;
  for (size_t i = n; i-- > 0;) {
    if (alpha.e[i] != 0) {
      k = i;
      break;
    }
  }
  if (k == n) return coeff_one(*p);
  ExpVec ap = alpha;
  ap.e[k] = 0;
  // x_k^{a_k} crosses each x_j^{beta_j} with j < k, left to right; constants
  // spawned further right pick up the twist of the powers already passed
  Coeff c = coeff_one(*p);
  ExpVec tw = ev_zero(n, alpha.signed_prefix);
  for (size_t j = 0; j < k; ++j) {
    if (beta.e[j] == 0) continue;
    c = coeff_mul(c, sigma_power(p, tw, cross_constant(p, k, alpha.e[k], j, beta.e[j])));
    tw.e[j] = beta.e[j];
  }
  ExpVec merged = beta;
  merged.e[k] += alpha.e[k];
  return coeff_mul(sigma_power(p, ap, c), ordering_constant(p, ap, merged));
}

SkewPoly term_mul(const PresPtr& p, const Coeff& ca, const ExpVec& a, const Coeff& cb,
                  const ExpVec& b) {
  if (has_negative(a) || has_negative(b)) {
    if (!p->quasi_commutative() || !p->bijective_claimed())
      throw Error("negative exponents need a quasi-commutative bijective presentation");
    const Coeff lead = coeff_mul(coeff_mul(ca, sigma_power(p, a, cb)), ordering_constant(p, a, b));
    return SkewPoly::monomial(p, lead, ev_add(a, b));
  }
  PushResult pr = push_coeff(p, a, cb);  // x^a cb = s x^a + rem
  ReorderResult rr = reorder(p, a, b);
  const Coeff as = coeff_mul(ca, pr.sigma_alpha_r);
  SkewPoly out = SkewPoly::monomial(p, coeff_mul(as, rr.c_ab), ev_add(a, b));
  out = out.add(rr.remainder.scale(as));
  if (!pr.remainder.is_zero())
    out = out.add(mul(pr.remainder.scale(ca), SkewPoly::monomial(p, coeff_one(*p), b)));
  return out;
}

}  // namespace

Coeff commutation_constant(const PresPtr& p, const ExpVec& alpha, const ExpVec& beta) {
  if (!p->quasi_commutative())
    throw Error("commutation constants need a quasi-commutative presentation");
  if (has_negative(alpha) || has_negative(beta)) {
    if (!p->bijective_claimed())
      throw Error("signed commutation constants need a bijective presentation");
    return ordering_constant(p, alpha, beta);
  }
  return reorder(p, alpha, beta).c_ab;
}

SkewPoly mul(const SkewPoly& f, const SkewPoly& g) {
  const PresPtr& p = f.pres();
  if (p != g.pres()) throw Error("product across different presentations");
  SkewPoly out = SkewPoly::zero(p);
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) out = out.add(term_mul(p, ca, a, cb, b));
  }
  return out;
}

SkewPoly mul(const SkewPoly& f, const SkewPoly& g, const SkewPoly& h) {
  return mul(mul(f, g), h);
}

bool verify_identities(const PresPtr& p, const ExpVec& theta, const ExpVec& gamma,
                       const ExpVec& beta, const Coeff& c) {
  if (!p->bijective_claimed()) throw Error("identity check requires a bijective presentation");
  const Coeff c_gb = reorder(p, gamma, beta).c_ab;
  const Coeff c_tg = reorder(p, theta, gamma).c_ab;
  const Coeff c_t_gb = reorder(p, theta, ev_add(gamma, beta)).c_ab;
  const Coeff c_tg_b = reorder(p, ev_add(theta, gamma), beta).c_ab;

  const Coeff lhs1 = coeff_mul(sigma_power(p, theta, c_gb), c_t_gb);
  const Coeff rhs1 = coeff_mul(c_tg, c_tg_b);
  if (!coeff_eq(lhs1, rhs1)) return false;

  const Coeff lhs2 = coeff_mul(sigma_power(p, theta, sigma_power(p, gamma, c)), c_tg);
  const Coeff rhs2 = coeff_mul(c_tg, sigma_power(p, ev_add(theta, gamma), c));
  return coeff_eq(lhs2, rhs2);
}

// ------------------------------------------------------------- right basis

namespace {

void right_add(RightPoly& rp, const ExpVec& a, const Coeff& c) {
  auto [it, fresh] = rp.terms.emplace(a, c);
  if (!fresh) {
    it->second = coeff_add(it->second, c);
    if (coeff_is_zero(it->second)) rp.terms.erase(it);
  }
}

}  // namespace

RightPoly right_expand(const PresPtr& p, const Coeff& r, const ExpVec& alpha) {
  if (!p->bijective_claimed()) throw Error("right basis requires a bijective presentation");
  need_unsigned(alpha, "right_expand");
  RightPoly rp{p, {}};
  if (coeff_is_zero(r)) return rp;
  // r x^alpha = x^alpha sigma^{-alpha}(r) - p_{alpha, sigma^{-alpha}(r)}
  const Coeff s = sigma_power(p, ev_neg(alpha), r);
  PushResult pr = push_coeff(p, alpha, s);
  right_add(rp, alpha, s);
  for (const auto& [g, cg] : pr.remainder.terms()) {
    const RightPoly sub = right_expand(p, cg, g);
    for (const auto& [b, sb] : sub.terms) right_add(rp, b, coeff_neg(sb));
  }
  return rp;
}

SkewPoly right_to_left(const RightPoly& rp) {
  const PresPtr& p = rp.pres;
  SkewPoly out = SkewPoly::zero(p);
  for (const auto& [b, sb] : rp.terms) {
    out = out.add(
        mul(SkewPoly::monomial(p, coeff_one(*p), b), SkewPoly::constant(p, sb)));
  }
  return out;
}

std::string RightPoly::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [b, sb] : terms) {
    std::string mono = mono_to_string(*pres, b);
    if (mono.empty()) mono = "1";
    std::string cs = coeff_to_string(sb);
    bool negate = false;
    if (coeff_renders_as_sum(sb)) {
      cs = "(" + cs + ")";
    } else if (cs[0] == '-') {
      negate = true;
      cs = cs.substr(1);
    }
    std::string term = mono == "1" ? cs : (cs == "1" ? mono : mono + "*" + cs);
    if (out.empty()) {
      out = negate ? "-" + term : term;
    } else {
      out += (negate ? " - " : " + ") + term;
    }
  }
  return out;
}

// -------------------------------------------------------------- confluence

namespace {

struct OverlapCase {
  std::vector<size_t> word;
  std::string gen;  // empty = pure variable word
};

Coeff gen_token(const PresPtr& p, const std::string& name) {
  if (p->ring()->has_gen(name)) return coeff_from_ring(*p, RingElem::gen(p->ring(), name));
  if (p->is_nested()) {
    const int k = p->nested_base()->var_index(name);
    if (k >= 0) return coeff_from_inner(*p, SkewPoly::var(p->nested_base(), size_t(k)));
  }
  throw Error("unknown generator: " + name);
}

std::vector<std::string> coefficient_generators(const PresPtr& p) {
  std::vector<std::string> gens = p->ring()->all_gens();
  for (PresPtr q = p->nested_base(); q; q = q->nested_base())
    gens.insert(gens.end(), q->vars().begin(), q->vars().end());
  return gens;
}

std::vector<OverlapCase> overlap_cases(const PresPtr& p, int degree_bound) {
  const size_t n = p->nvars();
  const auto gens = coefficient_generators(p);
  std::vector<OverlapCase> cases;
  for (int len = 3; len <= degree_bound; ++len) {
    std::vector<size_t> w(size_t(len), 0);
    for (;;) {
      cases.push_back({w, ""});
      size_t i = w.size();
      while (i > 0) {
        if (++w[i - 1] < n) break;
        w[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  for (int len = 2; len < degree_bound; ++len) {
    std::vector<size_t> w(size_t(len), 0);
    for (;;) {
      for (const auto& g : gens) cases.push_back({w, g});
      size_t i = w.size();
      while (i > 0) {
        if (++w[i - 1] < n) break;
        w[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  return cases;
}

std::optional<Finding> run_case(const PresPtr& p, const OverlapCase& oc) {
  std::string loc;
  try {
    std::vector<SkewPoly> fs;
    fs.reserve(oc.word.size() + 1);
    for (size_t vi : oc.word) {
      loc += (loc.empty() ? "" : "*") + p->vars()[vi];
      fs.push_back(SkewPoly::var(p, vi));
    }
    if (!oc.gen.empty()) {
      loc += "*" + oc.gen;
      fs.push_back(SkewPoly::constant(p, gen_token(p, oc.gen)));
    }
    SkewPoly left = fs.front();
    for (size_t i = 1; i < fs.size(); ++i) left = mul(left, fs[i]);
    SkewPoly right = fs.back();
    for (size_t i = fs.size() - 1; i-- > 0;) right = mul(fs[i], right);
    if (left.eq(right)) return std::nullopt;
    return Finding{Severity::error, loc,
                   "fold-left and fold-right normal forms differ: " + left.to_string() +
                       "  vs  " + right.to_string()};
  } catch (const Error& e) {
    return Finding{Severity::error, loc, e.what()};
  }
}

}  // namespace

ValidationReport check_confluence_serial(const PresPtr& p, int degree_bound) {
  if (degree_bound < 3) throw Error("confluence degree bound must be at least 3");
  ValidationReport rep;
  rep.confluence_degree = degree_bound;
  const auto cases = overlap_cases(p, degree_bound);
  for (const auto& oc : cases) {
    if (auto f = run_case(p, oc)) rep.add(f->severity, f->location, f->message);
  }
  if (rep.ok)
    rep.add(Severity::note, "confluence",
            "all overlaps agree through degree " + std::to_string(degree_bound));
  return rep;
}

ValidationReport check_confluence(const PresPtr& p, int degree_bound) {
#ifdef _OPENMP
  if (degree_bound < 3) throw Error("confluence degree bound must be at least 3");
  ValidationReport rep;
  rep.confluence_degree = degree_bound;
  const auto cases = overlap_cases(p, degree_bound);
  std::vector<std::optional<Finding>> slots(cases.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < cases.size(); ++i) slots[i] = run_case(p, cases[i]);
  for (const auto& f : slots) {
    if (f) rep.add(f->severity, f->location, f->message);
  }
  if (rep.ok)
    rep.add(Severity::note, "confluence",
            "all overlaps agree through degree " + std::to_string(degree_bound));
  return rep;
#else
  return check_confluence_serial(p, degree_bound);
#endif
}

}  // namespace spbw
